#include "lgequiv/mirror.hpp"

#include <algorithm>

namespace lgequiv {

namespace {

Rational rpow(const Rational& x, const Integer& e) {
    if (x == 0 && e < 0) throw SampleError("zero raised to a negative power");
    Integer num = x.get_num(), den = x.get_den();
    Integer a = abs(e);
    const unsigned long k = a.get_ui();
    mpz_pow_ui(num.get_mpz_t(), num.get_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), k);
    Rational r = e < 0 ? Rational(den, num) : Rational(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

ValidationReport validate_amenable(const ToricModel& m, const NefPartition& p, const AmenableCollection& a) {
    ValidationReport r;
    const std::size_t c = p.codim();
    if (a.vectors.size() != c) {
        r.add("expected " + std::to_string(c) + " vectors, got " + std::to_string(a.vectors.size()));
    }
    if (a.distinguished.size() != c) {
        r.add("expected " + std::to_string(c) + " distinguished indices, got " + std::to_string(a.distinguished.size()));
    }
    if (!r.ok()) return r;
    for (std::size_t i = 0; i < c; ++i) {
        const auto& u = a.vectors[i];
        const std::string tag = "u_" + std::to_string(i + 1);
        if (u.size() != m.dim()) {
            r.add(tag + " has length " + std::to_string(u.size()) + ", expected " + std::to_string(m.dim()));
            continue;
        }
        if (!p.parts[i].contains(a.distinguished[i])) {
            r.add("s_" + std::to_string(i + 1) + " = " + std::to_string(a.distinguished[i]) + " is not in S_" +
                  std::to_string(i + 1));
        }
        for (std::size_t j = 0; j < p.parts.size(); ++j) {
            for (int k : p.parts[j]) {
                const auto v = pairing(u, m.ray(k));
                const std::string where = "<" + tag + ",v_" + std::to_string(k) + "> = " + std::to_string(v);
                if (j == i && v != -1) r.add("condition (1): " + where + ", expected -1");
                if (j > i && v < 0) r.add("condition (2): " + where + ", expected >= 0");
                if (j < i && v != 0) r.add("condition (3): " + where + ", expected 0");
            }
        }
    }
    return r;
}

MirrorChain build_mirror_chain(const ToricModel& m, const NefPartition& p, const AmenableCollection& a) {
    if (auto r = validate_amenable(m, p, a); !r.ok()) throw InputError("amenable collection invalid: " + r.summary());
    const std::size_t c = p.codim();
    MirrorChain ch;
    ch.map = BirationalMap(m.dim());
    ch.g.resize(c);
    for (std::size_t i = 0; i < c; ++i) ch.g[i].push_back(partition_sum(m, p.parts[i]));
    for (std::size_t t = 0; t < c; ++t) {
        LaurentPoly f = ch.g[t][t].shifted(negate(m.ray(a.distinguished[t])));
        std::optional<MutationStep> step;
        try {
            step.emplace(negate(a.vectors[t]), f);
        } catch (const std::invalid_argument& e) {
            throw InputError("mirror chain: F_" + std::to_string(t + 1) + ": " + e.what());
        }
        for (std::size_t k = 0; k < c; ++k) {
            auto q = mutation_pullback(*step, RationalFn(ch.g[k][t])).as_laurent();
            if (!q) {
                throw InternalError("mirror chain: G_" + std::to_string(k + 1) + " is not Laurent after step " +
                                    std::to_string(t + 1));
            }
            ch.g[k].push_back(std::move(*q));
        }
        ch.factors.push_back(std::move(f));
        ch.map.append(std::move(*step));
    }
    return ch;
}

SubtorusBasis subtorus_coordinates(const ToricModel& m, const AmenableCollection& a) {
    const std::size_t n = m.dim(), c = a.vectors.size();
    if (c >= n) {
        throw InputError("subtorus has no mirror variables: codimension " + std::to_string(c) + " >= dimension " +
                         std::to_string(n));
    }
    SubtorusBasis b;
    b.codim = c;
    try {
        b.extended = extend_to_unimodular_basis(a.vectors, n);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("amenable vectors do not extend to a basis of M: ") + e.what());
    }
    const IntMatrix dual = inverse_unimodular(b.extended).transpose();
    std::vector<ExpVec> cols;
    for (std::size_t i = 0; i < c; ++i) cols.push_back(m.ray(a.distinguished[i]));
    for (std::size_t j = c; j < n; ++j) cols.push_back(dual.column_vec(j));
    b.basis = IntMatrix::from_columns(cols, n);
    b.det = determinant(b.basis);
    if (abs(b.det) != 1) throw InternalError("subtorus basis has determinant " + b.det.get_str());
    b.inverse = inverse_unimodular(b.basis);
    b.pairing = b.extended.transpose() * b.basis;
    return b;
}

bool pairing_is_triangular(const SubtorusBasis& b) {
    const std::size_t n = b.pairing.rows(), c = b.codim;
    std::vector<std::size_t> order;
    for (std::size_t i = c; i-- > 0;) order.push_back(i);
    for (std::size_t i = c; i < n; ++i) order.push_back(i);
    for (std::size_t r = 0; r < n; ++r) {
        if (abs(b.pairing(order[r], order[r])) != 1) return false;
        for (std::size_t s = r + 1; s < n; ++s) {
            if (b.pairing(order[r], order[s]) != 0) return false;
        }
    }
    return true;
}

LaurentPoly restrict_to_subtorus(const LaurentPoly& f, const SubtorusBasis& b) {
    const std::size_t n = b.basis.rows(), c = b.codim;
    LaurentPoly r(n - c);
    for (const auto& [e, coeff] : f.terms()) {
        const ExpVec y = b.inverse.apply(e);
        r.add_term(ExpVec(y.begin() + static_cast<std::ptrdiff_t>(c), y.end()), coeff);
    }
    return r;
}

RationalFn restrict_to_subtorus(const RationalFn& f, const SubtorusBasis& b) {
    LaurentPoly den = restrict_to_subtorus(f.den(), b);
    if (den.is_zero()) throw InternalError("denominator vanishes identically on the subtorus");
    return RationalFn(restrict_to_subtorus(f.num(), b), std::move(den));
}

std::vector<Rational> lift_point(const SubtorusBasis& b, std::span<const Rational> q) {
    const std::size_t n = b.basis.rows(), c = b.codim;
    if (q.size() != n - c) throw DimensionError("lift_point: expected " + std::to_string(n - c) + " coordinates");
    std::vector<Rational> p(n, Rational(1));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = c; k < n; ++k) p[j] *= rpow(q[k - c], b.inverse(k, j));
    }
    return p;
}

std::vector<Rational> subtorus_point(const SubtorusBasis& b, std::span<const Rational> p) {
    const std::size_t n = b.basis.rows(), c = b.codim;
    if (p.size() != n) throw DimensionError("subtorus_point: expected " + std::to_string(n) + " coordinates");
    std::vector<Rational> y;
    for (std::size_t k = c; k < n; ++k) {
        Rational v = 1;
        for (std::size_t j = 0; j < n; ++j) v *= rpow(p[j], b.basis(j, k));
        y.push_back(v);
    }
    return y;
}

MirrorResult extract_mirror(const ToricModel& m, const NefPartition& p, const AmenableCollection& a) {
    MirrorResult r;
    r.chain = build_mirror_chain(m, p, a);
    auto pulled = map_pullback(r.chain.map, superpotential(m)).as_laurent();
    if (!pulled) throw InternalError("chain pullback of W is not a Laurent polynomial");
    r.pulled = std::move(*pulled);
    r.coords = subtorus_coordinates(m, a);
    r.mirror = restrict_to_subtorus(r.pulled, r.coords);
    return r;
}

VerificationReport check_mirror(const ToricModel& m, const NefPartition& p, const MirrorResult& r,
                                std::size_t samples, std::uint64_t seed) {
    VerificationReport rep;
    const std::size_t c = r.coords.codim;
    for (std::size_t i = 0; i < c; ++i) {
        const ExpVec& vs = r.coords.basis.column_vec(i);
        check_identity(rep, "G_" + std::to_string(i + 1) + "^(c) = z^v_s" + std::to_string(i + 1), r.chain.g[i][c],
                       LaurentPoly::monomial(vs));
    }
    rep.add("|det B| = 1", abs(r.coords.det) == 1, "det = " + r.coords.det.get_str());
    rep.add("pairing matrix triangular with +-1 diagonal", pairing_is_triangular(r.coords), r.coords.pairing.str());

    const LaurentPoly w = superpotential(m);
    std::size_t good = 0;
    bool ok = true;
    std::string detail;
    for (const auto& q : seeded_torus_points(m.dim() - c, 4 * samples + 8, seed)) {
        if (good == samples) break;
        std::vector<Rational> x;
        try {
            x = point_map(r.chain.map, lift_point(r.coords, q));
        } catch (const SampleError&) {
            continue;
        }
        ++good;
        if (lp_eval(w, x) != lp_eval(r.mirror, q)) {
            ok = false;
            detail = "W(chain(lift(q))) = " + lp_eval(w, x).get_str() + " but mirror(q) = " + lp_eval(r.mirror, q).get_str();
        }
        for (std::size_t i = 0; i < c; ++i) {
            if (lp_eval(partition_sum(m, p.parts[i]), x) != 1) {
                ok = false;
                detail = "image point not on G_" + std::to_string(i + 1) + " = 1";
            }
        }
    }
    if (good < samples) {
        ok = false;
        detail = "only " + std::to_string(good) + " usable points";
    }
    rep.add("point oracle at " + std::to_string(samples) + " lifted points", ok, detail);
    return rep;
}

RationalFn substitute(const LaurentPoly& f, const std::vector<RationalFn>& r) {
    if (r.size() != f.nvars()) throw DimensionError("substitute: variable count mismatch");
    if (r.empty()) return RationalFn(LaurentPoly::constant(0, f.coeff({})));
    const std::size_t k = r.size(), n = r.front().nvars();
    // Common denominator from the per-variable exponent range.
    ExpVec lo(k, 0), hi(k, 0);
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t i = 0; i < k; ++i) {
            lo[i] = std::min(lo[i], e[i]);
            hi[i] = std::max(hi[i], e[i]);
        }
    }
    LaurentPoly num(n);
    for (const auto& [e, c] : f.terms()) {
        LaurentPoly t = LaurentPoly::constant(n, c);
        for (std::size_t i = 0; i < k; ++i) {
            t *= r[i].num().pow(static_cast<unsigned>(e[i] - lo[i]));
            t *= r[i].den().pow(static_cast<unsigned>(hi[i] - e[i]));
        }
        num += t;
    }
    LaurentPoly den = LaurentPoly::constant(n, 1);
    for (std::size_t i = 0; i < k; ++i) {
        den *= r[i].num().pow(static_cast<unsigned>(-lo[i]));
        den *= r[i].den().pow(static_cast<unsigned>(hi[i]));
    }
    return RationalFn(std::move(num), std::move(den));
}

MirrorEquivalence mirror_equivalence(const PartitionPair& pair, const AmenableCollection& a,
                                     const AmenableCollection& a_prime, std::size_t samples, std::uint64_t seed) {
    MirrorEquivalence me;
    const auto& m = pair.model();
    const std::size_t n = m.dim(), c = pair.codim();
    me.first = extract_mirror(m, pair.first(), a);
    me.second = extract_mirror(m, pair.second(), a_prime);
    me.report.append(check_mirror(m, pair.first(), me.first, samples, seed), "first mirror: ");
    me.report.append(check_mirror(m, pair.second(), me.second, samples, seed), "second mirror: ");
    EquivalenceOptions opts;
    opts.seed = seed;
    me.phi = assemble_phi(pair, opts);
    me.report.append(me.phi.report, "phi: ");

    me.psi = BirationalMap(n);
    me.psi.append(formal_inverse(me.first.chain.map));
    me.psi.append(me.phi.phi);
    me.psi.append(me.second.chain.map);

    check_identity(me.report, "psi*(chain*W) = chain'*W", map_pullback(me.psi, me.first.pulled), me.second.pulled);
    for (std::size_t i = 0; i < c; ++i) {
        check_identity(me.report, "psi*(z^v_s" + std::to_string(i + 1) + ") = z^v_s'" + std::to_string(i + 1),
                       map_pullback(me.psi, LaurentPoly::monomial(me.first.coords.basis.column_vec(i))),
                       LaurentPoly::monomial(me.second.coords.basis.column_vec(i)));
    }

    // g = psi*f on the mirror torus.
    std::vector<RationalFn> images;
    for (std::size_t k = c; k < n; ++k) {
        const auto pulled = map_pullback(me.psi, LaurentPoly::monomial(me.first.coords.basis.column_vec(k)));
        images.push_back(restrict_to_subtorus(pulled, me.second.coords));
    }
    check_identity(me.report, "g = psi*f (restricted)", substitute(me.first.mirror, images), me.second.mirror);

    std::size_t good = 0;
    bool ok = true;
    std::string detail;
    for (const auto& q : seeded_torus_points(n - c, 4 * samples + 8, seed + 2)) {
        if (good == samples) break;
        std::vector<Rational> x;
        try {
            x = point_map(me.psi, lift_point(me.second.coords, q));
        } catch (const SampleError&) {
            continue;
        }
        ++good;
        for (std::size_t i = 0; i < c; ++i) {
            if (lp_eval(LaurentPoly::monomial(me.first.coords.basis.column_vec(i)), x) != 1) {
                ok = false;
                detail = "psi(q) leaves the first subtorus";
            }
        }
        const auto y = subtorus_point(me.first.coords, x);
        if (lp_eval(me.first.mirror, y) != lp_eval(me.second.mirror, q)) {
            ok = false;
            detail = "f(psi(q)) = " + lp_eval(me.first.mirror, y).get_str() + " but g(q) = " +
                     lp_eval(me.second.mirror, q).get_str();
        }
    }
    if (good < samples) {
        ok = false;
        detail = "only " + std::to_string(good) + " usable points";
    }
    me.report.add("point oracle: f(psi(q)) = g(q) at " + std::to_string(samples) + " points", ok, detail);

    const auto pts = seeded_torus_points(n, 3 * 20 + 8, seed + 3);
    VolumeReport v = volume_check(me.psi, pts);
    const bool enough = v.determinants.size() >= 20;
    if (enough) v.determinants.resize(20);
    me.report.add("psi volume: |d| = 1 at 20 points, equal to structural sign", enough && v.ok(),
                  enough ? "" : "only " + std::to_string(v.determinants.size()) + " usable samples");
    return me;
}

}  // namespace lgequiv
