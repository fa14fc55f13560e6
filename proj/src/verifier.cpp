// Certificate replay. Deliberately self-contained: pullbacks, inverses,
// point maps, log-Jacobians and sampling are re-implemented here on top of
// the exact algebra core instead of reusing the constructor code.

#include <random>

#include "lgequiv/certificate.hpp"
#include "lgequiv/exact_algebra.hpp"

namespace lgequiv {

using nlohmann::json;

namespace {

using QMatrix = std::vector<std::vector<Rational>>;

struct VStep {
    bool mutation = true;
    ExpVec w;
    LaurentPoly f;
    bool inv = false;
    QMatrix a;  // automorphism, integral entries
};

struct Frac {
    LaurentPoly num;
    LaurentPoly den;
};

[[noreturn]] void malformed(const std::string& what) { throw InputError("malformed certificate: " + what); }

const json& field(const json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key)) malformed("missing field '" + key + "'");
    return j.at(key);
}

ExpVec int_vec(const json& j, std::size_t n, const std::string& what) {
    if (!j.is_array() || j.size() != n) malformed(what + " must be an integer array of length " + std::to_string(n));
    ExpVec v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) malformed(what + " has a non-integer entry");
        v.push_back(x.get<std::int64_t>());
    }
    return v;
}

LaurentPoly poly(const json& j, std::size_t n, const std::string& what) {
    if (!j.is_string()) malformed(what + " must be a string");
    try {
        return parse_canonical(j.get<std::string>(), n);
    } catch (const std::exception& e) {
        malformed(what + ": " + e.what());
    }
}

QMatrix int_matrix(const json& j, std::size_t n, const std::string& what) {
    if (!j.is_array() || j.size() != n) malformed(what + " must have " + std::to_string(n) + " rows");
    QMatrix a;
    for (const auto& row : j) {
        QMatrix::value_type r;
        for (auto x : int_vec(row, n, what)) r.emplace_back(static_cast<long>(x));
        a.push_back(std::move(r));
    }
    return a;
}

Rational det(QMatrix a) {
    const std::size_t n = a.size();
    Rational d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            d = -d;
        }
        d *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const Rational t = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= t * a[k][j];
        }
    }
    return d;
}

/// Inverse over Q; nullopt if singular or not integral.
std::optional<QMatrix> integral_inverse(const QMatrix& m) {
    const std::size_t n = m.size();
    QMatrix a = m, b(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) b[i][i] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[k]);
        std::swap(b[p], b[k]);
        const Rational piv = a[k][k];
        for (std::size_t j = 0; j < n; ++j) {
            a[k][j] /= piv;
            b[k][j] /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            const Rational t = a[i][k];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= t * a[k][j];
                b[i][j] -= t * b[k][j];
            }
        }
    }
    for (const auto& row : b)
        for (const auto& x : row)
            if (x.get_den() != 1) return std::nullopt;
    return b;
}

ExpVec mat_apply(const QMatrix& a, const ExpVec& v) {
    ExpVec r(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < v.size(); ++j) s += a[i][j] * Rational(static_cast<long>(v[j]));
        r[i] = s.get_num().get_si();
    }
    return r;
}

std::vector<VStep> parse_steps(const json& j, std::size_t n, const std::string& what) {
    if (!j.is_array()) malformed(what + " must be an array");
    std::vector<VStep> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto& s = j[k];
        const std::string tag = what + "[" + std::to_string(k) + "]";
        const auto& type = field(s, "type");
        VStep v;
        if (type == "mutation") {
            v.w = int_vec(field(s, "weight"), n, tag + ".weight");
            v.f = poly(field(s, "factor"), n, tag + ".factor");
            if (!field(s, "inverse").is_boolean()) malformed(tag + ".inverse must be a boolean");
            v.inv = s.at("inverse").get<bool>();
        } else if (type == "automorphism") {
            v.mutation = false;
            v.a = int_matrix(field(s, "matrix"), n, tag + ".matrix");
        } else {
            malformed(tag + " has unknown type");
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::int64_t dot(const ExpVec& a, const ExpVec& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::int64_t power_of(const VStep& s, const ExpVec& e) { return s.inv ? dot(s.w, e) : -dot(s.w, e); }

Frac pull_poly(const VStep& s, const LaurentPoly& f) {
    const std::size_t n = f.nvars();
    if (!s.mutation) {
        LaurentPoly r(n);
        for (const auto& [e, c] : f.terms()) r.add_term(mat_apply(s.a, e), c);
        return {r, LaurentPoly::constant(n, 1)};
    }
    std::int64_t lo = 0;
    for (const auto& [e, c] : f.terms()) lo = std::min(lo, power_of(s, e));
    LaurentPoly r(n);
    for (const auto& [e, c] : f.terms()) {
        r += s.f.pow(static_cast<unsigned>(power_of(s, e) - lo)).shifted(e).scaled(c);
    }
    return {r, s.f.pow(static_cast<unsigned>(-lo))};
}

void simplify(Frac& x, const VStep& s) {
    if (x.den.is_monomial() || x.num.is_zero()) {
        if (auto q = lp_exact_div(x.num, x.den)) x = {*q, LaurentPoly::constant(x.num.nvars(), 1)};
        return;
    }
    if (auto q = lp_exact_div(x.num, x.den)) {
        x = {*q, LaurentPoly::constant(x.num.nvars(), 1)};
        return;
    }
    if (!s.mutation || s.f.is_monomial()) return;
    while (true) {
        auto a = lp_exact_div(x.num, s.f);
        if (!a) break;
        auto b = lp_exact_div(x.den, s.f);
        if (!b) break;
        x = {*a, *b};
    }
}

Frac pull(const VStep& s, const Frac& x) {
    Frac n = pull_poly(s, x.num), d = pull_poly(s, x.den);
    Frac r{n.num * d.den, n.den * d.num};
    simplify(r, s);
    return r;
}

Frac pull_all(const std::vector<VStep>& steps, const LaurentPoly& f) {
    Frac x{f, LaurentPoly::constant(f.nvars(), 1)};
    for (const auto& s : steps) x = pull(s, x);
    return x;
}

bool frac_equals(const Frac& x, const LaurentPoly& rhs) { return x.num == rhs * x.den; }

std::optional<LaurentPoly> as_poly(const Frac& x) { return lp_exact_div(x.num, x.den); }

std::vector<VStep> inverted(const std::vector<VStep>& steps) {
    std::vector<VStep> out;
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        VStep v = *it;
        if (v.mutation) {
            v.inv = !v.inv;
        } else {
            auto inv = integral_inverse(v.a);
            if (!inv) throw VerificationError("automorphism step is not unimodular");
            v.a = *inv;
        }
        out.push_back(std::move(v));
    }
    return out;
}

Rational rpow(const Rational& x, std::int64_t e) {
    Rational r = 1;
    const Rational b = e < 0 ? Rational(1) / x : x;
    for (std::int64_t k = 0; k < (e < 0 ? -e : e); ++k) r *= b;
    return r;
}

Rational eval(const LaurentPoly& f, const std::vector<Rational>& p) {
    Rational s = 0;
    for (const auto& [e, c] : f.terms()) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) t *= rpow(p[i], e[i]);
        s += t;
    }
    return s;
}

/// Image of p under the point map; nullopt on a zero or pole.
std::optional<std::vector<Rational>> point_image(const std::vector<VStep>& steps, std::vector<Rational> p) {
    const std::size_t n = p.size();
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        std::vector<Rational> q(n);
        if (it->mutation) {
            const Rational fv = eval(it->f, p);
            if (fv == 0) return std::nullopt;
            for (std::size_t j = 0; j < n; ++j) q[j] = p[j] * rpow(fv, power_of(*it, unit_vector(n, j)));
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                q[j] = 1;
                for (std::size_t i = 0; i < n; ++i) q[j] *= rpow(p[i], it->a[i][j].get_num().get_si());
            }
        }
        for (const auto& x : q)
            if (x == 0) return std::nullopt;
        p = std::move(q);
    }
    return p;
}

LaurentPoly theta(const LaurentPoly& f, std::size_t i) {
    LaurentPoly r(f.nvars());
    for (const auto& [e, c] : f.terms()) r.add_term(e, c * Rational(static_cast<long>(e[i])));
    return r;
}

std::optional<Rational> log_jacobian(const std::vector<Frac>& coords, const std::vector<Rational>& p) {
    const std::size_t n = coords.size();
    QMatrix j(n, std::vector<Rational>(n));
    for (std::size_t c = 0; c < n; ++c) {
        const Rational nv = eval(coords[c].num, p), dv = eval(coords[c].den, p);
        if (nv == 0 || dv == 0) return std::nullopt;
        for (std::size_t i = 0; i < n; ++i) {
            j[i][c] = eval(theta(coords[c].num, i), p) / nv - eval(theta(coords[c].den, i), p) / dv;
        }
    }
    return det(j);
}

/// Same stream as the constructor's sampler: numerators in {-9..9}\{0},
/// denominators in {1..7}, two raw mt19937_64 draws per coordinate.
std::vector<std::vector<Rational>> regenerate(std::size_t n, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<std::vector<Rational>> pts;
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<Rational> p;
        for (std::size_t i = 0; i < n; ++i) {
            const auto a = static_cast<long>(gen() % 18);
            const auto b = static_cast<long>(gen() % 7) + 1;
            Rational x(a < 9 ? a - 9 : a - 8, b);
            x.canonicalize();
            p.push_back(x);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<std::vector<Rational>> sample_points(const json& block, std::size_t n, VerificationReport& r,
                                                 const std::string& what) {
    const auto& seed = field(block, "seed");
    const auto& count = field(block, "count");
    const auto& pts = field(block, "points");
    if (!seed.is_number_unsigned() || !count.is_number_unsigned() || !pts.is_array()) {
        malformed(what + " sample block has bad field types");
    }
    auto regen = regenerate(n, count.get<std::size_t>(), seed.get<std::uint64_t>());
    bool same = pts.size() == regen.size();
    for (std::size_t k = 0; same && k < regen.size(); ++k) {
        if (!pts[k].is_array() || pts[k].size() != n) {
            same = false;
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!pts[k][i].is_string() || pts[k][i].get<std::string>() != rational_to_string(regen[k][i])) same = false;
        }
    }
    r.add(what + " sample points regenerate from the recorded seed", same);
    return regen;
}

void check_steps(const std::vector<VStep>& steps, VerificationReport& r, const std::string& what) {
    bool ok = true;
    std::string detail;
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const auto& s = steps[k];
        if (s.mutation) {
            if (s.f.is_zero()) ok = false, detail = "step " + std::to_string(k) + ": zero factor";
            if (s.f == LaurentPoly::constant(s.w.size(), 1)) {
                ok = false, detail = "step " + std::to_string(k) + ": identity mutation is not canonical";
            }
            for (const auto& [e, c] : s.f.terms()) {
                if (dot(s.w, e) != 0) ok = false, detail = "step " + std::to_string(k) + ": factor not in w-perp";
            }
        } else {
            const Rational d = det(s.a);
            if (d != 1 && d != -1) ok = false, detail = "step " + std::to_string(k) + ": determinant " + d.get_str();
        }
    }
    r.add(what + " steps well formed", ok, detail);
}

int structural(const std::vector<VStep>& steps) {
    int d = 1;
    for (const auto& s : steps)
        if (!s.mutation) d *= det(s.a) > 0 ? 1 : -1;
    return d;
}

void check_volume(const std::vector<VStep>& steps, const json& block, std::size_t n, VerificationReport& r) {
    const auto pts = sample_points(block, n, r, "volume");
    const auto& claimed = field(block, "determinant");
    if (!claimed.is_number_integer()) malformed("volume determinant must be an integer");
    const Rational d(claimed.get<long>());
    std::vector<Frac> coords;
    for (std::size_t j = 0; j < n; ++j) coords.push_back(pull_all(steps, LaurentPoly::monomial(unit_vector(n, j))));
    std::size_t used = 0;
    bool ok = (d == 1 || d == -1) && d == structural(steps);
    std::string detail = ok ? "" : "claimed " + d.get_str() + ", structural " + std::to_string(structural(steps));
    for (const auto& p : pts) {
        if (used == kVolumeSamples) break;
        auto v = log_jacobian(coords, p);
        if (!v) continue;
        ++used;
        if (*v != d) {
            ok = false;
            detail = "sample " + std::to_string(used) + " gives " + v->get_str() + ", claimed " + d.get_str();
        }
    }
    if (used < kVolumeSamples) ok = false, detail = "only " + std::to_string(used) + " usable samples";
    r.add("volume determinant " + d.get_str() + " at " + std::to_string(kVolumeSamples) + " samples", ok, detail);
}

struct Derived {
    std::string name;
    LaurentPoly lhs;
    LaurentPoly rhs;
    bool holds = false;
    std::string detail;
};

void compare_identity_lists(const json& claimed, const std::vector<Derived>& derived, VerificationReport& r) {
    if (!claimed.is_array()) malformed("identities must be an array");
    bool same = claimed.size() == derived.size();
    std::string detail;
    for (std::size_t k = 0; same && k < derived.size(); ++k) {
        const auto& c = claimed[k];
        const bool match = c.is_object() && c.value("name", "") == derived[k].name &&
                           c.value("lhs", "") == to_canonical(derived[k].lhs) &&
                           c.value("rhs", "") == to_canonical(derived[k].rhs);
        if (!match) same = false, detail = "entry " + std::to_string(k) + " (" + derived[k].name + ") differs";
    }
    if (claimed.size() != derived.size()) detail = "expected " + std::to_string(derived.size()) + " identities";
    r.add("claimed identities match those derived from the model", same, detail);
    for (const auto& d : derived) r.add(d.name, d.holds, d.detail);
}

Derived pulled_identity(const std::string& name, const std::vector<VStep>& steps, const LaurentPoly& lhs,
                        const LaurentPoly& rhs) {
    Derived d{name, lhs, rhs, false, {}};
    const Frac x = pull_all(steps, lhs);
    d.holds = frac_equals(x, rhs);
    if (!d.holds) {
        auto q = as_poly(x);
        d.detail = "pullback = " + (q ? to_canonical(*q) : "(" + to_canonical(x.num) + ")/(" + to_canonical(x.den) + ")") +
                   " ; expected " + to_canonical(rhs);
        if (d.detail.size() > 600) d.detail = d.detail.substr(0, 600) + "...";
    }
    return d;
}

LaurentPoly ray_sum(const ToricModel& m, const IndexSet& s) {
    LaurentPoly r(m.dim());
    for (int j : s) r.add_term(m.rays().at(static_cast<std::size_t>(j - 1)), 1);
    return r;
}

LaurentPoly all_rays(const ToricModel& m) {
    LaurentPoly r(m.dim());
    for (const auto& v : m.rays()) r.add_term(v, 1);
    return r;
}

const NefPartition* lookup(const ModelFile& f, const json& names, const std::string& key) {
    const auto& v = field(names, key);
    if (!v.is_string()) malformed("partition name must be a string");
    auto it = f.partitions.find(v.get<std::string>());
    return it == f.partitions.end() ? nullptr : &it->second;
}

void phi_identities(const ModelFile& f, const NefPartition& p, const NefPartition& q, const std::vector<VStep>& phi,
                    std::vector<Derived>& out) {
    const auto w = all_rays(f.model);
    out.push_back(pulled_identity("phi*(W) = W", phi, w, w));
    for (std::size_t i = 0; i < p.parts.size(); ++i) {
        out.push_back(pulled_identity("phi*(G_" + std::to_string(i + 1) + ") = G'_" + std::to_string(i + 1), phi,
                                      ray_sum(f.model, p.parts[i]), ray_sum(f.model, q.parts[i])));
    }
}

// Subtorus embedding y_k = z^(b_k); restriction sets y_1..y_c to 1.
struct Embedding {
    QMatrix basis;
    QMatrix inverse;
    std::size_t codim = 0;

    ExpVec column(std::size_t k) const {
        ExpVec v;
        for (const auto& row : basis) v.push_back(row[k].get_num().get_si());
        return v;
    }
    LaurentPoly restrict(const LaurentPoly& f) const {
        const std::size_t n = basis.size();
        LaurentPoly r(n - codim);
        for (const auto& [e, c] : f.terms()) {
            const ExpVec y = mat_apply(inverse, e);
            r.add_term(ExpVec(y.begin() + static_cast<std::ptrdiff_t>(codim), y.end()), c);
        }
        return r;
    }
    std::vector<Rational> lift(const std::vector<Rational>& q) const {
        const std::size_t n = basis.size();
        std::vector<Rational> p(n, Rational(1));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = codim; k < n; ++k) p[j] *= rpow(q[k - codim], inverse[k][j].get_num().get_si());
        return p;
    }
    std::vector<Rational> coords(const std::vector<Rational>& p) const {
        std::vector<Rational> y;
        for (std::size_t k = codim; k < basis.size(); ++k) y.push_back(eval(LaurentPoly::monomial(column(k)), p));
        return y;
    }
};

Frac substitute_frac(const LaurentPoly& f, const std::vector<Frac>& r, std::size_t n) {
    const std::size_t k = r.size();
    ExpVec lo(k, 0), hi(k, 0);
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < k; ++i) lo[i] = std::min(lo[i], e[i]), hi[i] = std::max(hi[i], e[i]);
    LaurentPoly num(n), den = LaurentPoly::constant(n, 1);
    for (const auto& [e, c] : f.terms()) {
        LaurentPoly t = LaurentPoly::constant(n, c);
        for (std::size_t i = 0; i < k; ++i) {
            t *= r[i].num.pow(static_cast<unsigned>(e[i] - lo[i]));
            t *= r[i].den.pow(static_cast<unsigned>(hi[i] - e[i]));
        }
        num += t;
    }
    for (std::size_t i = 0; i < k; ++i) {
        den *= r[i].num.pow(static_cast<unsigned>(-lo[i]));
        den *= r[i].den.pow(static_cast<unsigned>(hi[i]));
    }
    return {num, den};
}

VerificationReport verify_equivalence(const ModelFile& f, const json& cert) {
    VerificationReport r;
    const std::size_t n = f.model.dim();
    const NefPartition* p = lookup(f, field(cert, "partitions"), "first");
    const NefPartition* q = lookup(f, field(cert, "partitions"), "second");
    r.add("named partitions exist in the model", p && q);
    if (!p || !q) return r;
    const auto steps = parse_steps(field(cert, "steps"), n, "steps");
    check_steps(steps, r, "phi");
    std::vector<Derived> derived;
    if (p->parts.size() != q->parts.size()) {
        r.add("partitions have the same number of parts", false);
        return r;
    }
    phi_identities(f, *p, *q, steps, derived);
    compare_identity_lists(field(cert, "identities"), derived, r);
    check_volume(steps, field(cert, "volume"), n, r);
    return r;
}

VerificationReport verify_mirror(const ModelFile& f, const json& cert) {
    VerificationReport r;
    const std::size_t n = f.model.dim();
    const NefPartition* p = lookup(f, field(cert, "partitions"), "first");
    const NefPartition* q = lookup(f, field(cert, "partitions"), "second");
    const auto& an = field(cert, "amenable");
    const AmenableCollection* a = nullptr;
    const AmenableCollection* b = nullptr;
    if (field(an, "first").is_string() && f.amenable.contains(an["first"].get<std::string>()))
        a = &f.amenable.at(an["first"].get<std::string>());
    if (field(an, "second").is_string() && f.amenable.contains(an["second"].get<std::string>()))
        b = &f.amenable.at(an["second"].get<std::string>());
    r.add("named partitions and amenable data exist in the model", p && q && a && b);
    if (!p || !q || !a || !b) return r;
    const auto& cj = field(cert, "codim");
    if (!cj.is_number_unsigned()) malformed("codim must be a non-negative integer");
    const std::size_t c = cj.get<std::size_t>();
    const bool shapes = p->parts.size() == c + 1 && q->parts.size() == c + 1 && a->vectors.size() == c &&
                        b->vectors.size() == c && c < n;
    r.add("codimension consistent with the partitions", shapes);
    if (!shapes) return r;

    const auto chain1 = parse_steps(field(field(cert, "chains"), "first"), n, "chains.first");
    const auto chain2 = parse_steps(field(field(cert, "chains"), "second"), n, "chains.second");
    const auto phi = parse_steps(field(cert, "steps"), n, "steps");
    check_steps(chain1, r, "first chain");
    check_steps(chain2, r, "second chain");
    check_steps(phi, r, "phi");

    Embedding emb[2];
    LaurentPoly mirrors[2] = {LaurentPoly(n - c), LaurentPoly(n - c)};
    const AmenableCollection* am[2] = {a, b};
    const char* keys[2] = {"first", "second"};
    for (int k = 0; k < 2; ++k) {
        const auto& e = field(field(cert, "embeddings"), keys[k]);
        emb[k].basis = int_matrix(field(e, "basis"), n, std::string("embeddings.") + keys[k] + ".basis");
        emb[k].codim = c;
        mirrors[k] = poly(field(e, "mirror"), n - c, std::string("embeddings.") + keys[k] + ".mirror");
        const Rational d = det(emb[k].basis);
        auto inv = integral_inverse(emb[k].basis);
        bool ok = (d == 1 || d == -1) && inv.has_value();
        std::string detail = ok ? "" : "determinant " + d.get_str();
        for (std::size_t i = 0; ok && i < c; ++i) {
            if (emb[k].column(i) != f.model.rays().at(static_cast<std::size_t>(am[k]->distinguished[i] - 1))) {
                ok = false, detail = "column " + std::to_string(i + 1) + " is not the distinguished ray";
            }
            for (std::size_t j = c; j < n; ++j) {
                if (dot(am[k]->vectors[i], emb[k].column(j)) != 0) {
                    ok = false, detail = "column " + std::to_string(j + 1) + " pairs nontrivially with u_" +
                                         std::to_string(i + 1);
                }
            }
        }
        r.add(std::string(keys[k]) + " embedding: unimodular basis through the distinguished rays", ok, detail);
        if (!ok) return r;
        emb[k].inverse = *inv;
    }

    const auto w = all_rays(f.model);
    std::vector<Derived> derived;
    LaurentPoly pulled[2] = {LaurentPoly(n), LaurentPoly(n)};
    const std::vector<VStep>* chains[2] = {&chain1, &chain2};
    const NefPartition* parts[2] = {p, q};
    const char* tags[2] = {"chain", "chain'"};
    for (int k = 0; k < 2; ++k) {
        const Frac x = pull_all(*chains[k], w);
        auto lp = as_poly(x);
        r.add(std::string(tags[k]) + "*(W) is a Laurent polynomial", lp.has_value());
        if (!lp) return r;
        pulled[k] = *lp;
        derived.push_back(pulled_identity(std::string(tags[k]) + "*(W) = W~" + (k ? "'" : ""), *chains[k], w, pulled[k]));
        for (std::size_t i = 0; i < c; ++i) {
            derived.push_back(pulled_identity(std::string(tags[k]) + "*(G_" + std::to_string(i + 1) + ") = z^v_s" +
                                                  std::to_string(i + 1),
                                              *chains[k], ray_sum(f.model, parts[k]->parts[i]),
                                              LaurentPoly::monomial(emb[k].column(i))));
        }
        Derived d{std::string("restrict(W~") + (k ? "'" : "") + ") = " + (k ? "g" : "f"), pulled[k], emb[k].restrict(pulled[k]), false, {}};
        d.holds = d.rhs == mirrors[k];
        if (!d.holds) d.detail = "restriction gives " + to_canonical(d.rhs);
        derived.push_back(std::move(d));
    }
    phi_identities(f, *p, *q, phi, derived);

    std::vector<VStep> psi = inverted(chain1);
    psi.insert(psi.end(), phi.begin(), phi.end());
    psi.insert(psi.end(), chain2.begin(), chain2.end());
    derived.push_back(pulled_identity("psi*(W~) = W~'", psi, pulled[0], pulled[1]));
    for (std::size_t i = 0; i < c; ++i) {
        derived.push_back(pulled_identity("psi*(z^v_s" + std::to_string(i + 1) + ") = z^v_s'" + std::to_string(i + 1),
                                          psi, LaurentPoly::monomial(emb[0].column(i)),
                                          LaurentPoly::monomial(emb[1].column(i))));
    }
    {
        std::vector<Frac> images;
        bool defined = true;
        for (std::size_t k = c; k < n; ++k) {
            const Frac x = pull_all(psi, LaurentPoly::monomial(emb[0].column(k)));
            Frac y{emb[1].restrict(x.num), emb[1].restrict(x.den)};
            if (y.den.is_zero()) defined = false;
            images.push_back(std::move(y));
        }
        Derived d{"g = psi*f", mirrors[0], mirrors[1], false, {}};
        if (defined) {
            const Frac s = substitute_frac(mirrors[0], images, n - c);
            d.holds = frac_equals(s, mirrors[1]);
            if (!d.holds) d.detail = "psi*f differs from g";
        } else {
            d.detail = "psi does not restrict to the mirror torus";
        }
        derived.push_back(std::move(d));
    }
    compare_identity_lists(field(cert, "identities"), derived, r);
    check_volume(psi, field(cert, "volume"), n, r);

    const auto pts = sample_points(field(cert, "oracle"), n - c, r, "oracle");
    std::size_t used = 0;
    bool ok = true;
    std::string detail;
    for (const auto& qpt : pts) {
        if (used == kOraclePoints) break;
        auto x = point_image(psi, emb[1].lift(qpt));
        if (!x) continue;
        ++used;
        for (std::size_t i = 0; i < c; ++i) {
            if (eval(LaurentPoly::monomial(emb[0].column(i)), *x) != 1) ok = false, detail = "image leaves the first subtorus";
        }
        if (eval(mirrors[0], emb[0].coords(*x)) != eval(mirrors[1], qpt)) ok = false, detail = "f(psi(q)) != g(q)";
    }
    if (used < kOraclePoints) ok = false, detail = "only " + std::to_string(used) + " usable points";
    r.add("point oracle f(psi(q)) = g(q) at " + std::to_string(kOraclePoints) + " points", ok, detail);
    return r;
}

}  // namespace

VerificationReport verify_certificate(const ModelFile& f, const json& cert) {
    if (field(cert, "format") != "lgequiv-certificate" || field(cert, "version") != 1) {
        malformed("unknown format or version");
    }
    const auto& hash = field(cert, "model_hash");
    if (!hash.is_string() || hash.get<std::string>() != model_hash(f)) {
        throw InputError("model hash mismatch: certificate was issued for a different model");
    }
    if (field(cert, "dim") != f.model.dim()) malformed("dimension differs from the model");
    const auto& kind = field(cert, "kind");
    if (kind == "equivalence") return verify_equivalence(f, cert);
    if (kind == "mirror-equivalence") return verify_mirror(f, cert);
    malformed("unknown certificate kind");
}

}  // namespace lgequiv
