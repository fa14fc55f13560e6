#include "lgequiv/birational.hpp"

#include <random>

namespace lgequiv {

MutationStep::MutationStep(ExpVec w, LaurentPoly f, bool inv)
    : weight(std::move(w)), factor(std::move(f)), inverse(inv) {
    if (factor.is_zero()) throw std::invalid_argument("mutation factor must be nonzero");
    if (factor.nvars() != weight.size()) throw DimensionError("mutation factor/weight dimension mismatch");
    for (const auto& [e, c] : factor.terms()) {
        if (pairing(weight, e) != 0) {
            throw std::invalid_argument("mutation factor exponent " + to_string(e) + " is not orthogonal to weight " +
                                        to_string(weight));
        }
    }
}

LatticeAutoStep::LatticeAutoStep(IntMatrix a) : matrix(std::move(a)) {
    if (!matrix.is_square()) throw DimensionError("lattice automorphism must be square");
    const Integer d = determinant(matrix);
    if (d != 1 && d != -1) throw std::invalid_argument("lattice automorphism has determinant " + d.get_str());
}

void BirationalMap::append(Step s) { steps.push_back(std::move(s)); }

void BirationalMap::append(const BirationalMap& other) {
    if (other.dim != dim) throw DimensionError("BirationalMap::append: dimension mismatch");
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
}

namespace {

// Powers F^0, F^1, ... computed on demand.
class PowerCache {
public:
    explicit PowerCache(const LaurentPoly& f) : powers_{LaurentPoly::constant(f.nvars(), 1), f} {}
    const LaurentPoly& get(std::size_t k) {
        while (powers_.size() <= k) powers_.push_back(powers_.back() * powers_[1]);
        return powers_[k];
    }

private:
    std::vector<LaurentPoly> powers_;
};

struct Scaled {
    LaurentPoly poly;   // pullback equals poly * F^power
    std::int64_t power;
};

Scaled pullback_poly(const MutationStep& s, const LaurentPoly& f, PowerCache& cache) {
    if (f.nvars() != s.weight.size()) throw DimensionError("mutation pullback: dimension mismatch");
    if (f.is_zero()) return {f, 0};
    std::int64_t lo = 0;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        const auto k = s.factor_power(e);
        lo = first ? k : std::min(lo, k);
        first = false;
    }
    LaurentPoly out(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        const auto k = static_cast<std::size_t>(s.factor_power(e) - lo);
        out += cache.get(k).shifted(e).scaled(c);
    }
    return {std::move(out), lo};
}

// Cancels factors of F shared by num and the F^k part of den.
void cancel_factor_powers(LaurentPoly& num, std::int64_t& den_power, const LaurentPoly& factor) {
    while (den_power > 0) {
        auto q = lp_exact_div(num, factor);
        if (!q) break;
        num = std::move(*q);
        --den_power;
    }
}

}  // namespace

RationalFn mutation_pullback(const MutationStep& s, const RationalFn& f) {
    PowerCache cache(s.factor);
    Scaled n = pullback_poly(s, f.num(), cache);
    Scaled d = pullback_poly(s, f.den(), cache);
    std::int64_t k = n.power - d.power;
    LaurentPoly num = std::move(n.poly);
    LaurentPoly den = std::move(d.poly);
    if (k >= 0) {
        num = num * cache.get(static_cast<std::size_t>(k));
    } else {
        std::int64_t m = -k;
        if (!(den == LaurentPoly::constant(den.nvars(), 1))) {
            if (auto q = lp_exact_div(num, den)) {
                num = std::move(*q);
                den = LaurentPoly::constant(num.nvars(), 1);
            }
        }
        cancel_factor_powers(num, m, s.factor);
        den = den * cache.get(static_cast<std::size_t>(m));
    }
    RationalFn r(std::move(num), std::move(den));
    r.normalize();
    return r;
}

LatticeAutoStep reflection_from(const ExpVec& w, const ExpVec& u_plus, const ExpVec& u_minus) {
    if (pairing(w, u_plus) != 1 || pairing(w, u_minus) != -1) {
        throw std::invalid_argument("reflection_from: need <w,u+> = 1 and <w,u-> = -1, got " +
                                    std::to_string(pairing(w, u_plus)) + " and " +
                                    std::to_string(pairing(w, u_minus)));
    }
    // T(v) = v + <w,v> (u- - u+)
    const std::size_t n = w.size();
    const ExpVec d = sub(u_minus, u_plus);
    IntMatrix a = IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) += static_cast<long>(d[i] * w[j]);
    return LatticeAutoStep(std::move(a));
}

namespace {
LaurentPoly transport(const IntMatrix& a, const LaurentPoly& f) {
    LaurentPoly r(f.nvars());
    for (const auto& [e, c] : f.terms()) r.add_term(a.apply(e), c);
    return r;
}
}  // namespace

RationalFn auto_pullback(const LatticeAutoStep& s, const RationalFn& f) {
    if (s.matrix.rows() != f.nvars()) throw DimensionError("automorphism size does not match exponent length");
    return RationalFn(transport(s.matrix, f.num()), transport(s.matrix, f.den()));
}

RationalFn step_pullback(const Step& s, const RationalFn& f) {
    return std::visit(
        [&](const auto& step) -> RationalFn {
            if constexpr (std::is_same_v<std::decay_t<decltype(step)>, MutationStep>) {
                return mutation_pullback(step, f);
            } else {
                return auto_pullback(step, f);
            }
        },
        s);
}

RationalFn map_pullback(const BirationalMap& m, const RationalFn& f) {
    RationalFn g = f;
    for (const auto& s : m.steps) g = step_pullback(s, g);
    return g;
}

BirationalMap formal_inverse(const BirationalMap& m) {
    BirationalMap inv(m.dim);
    for (auto it = m.steps.rbegin(); it != m.steps.rend(); ++it) {
        if (const auto* mu = std::get_if<MutationStep>(&*it)) {
            inv.append(MutationStep(mu->weight, mu->factor, !mu->inverse));
        } else {
            inv.append(LatticeAutoStep(inverse_unimodular(std::get<LatticeAutoStep>(*it).matrix)));
        }
    }
    return inv;
}

std::vector<RationalFn> coordinate_functions(const BirationalMap& m) {
    std::vector<RationalFn> coords;
    coords.reserve(m.dim);
    for (std::size_t j = 0; j < m.dim; ++j) {
        coords.push_back(map_pullback(m, RationalFn(LaurentPoly::monomial(unit_vector(m.dim, j)))));
    }
    return coords;
}

namespace {
Rational power(const Rational& x, std::int64_t k) {
    if (k == 0) return 1;
    if (x == 0) throw SampleError("zero raised to a power");
    Rational base = k > 0 ? x : Rational(1) / x;
    const auto e = static_cast<unsigned long>(k > 0 ? k : -k);
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}
}  // namespace

std::vector<Rational> step_point_map(const Step& s, std::span<const Rational> p) {
    for (const auto& x : p) {
        if (x == 0) throw SampleError("point off the torus");
    }
    const std::size_t n = p.size();
    std::vector<Rational> q(n);
    if (const auto* mu = std::get_if<MutationStep>(&s)) {
        if (mu->weight.size() != n) throw DimensionError("point dimension mismatch");
        const Rational fv = lp_eval(mu->factor, p);
        if (fv == 0) throw SampleError("mutation factor vanishes at sample point");
        for (std::size_t j = 0; j < n; ++j) q[j] = p[j] * power(fv, mu->factor_power(unit_vector(n, j)));
    } else {
        const auto& a = std::get<LatticeAutoStep>(s).matrix;
        if (a.rows() != n) throw DimensionError("point dimension mismatch");
        for (std::size_t j = 0; j < n; ++j) {
            q[j] = 1;
            for (std::size_t i = 0; i < n; ++i) q[j] *= power(p[i], to_int64(a(i, j)));
        }
    }
    return q;
}

std::vector<Rational> point_map(const BirationalMap& m, std::span<const Rational> p) {
    std::vector<Rational> q(p.begin(), p.end());
    for (auto it = m.steps.rbegin(); it != m.steps.rend(); ++it) q = step_point_map(*it, q);
    return q;
}

int structural_determinant(const BirationalMap& m) {
    int d = 1;
    for (const auto& s : m.steps) {
        if (const auto* a = std::get_if<LatticeAutoStep>(&s)) d *= determinant(a->matrix) > 0 ? 1 : -1;
    }
    return d;
}

Rational rational_determinant(std::vector<std::vector<Rational>> a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            const Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

Rational log_jacobian_determinant(const std::vector<RationalFn>& coords, std::span<const Rational> p) {
    const std::size_t n = coords.size();
    std::vector<std::vector<Rational>> jac(n, std::vector<Rational>(n));
    for (std::size_t j = 0; j < n; ++j) {
        const Rational num = lp_eval(coords[j].num(), p);
        const Rational den = lp_eval(coords[j].den(), p);
        if (num == 0 || den == 0) throw SampleError("coordinate function has a zero or pole at sample point");
        for (std::size_t i = 0; i < n; ++i) {
            jac[i][j] = lp_eval(lp_log_partial(coords[j].num(), i + 1), p) / num -
                        lp_eval(lp_log_partial(coords[j].den(), i + 1), p) / den;
        }
    }
    return rational_determinant(std::move(jac));
}

bool VolumeReport::ok() const {
    if (determinants.empty()) return false;
    for (const auto& d : determinants) {
        if (d != determinants.front()) return false;
    }
    const Rational& d = determinants.front();
    return (d == 1 || d == -1) && d == structural;
}

int VolumeReport::sign() const {
    if (determinants.empty()) return 0;
    return determinants.front() > 0 ? 1 : -1;
}

VolumeReport volume_check(const BirationalMap& m, const std::vector<std::vector<Rational>>& samples) {
    VolumeReport r;
    r.structural = structural_determinant(m);
    const auto coords = coordinate_functions(m);
    for (const auto& p : samples) {
        try {
            r.determinants.push_back(log_jacobian_determinant(coords, p));
        } catch (const SampleError&) {
            ++r.rejected_samples;
        } catch (const std::domain_error&) {
            ++r.rejected_samples;
        }
    }
    return r;
}

std::vector<std::vector<Rational>> seeded_torus_points(std::size_t n, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<std::vector<Rational>> pts(count, std::vector<Rational>(n));
    for (auto& p : pts) {
        for (auto& x : p) {
            // numerator in {-9..9} \ {0}, denominator in {1..7}
            const auto a = static_cast<long>(gen() % 18);
            const auto b = static_cast<long>(gen() % 7) + 1;
            const long num = a < 9 ? a - 9 : a - 8;
            x = Rational(num, b);
            x.canonicalize();
        }
    }
    return pts;
}

}  // namespace lgequiv
