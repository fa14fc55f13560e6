#pragma once

// Sparse Laurent polynomials and rational functions over Q, indexed by
// exponent vectors in a rank-n lattice.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lgequiv {

using Rational = mpq_class;
using Integer = mpz_class;

/// Lattice vector. Used both for monomial exponents (elements of N) and for
/// linear functionals (elements of M); the pairing is the dot product.
using ExpVec = std::vector<std::int64_t>;

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::int64_t pairing(const ExpVec& w, const ExpVec& v);
ExpVec add(const ExpVec& a, const ExpVec& b);
ExpVec sub(const ExpVec& a, const ExpVec& b);
ExpVec negate(const ExpVec& a);
ExpVec scale(const ExpVec& a, std::int64_t k);
ExpVec unit_vector(std::size_t n, std::size_t i);
std::string to_string(const ExpVec& v);

/// Monomial orders available to the division routine.
enum class TermOrder { GradedLex, Lex };

bool term_less(const ExpVec& a, const ExpVec& b, TermOrder order);

class LaurentPoly {
public:
    using TermMap = std::map<ExpVec, Rational>;

    explicit LaurentPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static LaurentPoly constant(std::size_t nvars, const Rational& c);
    static LaurentPoly monomial(const ExpVec& e, const Rational& c = 1);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }

    /// Coefficient of z^e (zero when absent).
    Rational coeff(const ExpVec& e) const;

    /// Adds c*z^e, dropping the term if it cancels.
    void add_term(const ExpVec& e, const Rational& c);

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);

    LaurentPoly operator-() const;
    LaurentPoly scaled(const Rational& c) const;
    LaurentPoly shifted(const ExpVec& e) const;
    LaurentPoly pow(unsigned k) const;

    /// Componentwise minimum of all exponents. Requires a nonzero polynomial.
    ExpVec min_exponents() const;

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

private:
    void check_dim(const LaurentPoly& o) const;
    void check_dim(const ExpVec& e) const;

    std::size_t nvars_;
    TermMap terms_;
};

/// Exact product; throws DimensionError on mismatched exponent lengths.
LaurentPoly lp_mul(const LaurentPoly& f, const LaurentPoly& g);

/// Returns q with f = q*g in the Laurent ring, or nullopt when g does not
/// divide f. Throws std::domain_error when g is zero.
std::optional<LaurentPoly> lp_exact_div(const LaurentPoly& f, const LaurentPoly& g,
                                        TermOrder order = TermOrder::GradedLex);

/// Exact value at a point of the torus (all coordinates nonzero).
Rational lp_eval(const LaurentPoly& f, std::span<const Rational> point);

/// Logarithmic derivative z_i d/dz_i, axis index 1-based.
LaurentPoly lp_log_partial(const LaurentPoly& f, std::size_t axis);

/// Sub-sum of the terms whose exponent pairs with w to exactly `value`.
LaurentPoly terms_with_pairing(const LaurentPoly& f, const ExpVec& w, std::int64_t value);

/// Canonical text form: terms in lexicographic exponent order, each written
/// as "p/q*z^(e1,...,en)", joined by " + "; the zero polynomial is "0".
/// The variable count is not encoded, so parsing needs it.
std::string to_canonical(const LaurentPoly& f);
LaurentPoly parse_canonical(const std::string& text, std::size_t nvars);

/// Human-readable rendering with variable names x, y, z, w, ... (or x1..xn).
std::string pretty(const LaurentPoly& f);

std::string rational_to_string(const Rational& q);
Rational parse_rational(const std::string& s);

/// num/den with den nonzero. Not kept in lowest terms; equality is by
/// cross-multiplication.
class RationalFn {
public:
    explicit RationalFn(std::size_t nvars = 0);
    RationalFn(LaurentPoly num);  // NOLINT: implicit lift of Laurent polys is intended
    RationalFn(LaurentPoly num, LaurentPoly den);

    std::size_t nvars() const { return num_.nvars(); }
    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    /// Divides through when the denominator divides the numerator (always
    /// the case for monomial denominators).
    std::optional<LaurentPoly> as_laurent() const;

    /// Rewrites in place so that den == 1 whenever as_laurent() succeeds.
    void normalize();

    RationalFn inverse() const;
    RationalFn pow(int k) const;

    Rational eval(std::span<const Rational> point) const;

    friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b);

private:
    LaurentPoly num_;
    LaurentPoly den_;
};

/// Equality as rational functions: a.num*b.den == b.num*a.den.
bool rf_eq(const RationalFn& a, const RationalFn& b);

}  // namespace lgequiv
