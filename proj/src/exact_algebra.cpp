#include "lgequiv/exact_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace lgequiv {

std::int64_t pairing(const ExpVec& w, const ExpVec& v) {
    if (w.size() != v.size()) {
        throw DimensionError("pairing: length " + std::to_string(w.size()) + " vs " +
                             std::to_string(v.size()));
    }
    std::int64_t s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * v[i];
    return s;
}

ExpVec add(const ExpVec& a, const ExpVec& b) {
    if (a.size() != b.size()) throw DimensionError("add: length mismatch");
    ExpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

ExpVec sub(const ExpVec& a, const ExpVec& b) {
    if (a.size() != b.size()) throw DimensionError("sub: length mismatch");
    ExpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

ExpVec negate(const ExpVec& a) { return scale(a, -1); }

ExpVec scale(const ExpVec& a, std::int64_t k) {
    ExpVec r(a);
    for (auto& x : r) x *= k;
    return r;
}

ExpVec unit_vector(std::size_t n, std::size_t i) {
    ExpVec e(n, 0);
    e.at(i) = 1;
    return e;
}

std::string to_string(const ExpVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s + ")";
}

bool term_less(const ExpVec& a, const ExpVec& b, TermOrder order) {
    if (order == TermOrder::GradedLex) {
        std::int64_t da = 0, db = 0;
        for (auto x : a) da += x;
        for (auto x : b) db += x;
        if (da != db) return da < db;
    }
    return a < b;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::constant(std::size_t nvars, const Rational& c) {
    LaurentPoly p(nvars);
    p.add_term(ExpVec(nvars, 0), c);
    return p;
}

LaurentPoly LaurentPoly::monomial(const ExpVec& e, const Rational& c) {
    LaurentPoly p(e.size());
    p.add_term(e, c);
    return p;
}

Rational LaurentPoly::coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::check_dim(const LaurentPoly& o) const {
    if (o.nvars_ != nvars_) {
        throw DimensionError("Laurent polynomial dimension mismatch: " + std::to_string(nvars_) +
                             " vs " + std::to_string(o.nvars_));
    }
}

void LaurentPoly::check_dim(const ExpVec& e) const {
    if (e.size() != nvars_) {
        throw DimensionError("exponent " + to_string(e) + " in a " + std::to_string(nvars_) +
                             "-variable polynomial");
    }
}

void LaurentPoly::add_term(const ExpVec& e, const Rational& c) {
    check_dim(e);
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    check_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    check_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_dim(b);
    LaurentPoly r(a.nvars_);
    if (a.is_zero() || b.is_zero()) return r;
    ExpVec e(a.nvars_);
    Rational c;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            c = ca * cb;
            r.add_term(e, c);
        }
    }
    return r;
}

LaurentPoly LaurentPoly::operator-() const { return scaled(-1); }

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
    LaurentPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, x] : terms_) r.terms_.emplace(e, x * c);
    return r;
}

LaurentPoly LaurentPoly::shifted(const ExpVec& s) const {
    check_dim(s);
    LaurentPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), add(e, s), c);
    return r;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
    LaurentPoly result = constant(nvars_, 1);
    LaurentPoly base = *this;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return result;
}

ExpVec LaurentPoly::min_exponents() const {
    if (terms_.empty()) throw std::domain_error("min_exponents of the zero polynomial");
    ExpVec m = terms_.begin()->first;
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
    }
    return m;
}

LaurentPoly lp_mul(const LaurentPoly& f, const LaurentPoly& g) { return f * g; }

std::optional<LaurentPoly> lp_exact_div(const LaurentPoly& f, const LaurentPoly& g,
                                        TermOrder order) {
    if (g.is_zero()) throw std::domain_error("lp_exact_div: division by zero");
    if (f.nvars() != g.nvars()) throw DimensionError("lp_exact_div: dimension mismatch");
    const std::size_t n = f.nvars();
    if (f.is_zero()) return LaurentPoly(n);

    if (g.is_monomial()) {
        const auto& [ge, gc] = *g.terms().begin();
        return f.shifted(negate(ge)).scaled(1 / gc);
    }

    // Move both into the positive orthant, with g not divisible by any
    // variable; then Laurent divisibility is polynomial divisibility.
    const ExpVec fmin = f.min_exponents();
    const ExpVec gmin = g.min_exponents();

    auto cmp = [order](const ExpVec& a, const ExpVec& b) { return term_less(a, b, order); };
    using OrderedTerms = std::map<ExpVec, Rational, decltype(cmp)>;

    OrderedTerms rem(cmp);
    for (const auto& [e, c] : f.terms()) rem.emplace(sub(e, fmin), c);
    OrderedTerms divisor(cmp);
    for (const auto& [e, c] : g.terms()) divisor.emplace(sub(e, gmin), c);

    const auto& [lead_e, lead_c] = *divisor.rbegin();
    LaurentPoly quotient(n);
    ExpVec diff(n), prod(n);
    while (!rem.empty()) {
        const auto it = std::prev(rem.end());
        for (std::size_t i = 0; i < n; ++i) {
            diff[i] = it->first[i] - lead_e[i];
            if (diff[i] < 0) return std::nullopt;
        }
        const Rational c = it->second / lead_c;
        quotient.add_term(diff, c);
        for (const auto& [de, dc] : divisor) {
            for (std::size_t i = 0; i < n; ++i) prod[i] = diff[i] + de[i];
            auto [slot, inserted] = rem.try_emplace(prod, 0);
            slot->second -= c * dc;
            if (slot->second == 0) rem.erase(slot);
        }
    }
    return quotient.shifted(sub(fmin, gmin));
}

Rational lp_eval(const LaurentPoly& f, std::span<const Rational> point) {
    if (point.size() != f.nvars()) throw DimensionError("lp_eval: point dimension mismatch");
    for (const auto& x : point) {
        if (x == 0) throw std::domain_error("lp_eval: point has a zero coordinate (off the torus)");
    }
    Rational total = 0;
    Rational term;
    mpz_class num, den;
    for (const auto& [e, c] : f.terms()) {
        term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            const auto k = static_cast<unsigned long>(e[i] > 0 ? e[i] : -e[i]);
            mpz_pow_ui(num.get_mpz_t(), point[i].get_num_mpz_t(), k);
            mpz_pow_ui(den.get_mpz_t(), point[i].get_den_mpz_t(), k);
            Rational p = e[i] > 0 ? Rational(num, den) : Rational(den, num);
            p.canonicalize();
            term *= p;
        }
        total += term;
    }
    return total;
}

LaurentPoly lp_log_partial(const LaurentPoly& f, std::size_t axis) {
    if (axis < 1 || axis > f.nvars()) {
        throw std::out_of_range("lp_log_partial: axis " + std::to_string(axis) + " not in 1.." +
                                std::to_string(f.nvars()));
    }
    LaurentPoly r(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        if (e[axis - 1] != 0) r.add_term(e, c * Rational(static_cast<long>(e[axis - 1])));
    }
    return r;
}

LaurentPoly terms_with_pairing(const LaurentPoly& f, const ExpVec& w, std::int64_t value) {
    LaurentPoly r(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        if (pairing(w, e) == value) r.add_term(e, c);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Text forms

std::string rational_to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string to_canonical(const LaurentPoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        if (!first) out += " + ";
        first = false;
        out += rational_to_string(c);
        out += "*z^";
        out += to_string(e);
    }
    return out;
}

LaurentPoly parse_canonical(const std::string& text, std::size_t nvars) {
    LaurentPoly p(nvars);
    std::string t;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    }
    if (t == "0") return p;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("parse_canonical: " + why + " at offset " +
                                    std::to_string(pos) + " in '" + text + "'");
    };
    while (pos < t.size()) {
        const auto star = t.find("*z^(", pos);
        if (star == std::string::npos) fail("expected '*z^('");
        const Rational c = parse_rational(t.substr(pos, star - pos));
        const auto close = t.find(')', star);
        if (close == std::string::npos) fail("unterminated exponent");
        ExpVec e;
        std::stringstream ss(t.substr(star + 4, close - star - 4));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                e.push_back(std::stoll(item));
            } catch (const std::exception&) {
                fail("bad exponent entry '" + item + "'");
            }
        }
        if (e.size() != nvars) fail("exponent of length " + std::to_string(e.size()));
        if (p.coeff(e) != 0) fail("repeated exponent " + to_string(e));
        if (c == 0) fail("zero coefficient");
        p.add_term(e, c);
        pos = close + 1;
        if (pos < t.size()) {
            if (t[pos] != '+') fail("expected '+'");
            ++pos;
        }
    }
    return p;
}

std::string pretty(const LaurentPoly& f) {
    if (f.is_zero()) return "0";
    static const char* small[] = {"x", "y", "z", "w"};
    const std::size_t n = f.nvars();
    auto var = [&](std::size_t i) {
        return n <= 4 ? std::string(small[i]) : "x" + std::to_string(i + 1);
    };
    std::string out;
    bool first = true;
    // Descending graded order reads more naturally.
    std::vector<std::pair<ExpVec, Rational>> terms(f.terms().begin(), f.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return term_less(b.first, a.first, TermOrder::GradedLex);
    });
    for (const auto& [e, c] : terms) {
        std::string mono;
        for (std::size_t i = 0; i < n; ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var(i);
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        Rational mag = abs(c);
        std::string coeff = mag.get_str();
        const bool negative = c < 0;
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (mono.empty()) {
            out += coeff;
        } else {
            if (mag != 1) out += coeff + "*";
            out += mono;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// RationalFn

RationalFn::RationalFn(std::size_t nvars) : num_(nvars), den_(LaurentPoly::constant(nvars, 1)) {}

RationalFn::RationalFn(LaurentPoly num)
    : num_(std::move(num)), den_(LaurentPoly::constant(num_.nvars(), 1)) {}

RationalFn::RationalFn(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RationalFn: zero denominator");
    if (num_.nvars() != den_.nvars()) throw DimensionError("RationalFn: dimension mismatch");
}

std::optional<LaurentPoly> RationalFn::as_laurent() const { return lp_exact_div(num_, den_); }

void RationalFn::normalize() {
    if (den_ == LaurentPoly::constant(den_.nvars(), 1)) return;
    if (auto q = as_laurent()) {
        num_ = std::move(*q);
        den_ = LaurentPoly::constant(num_.nvars(), 1);
    }
}

RationalFn RationalFn::inverse() const {
    if (num_.is_zero()) throw std::domain_error("RationalFn::inverse of zero");
    return RationalFn(den_, num_);
}

RationalFn RationalFn::pow(int k) const {
    if (k >= 0) return RationalFn(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
    return inverse().pow(-k);
}

Rational RationalFn::eval(std::span<const Rational> point) const {
    const Rational d = lp_eval(den_, point);
    if (d == 0) throw std::domain_error("RationalFn::eval: pole at sample point");
    return lp_eval(num_, point) / d;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
    return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ - b.num_, a.den_);
    return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.inverse(); }

bool rf_eq(const RationalFn& a, const RationalFn& b) {
    if (a.nvars() != b.nvars()) throw DimensionError("rf_eq: dimension mismatch");
    if (a.den() == b.den()) return a.num() == b.num();
    return a.num() * b.den() == b.num() * a.den();
}

}  // namespace lgequiv
