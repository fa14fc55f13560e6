#pragma once

#include <random>

#include "lgequiv/exact_algebra.hpp"

namespace th {

using lgequiv::ExpVec;
using lgequiv::LaurentPoly;
using lgequiv::Rational;

inline LaurentPoly mono(ExpVec e, long c = 1) { return LaurentPoly::monomial(e, Rational(c)); }

inline LaurentPoly P(const std::string& canonical, std::size_t n) { return lgequiv::parse_canonical(canonical, n); }

inline Rational Q(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

// Small random Laurent polynomial with exponents in [-2,2].
inline LaurentPoly random_poly(std::mt19937_64& g, std::size_t n, int terms) {
    LaurentPoly f(n);
    for (int t = 0; t < terms; ++t) {
        ExpVec e(n);
        for (auto& x : e) x = static_cast<std::int64_t>(g() % 5) - 2;
        f.add_term(e, Q(static_cast<long>(g() % 7) - 3, static_cast<long>(g() % 3) + 1));
    }
    return f;
}

inline std::vector<Rational> random_point(std::mt19937_64& g, std::size_t n) {
    std::vector<Rational> p;
    for (std::size_t i = 0; i < n; ++i) {
        long a = static_cast<long>(g() % 11) - 5;
        if (a == 0) a = 6;
        p.push_back(Q(a, static_cast<long>(g() % 4) + 1));
    }
    return p;
}

}  // namespace th
