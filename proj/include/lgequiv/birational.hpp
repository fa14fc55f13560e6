#pragma once

// Birational self-maps of the torus, represented by their pullback action
// on functions: signed mutations and lattice automorphisms.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "lgequiv/exact_algebra.hpp"
#include "lgequiv/integer_linear.hpp"

namespace lgequiv {

/// Pullback z^v -> z^v * F^(-<w,v>), or z^v * F^(<w,v>) when `inverse` is set
/// (the inverse map of the unflagged mutation).
struct MutationStep {
    ExpVec weight;
    LaurentPoly factor;
    bool inverse = false;

    MutationStep(ExpVec w, LaurentPoly f, bool inv = false);

    /// Exponent e such that z^v pulls back to z^v * F^e.
    std::int64_t factor_power(const ExpVec& v) const {
        const auto p = pairing(weight, v);
        return inverse ? p : -p;
    }
};

/// Pullback z^v -> z^(A v); |det A| = 1.
struct LatticeAutoStep {
    IntMatrix matrix;

    explicit LatticeAutoStep(IntMatrix a);
};

using Step = std::variant<MutationStep, LatticeAutoStep>;

/// Steps act on functions in list order: the first step's pullback is
/// applied to the input first. The point map is therefore the composite
/// with the last step applied first.
struct BirationalMap {
    std::size_t dim = 0;
    std::vector<Step> steps;

    explicit BirationalMap(std::size_t n = 0) : dim(n) {}

    void append(Step s);
    void append(const BirationalMap& other);
    bool empty() const { return steps.empty(); }
};

/// Raised when a sample point is a zero or pole of some function involved.
class SampleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

RationalFn mutation_pullback(const MutationStep& s, const RationalFn& f);

LatticeAutoStep reflection_from(const ExpVec& w, const ExpVec& u_plus, const ExpVec& u_minus);

RationalFn auto_pullback(const LatticeAutoStep& s, const RationalFn& f);

RationalFn step_pullback(const Step& s, const RationalFn& f);

RationalFn map_pullback(const BirationalMap& m, const RationalFn& f);

/// Reversed steps, mutation flags toggled, matrices inverted.
BirationalMap formal_inverse(const BirationalMap& m);

/// Pullbacks of the coordinate monomials z^(e_1), ..., z^(e_n).
std::vector<RationalFn> coordinate_functions(const BirationalMap& m);

/// Image of a torus point under the point map, evaluated step by step
/// (last step first). Throws SampleError on a zero or pole.
std::vector<Rational> point_map(const BirationalMap& m, std::span<const Rational> p);
std::vector<Rational> step_point_map(const Step& s, std::span<const Rational> p);

/// Product of +1 per mutation and det A per automorphism.
int structural_determinant(const BirationalMap& m);

struct VolumeReport {
    std::vector<Rational> determinants;  // one per accepted sample
    int structural = 0;
    std::size_t rejected_samples = 0;

    /// All sampled values equal, equal to +-1, and equal to the structural sign.
    bool ok() const;
    int sign() const;
};

/// Sampled determinant of the log-Jacobian (theta_i phi_j / phi_j) of the
/// coordinate functions. Samples that hit a zero or pole are skipped and
/// counted in `rejected_samples`.
VolumeReport volume_check(const BirationalMap& m, const std::vector<std::vector<Rational>>& samples);

/// Log-Jacobian determinant of given coordinate functions at one point.
Rational log_jacobian_determinant(const std::vector<RationalFn>& coords, std::span<const Rational> p);

Rational rational_determinant(std::vector<std::vector<Rational>> a);

/// Deterministic torus points: small nonzero rationals derived from raw
/// std::mt19937_64 output, so a seed reproduces them bit for bit.
std::vector<std::vector<Rational>> seeded_torus_points(std::size_t n, std::size_t count, std::uint64_t seed);

}  // namespace lgequiv
