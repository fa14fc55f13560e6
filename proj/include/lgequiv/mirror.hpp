#pragma once

// Mirror Laurent polynomials of complete intersections: amenable
// collections, the mutation chain onto a coordinate subtorus, and
// equivalence of the mirrors of two class-equal nef partitions.

#include <cstdint>
#include <vector>

#include "lgequiv/birational.hpp"
#include "lgequiv/equivalence.hpp"
#include "lgequiv/report.hpp"
#include "lgequiv/toric_model.hpp"

namespace lgequiv {

struct AmenableCollection {
    std::vector<ExpVec> vectors;    // u_1..u_c
    std::vector<int> distinguished;  // s_1..s_c, s_i in S_i
};

/// <u_i,S_i> = -1, <u_i,S_j> >= 0 for j > i (including the last part), and
/// <u_i,S_j> = 0 for j < i.
ValidationReport validate_amenable(const ToricModel& m, const NefPartition& p, const AmenableCollection& a);

struct MirrorChain {
    BirationalMap map;
    std::vector<LaurentPoly> factors;          // F_1..F_c
    std::vector<std::vector<LaurentPoly>> g;  // g[i-1][k] = G_i^(k)
};

/// Mutations pulling z^v back to z^v F_i^<u_i,v>, i = 1..c, with
/// F_i = z^(-v_{s_i}) G_i^(i-1). Throws InputError on invalid data or when a
/// factor leaves u_i^perp, InternalError when a pullback is not Laurent.
MirrorChain build_mirror_chain(const ToricModel& m, const NefPartition& p, const AmenableCollection& a);

struct SubtorusBasis {
    std::size_t codim = 0;
    IntMatrix extended;  // columns u_1..u_n
    IntMatrix basis;     // columns v_{s_1}..v_{s_c}, u*_{c+1}..u*_n
    IntMatrix inverse;   // basis^-1
    IntMatrix pairing;   // (i,j) = <u_i, b_j>
    Integer det;
};

/// Throws InputError when c >= n or the vectors do not extend to a basis.
SubtorusBasis subtorus_coordinates(const ToricModel& m, const AmenableCollection& a);

/// Lower triangular with +-1 diagonal once the first c indices are listed
/// in reverse order.
bool pairing_is_triangular(const SubtorusBasis& b);

/// Rewrites f in the coordinates y_k = z^(b_k) and sets y_1..y_c to 1.
LaurentPoly restrict_to_subtorus(const LaurentPoly& f, const SubtorusBasis& b);
RationalFn restrict_to_subtorus(const RationalFn& f, const SubtorusBasis& b);

/// Torus point with y = (1,..,1,q).
std::vector<Rational> lift_point(const SubtorusBasis& b, std::span<const Rational> q);
/// Subtorus coordinates y_{c+1..n} of a torus point.
std::vector<Rational> subtorus_point(const SubtorusBasis& b, std::span<const Rational> p);

struct MirrorResult {
    LaurentPoly mirror;   // n-c variables
    LaurentPoly pulled;   // chain pullback of W on the full torus
    SubtorusBasis coords;
    MirrorChain chain;

    const IntMatrix& basis() const { return coords.basis; }
};

MirrorResult extract_mirror(const ToricModel& m, const NefPartition& p, const AmenableCollection& a);

/// G_i^(c) = z^(v_{s_i}), mirror(q) = W(chain(lift(q))) and G_i = 1 at the
/// image point, at `samples` seeded points.
VerificationReport check_mirror(const ToricModel& m, const NefPartition& p, const MirrorResult& r,
                                std::size_t samples = 10, std::uint64_t seed = 7);

/// f(r_1, ..., r_k) for a Laurent polynomial f in k variables.
RationalFn substitute(const LaurentPoly& f, const std::vector<RationalFn>& r);

struct MirrorEquivalence {
    MirrorResult first;
    MirrorResult second;
    EquivalenceResult phi;
    BirationalMap psi;  // [chain^-1, phi, chain']
    VerificationReport report;
};

/// psi pulls the first mirror's full-torus data back to the second's; the
/// restricted identity g = psi*f is checked symbolically and at `samples`
/// seeded points, together with the volume of psi.
MirrorEquivalence mirror_equivalence(const PartitionPair& pair, const AmenableCollection& a,
                                     const AmenableCollection& a_prime, std::size_t samples = 10,
                                     std::uint64_t seed = 20240601);

}  // namespace lgequiv
