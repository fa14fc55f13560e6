#pragma once

// Toric input data: lattice rank, ray generators and nef partitions.
// Ray and part indices are 1-based everywhere in this interface.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "lgequiv/exact_algebra.hpp"
#include "lgequiv/integer_linear.hpp"

namespace lgequiv {

using IndexSet = std::set<int>;

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string v) { violations.push_back(std::move(v)); }
    std::string summary() const;
};

class ToricModel {
public:
    ToricModel() = default;
    ToricModel(std::size_t dim, std::vector<ExpVec> rays);

    std::size_t dim() const { return dim_; }
    std::size_t num_rays() const { return rays_.size(); }
    const std::vector<ExpVec>& rays() const { return rays_; }
    /// Ray j, 1-based.
    const ExpVec& ray(int j) const;

    /// R x n matrix whose rows are the rays; as a map M -> Z^R it is rho*.
    const IntMatrix& ray_matrix() const { return ray_matrix_; }

    friend bool operator==(const ToricModel& a, const ToricModel& b) {
        return a.dim_ == b.dim_ && a.rays_ == b.rays_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<ExpVec> rays_;
    IntMatrix ray_matrix_;
};

struct NefPartition {
    std::vector<IndexSet> parts;  // S_1, ..., S_{c+1}

    std::size_t codim() const { return parts.empty() ? 0 : parts.size() - 1; }
    friend bool operator==(const NefPartition&, const NefPartition&) = default;
};

/// Class in coker(rho*) = Pic. Coordinates are taken in the Smith basis of
/// the ray matrix; torsion coordinates are reduced modulo their invariant
/// factor (recorded in `moduli`, 0 for free coordinates).
struct DivisorClass {
    std::vector<Integer> coords;
    std::vector<Integer> moduli;

    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
    std::string str() const;
};

/// Checks primitivity, rank n, distinctness and R > n.
ValidationReport validate_model(const ToricModel& m);

/// Checks that the parts are disjoint, cover {1..R} and are in range.
ValidationReport validate_partition(const ToricModel& m, const NefPartition& p);

DivisorClass class_of(const ToricModel& m, const IndexSet& s);

/// Both must be partitions with the same number of parts and, for
/// i = 1..c, class_of(S_i) == class_of(S'_i).
ValidationReport validate_pair(const ToricModel& m, const NefPartition& p, const NefPartition& q);

LaurentPoly superpotential(const ToricModel& m);
LaurentPoly partition_sum(const ToricModel& m, const IndexSet& s);

/// The unique w in M with <w, v_j> = 1 on S\S', -1 on S'\S and 0 elsewhere.
/// Throws std::invalid_argument when no such functional exists.
ExpVec weight_vector(const ToricModel& m, const IndexSet& s, const IndexSet& s_prime);

std::string to_string(const IndexSet& s);

}  // namespace lgequiv
