#pragma once

// Construction of the volume-preserving birational map relating the
// Landau-Ginzburg models of two class-equal nef partitions: communicating
// sets, reflection vectors, factor chains and the assembled composite.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "lgequiv/birational.hpp"
#include "lgequiv/report.hpp"
#include "lgequiv/sequences.hpp"
#include "lgequiv/toric_model.hpp"

namespace lgequiv {

/// A toric model with a validated pair of nef partitions and their weight
/// vectors w_1..w_c.
class PartitionPair {
public:
    /// Throws InputError unless validate_model and validate_pair pass.
    PartitionPair(ToricModel model, NefPartition first, NefPartition second);

    const ToricModel& model() const { return model_; }
    const NefPartition& first() const { return first_; }
    const NefPartition& second() const { return second_; }
    std::size_t codim() const { return first_.codim(); }
    std::size_t dim() const { return model_.dim(); }

    /// S_i and S'_i, 1-based over 1..c+1.
    const IndexSet& part(int i) const;
    const IndexSet& part_prime(int i) const;

    /// w_i for i in 1..c.
    const ExpVec& weight(int i) const;

private:
    ToricModel model_;
    NefPartition first_;
    NefPartition second_;
    std::vector<ExpVec> weights_;
};

struct CommunicatingGraph {
    int vertices = 0;                       // c+1
    std::vector<std::set<int>> adjacency;   // indexed 1..vertices
    std::vector<std::vector<int>> components;  // sorted, ordered by minimum
};

CommunicatingGraph build_graph(const PartitionPair& pair);

struct UVector {
    ExpVec plus;
    ExpVec minus;
};
using UVectors = std::map<int, UVector>;

/// Reflection vectors u^+-_j for j in the component minus its last
/// (maximal) element, built along breadth-first shortest paths to the last
/// element. Throws InternalError if a pairing invariant fails.
UVectors construct_u_vectors(const CommunicatingGraph& g, const std::vector<int>& component,
                             const PartitionPair& pair);

/// Terms z^u of G with <w,u> = 1.
LaurentPoly tilde_extract(const LaurentPoly& g, const ExpVec& w);

/// Factors and snapshots for one communicating set with members relabeled
/// 1..l+1 in ascending order. g[i-1][j] holds G_i^(j); primed fields hold
/// the chain with the roles of S and S' exchanged.
struct FactorChain {
    std::vector<int> members;
    std::vector<LaurentPoly> factors;
    std::vector<LaurentPoly> factors_prime;
    std::vector<std::vector<LaurentPoly>> g;
    std::vector<std::vector<LaurentPoly>> g_prime;

    std::size_t length() const { return factors.size(); }  // l
};

FactorChain build_factor_chain(const PartitionPair& pair, const std::vector<int>& component, const UVectors& u);

/// For l = 1 the composite [mu_{w,F}, mu_{-w,F'}, T]; for l >= 2
/// [mu_1..mu_l, T_1..T_l, mu_{-w_l,F'_l}^-1 .. mu_{-w_1,F'_1}^-1].
/// Singleton components give the empty map.
BirationalMap build_phi_component(const PartitionPair& pair, const FactorChain& chain, const UVectors& u);

VerificationReport verify_component(const PartitionPair& pair, const std::vector<int>& component,
                                    const BirationalMap& map, std::size_t samples = 20, std::uint64_t seed = 1);

struct ComponentData {
    std::vector<int> members;
    UVectors u;
    FactorChain chain;
    BirationalMap map;
};

struct EquivalenceOptions {
    std::size_t samples = 20;
    std::uint64_t seed = 20240601;
    bool verify_components = true;
};

struct EquivalenceResult {
    CommunicatingGraph graph;
    std::vector<ComponentData> components;
    BirationalMap phi;
    VerificationReport report;
    VolumeReport volume;
};

/// Builds phi as the concatenation of the component maps and checks
/// phi*W = W, phi*(G_i) = G'_i for every part, the volume sign, and the
/// point-map oracle W(phi(p)) = W(p).
EquivalenceResult assemble_phi(const PartitionPair& pair, const EquivalenceOptions& opts = {});

/// Data needed to expand a word into its polynomial.
struct SequenceContext {
    const PartitionPair* pair = nullptr;
    std::vector<int> members;  // label k -> part index members[k-1]
    const UVectors* u = nullptr;
    bool primed = false;
};

/// (a_1,...,a_p) = z^(u+_{a_1}) [a_1,a_2] ... [a_{p-1},a_p] with
/// [i,j] = z^(-u+_i) sum_{k in S_i cap S'_j} z^(v_k); the primed variant
/// uses u^- and S'_i cap S_j. Labels are component positions 1..l+1.
LaurentPoly sequence_poly(const SequenceWord& s, const SequenceContext& ctx);

/// Checks the closed forms of G_i^(j), F_i and G_i^(l) as sums over the
/// classes M(i,j) (both chains), and reversal closure of hilly words.
VerificationReport crosscheck_combinatorics(const PartitionPair& pair, const ComponentData& data);

/// is_hilly(w) == is_hilly(reverse(w)) for every word of length <= max_len
/// over {1..alphabet}; reports the first counterexample.
VerificationReport check_hilly_reversal(int max_len, int alphabet);

}  // namespace lgequiv
