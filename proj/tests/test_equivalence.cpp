#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "lgequiv/equivalence.hpp"
#include "lgequiv/model_file.hpp"
#include "oracles.hpp"

using namespace lgequiv;
using th::mono;

namespace {

PartitionPair p3_pair() { return PartitionPair(projective_space(3), {{{1, 2}, {3, 4}}}, {{{3, 4}, {1, 2}}}); }

PartitionPair p5_pair() {
    return PartitionPair(projective_space(5), {{{1, 2}, {3, 4}, {5, 6}}}, {{{1, 6}, {2, 5}, {3, 4}}});
}

ComponentData component(const PartitionPair& pair, std::size_t index) {
    const auto g = build_graph(pair);
    ComponentData d;
    d.members = g.components.at(index);
    d.u = construct_u_vectors(g, d.members, pair);
    d.chain = build_factor_chain(pair, d.members, d.u);
    d.map = build_phi_component(pair, d.chain, d.u);
    return d;
}

}  // namespace

TEST_CASE("pair construction rejects class mismatches") {
    CHECK_THROWS_AS(PartitionPair(projective_space(3), {{{1}, {2, 3, 4}}}, {{{1, 2}, {3, 4}}}), InputError);
    CHECK(p3_pair().weight(1) == ExpVec{1, 1, -1});
}

TEST_CASE("communicating graph") {
    const auto m = projective_space(3);
    const PartitionPair same(m, {{{1, 2}, {3, 4}}}, {{{1, 2}, {3, 4}}});
    auto g = build_graph(same);
    CHECK(g.components == std::vector<std::vector<int>>{{1}, {2}});

    g = build_graph(p3_pair());
    CHECK(g.components == std::vector<std::vector<int>>{{1, 2}});

    const PartitionPair half(projective_space(5), {{{1, 2}, {3, 4}, {5, 6}}}, {{{1, 2}, {3, 5}, {4, 6}}});
    g = build_graph(half);
    CHECK(g.components == std::vector<std::vector<int>>{{1}, {2, 3}});
    CHECK(g.adjacency[1].empty());
}

TEST_CASE("reflection vectors") {
    const auto pair = p3_pair();
    const auto g = build_graph(pair);
    const auto u = construct_u_vectors(g, {1, 2}, pair);
    REQUIRE(u.count(1));
    CHECK(pairing(pair.weight(1), u.at(1).plus) == 1);
    CHECK(pairing(pair.weight(1), u.at(1).minus) == -1);
    CHECK(u.at(1).plus == ExpVec{1, 0, 0});
    const PartitionPair same(projective_space(3), {{{1, 2}, {3, 4}}}, {{{1, 2}, {3, 4}}});
    CHECK(construct_u_vectors(build_graph(same), {1}, same).empty());

    // Path 1 - 2 - 3 with no edge between 1 and 3.
    const PartitionPair chain(projective_space(5), {{{1, 2}, {3, 4}, {5, 6}}}, {{{1, 3}, {2, 5}, {4, 6}}});
    const auto gc = build_graph(chain);
    REQUIRE(gc.components.size() == 1);
    CHECK_FALSE(gc.adjacency[1].count(3));
    const auto uc = construct_u_vectors(gc, {1, 2, 3}, chain);
    CHECK(uc.at(2).plus == ExpVec{0, 0, 0, 1, 0});
    CHECK(uc.at(1).plus == ExpVec{0, 1, 0, 1, 0});
    for (int j : {1, 2}) {
        CHECK(pairing(chain.weight(j), uc.at(j).plus) == 1);
        CHECK(pairing(chain.weight(j), uc.at(j).minus) == -1);
    }
}

TEST_CASE("pairing-one extraction") {
    const auto pair = p3_pair();
    const auto g1 = partition_sum(pair.model(), {1, 2});
    CHECK(tilde_extract(g1, {1, 1, -1}) == g1);
    CHECK(tilde_extract(g1, {-1, -1, 1}).is_zero());
    CHECK(tilde_extract(mono({1, 0}) + mono({0, 1}), {1, 1}) == mono({1, 0}) + mono({0, 1}));
}

TEST_CASE("hypersurface factor and composite") {
    const auto pair = p3_pair();
    const auto d = component(pair, 0);
    REQUIRE(d.chain.length() == 1);
    const auto& up = d.u.at(1).plus;
    CHECK(d.chain.factors[0] == partition_sum(pair.model(), {1, 2}).shifted(oracle::neg(up)));
    REQUIRE(d.map.steps.size() == 3);
    CHECK(std::holds_alternative<MutationStep>(d.map.steps[0]));
    CHECK(std::holds_alternative<MutationStep>(d.map.steps[1]));
    CHECK(std::holds_alternative<LatticeAutoStep>(d.map.steps[2]));
    CHECK(verify_component(pair, {1, 2}, d.map).ok());
}

TEST_CASE("two-step chain snapshots on the (2,2) instance") {
    const auto pair = p5_pair();
    const auto d = component(pair, 0);
    REQUIRE(d.members == std::vector<int>{1, 2, 3});
    REQUIRE(d.chain.length() == 2);
    const SequenceContext ctx{&pair, d.members, &d.u, false};
    LaurentPoly expected(5);
    for (int i = 2; i <= 3; ++i) {
        expected += sequence_poly({2, i}, ctx);
        expected += sequence_poly({2, 1, i}, ctx);
    }
    CHECK(d.chain.g[1][1] == expected);

    // l mutations, l reflections, l inverse mutations.
    REQUIRE(d.map.steps.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
        const bool is_auto = k == 2 || k == 3;
        CHECK(std::holds_alternative<LatticeAutoStep>(d.map.steps[k]) == is_auto);
        if (k >= 4) CHECK(std::get<MutationStep>(d.map.steps[k]).inverse);
    }
    CHECK(crosscheck_combinatorics(pair, d).ok());
}

TEST_CASE("corrupted factors are caught") {
    const auto pair = p3_pair();
    auto d = component(pair, 0);
    auto& mu = std::get<MutationStep>(d.map.steps[0]);
    REQUIRE(mu.factor.size() >= 2);
    LaurentPoly dropped(mu.factor.nvars());
    bool first = true;
    for (const auto& [e, c] : mu.factor.terms()) {
        if (first) {
            first = false;
            continue;
        }
        dropped.add_term(e, c);
    }
    mu.factor = dropped;
    const auto r = verify_component(pair, {1, 2}, d.map);
    CHECK_FALSE(r.ok());
    bool wc_failed = false;
    for (const auto& f : r.failures()) wc_failed = wc_failed || f.name.find("W_C") != std::string::npos;
    CHECK(wc_failed);
}

TEST_CASE("assembled maps") {
    const auto m = projective_space(3);
    const PartitionPair same(m, {{{1, 2}, {3, 4}}}, {{{1, 2}, {3, 4}}});
    auto res = assemble_phi(same);
    CHECK(res.phi.empty());
    CHECK(res.report.ok());

    res = assemble_phi(p3_pair());
    CHECK(res.report.ok());
    CHECK(res.volume.sign() == -1);

    const PartitionPair quartic(projective_space(4), {{{1, 2, 3}, {4, 5}}}, {{{2, 4, 5}, {1, 3}}});
    CHECK(assemble_phi(quartic).report.ok());

    std::mt19937_64 gen(77);
    for (int k = 0; k < 6; ++k) {
        const auto in = oracle::random_pn_pair(gen, 4 + k % 3, 1 + k % 3);
        const PartitionPair pair(in.model, in.first, in.second);
        const auto r = assemble_phi(pair);
        CHECK_MESSAGE(r.report.ok(), r.report.summary());
    }
}

TEST_CASE("hilly words") {
    CHECK(is_hilly({}));
    CHECK(is_hilly({1, 2, 1}));
    CHECK_FALSE(is_hilly({1, 1}));
    CHECK_FALSE(is_hilly({2, 1, 2}));
    CHECK(is_hilly({1, 2, 1, 3, 1, 2, 1}));

    const std::vector<std::size_t> counts{1, 2, 6, 42, 1806};
    for (int j = 0; j <= 4; ++j) {
        const auto words = hilly_words(j);
        CHECK(words.size() == counts[static_cast<std::size_t>(j)]);
        const std::set<SequenceWord> unique(words.begin(), words.end());
        CHECK(unique.size() == words.size());
        if (j <= 3) {
            const auto brute = oracle::words(j, (std::size_t{1} << j) - 1, oracle::hilly, false);
            CHECK(std::set<SequenceWord>(brute.begin(), brute.end()) == unique);
        }
    }
}

TEST_CASE("word classes") {
    const auto m21 = enumerate_M(2, 1, 3);
    CHECK(std::set<SequenceWord>(m21.begin(), m21.end()) ==
          std::set<SequenceWord>{{2, 2}, {2, 3}, {2, 1, 2}, {2, 1, 3}});
    CHECK(enumerate_M(1, 0, 3) == std::vector<SequenceWord>{{1, 1}, {1, 2}, {1, 3}});
    for (const auto& w : enumerate_M(3, 0, 4)) CHECK(w.size() == 2);
    CHECK_THROWS(enumerate_M(2, 2, 3));
    CHECK_THROWS(enumerate_M(4, 1, 3));
    for (int i = 2; i <= 5; ++i)
        for (int j = 0; j < i; ++j) {
            const auto a = enumerate_M(i, j, 5);
            const auto b = oracle::class_M(i, j, 5);
            CHECK(std::set<SequenceWord>(a.begin(), a.end()) == std::set<SequenceWord>(b.begin(), b.end()));
        }
}

TEST_CASE("word polynomials") {
    const auto pair = p5_pair();
    const auto d = component(pair, 0);
    const SequenceContext ctx{&pair, d.members, &d.u, false};
    CHECK(sequence_poly({1, 2}, ctx) == oracle::ray_sum(pair.model(), oracle::meet(pair.part(1), pair.part_prime(2))));
    CHECK_FALSE(sequence_poly({1, 2}, ctx).is_zero());
    const auto prod = sequence_poly({3, 1, 2}, ctx);
    const auto expected = oracle::ray_sum(pair.model(), oracle::meet(pair.part(3), pair.part_prime(1))) *
                          oracle::ray_sum(pair.model(), oracle::meet(pair.part(1), pair.part_prime(2)))
                              .shifted(oracle::neg(d.u.at(1).plus));
    CHECK(prod == expected);
    CHECK_FALSE(prod.is_zero());
    CHECK(sequence_poly({3, 3}, ctx).is_zero());
    CHECK(sequence_poly({2, 1, 3}, ctx).is_zero());
    CHECK_THROWS(sequence_poly({1, 3, 2}, ctx));
    CHECK_THROWS(sequence_poly({1}, ctx));
}

TEST_CASE("combinatorial closed forms on random communicating instances") {
    std::mt19937_64 gen(123);
    int tested = 0;
    for (int k = 0; k < 40 && tested < 8; ++k) {
        const int c = 2 + k % 3;
        const auto in = oracle::random_pn_pair(gen, c + 2 + k % 2, c);
        const PartitionPair pair(in.model, in.first, in.second);
        const auto g = build_graph(pair);
        if (g.components.size() != 1) continue;
        ++tested;
        const auto d = component(pair, 0);
        const auto r = crosscheck_combinatorics(pair, d);
        CHECK_MESSAGE(r.ok(), r.summary());
    }
    CHECK(tested == 8);
}

TEST_CASE("hilly reversal closure") {
    CHECK(check_hilly_reversal(6, 3).ok());
}
