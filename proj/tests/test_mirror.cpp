#include <doctest.h>

#include "helpers.hpp"
#include "lgequiv/mirror.hpp"
#include "lgequiv/model_file.hpp"
#include "oracles.hpp"

using namespace lgequiv;
using th::mono;

TEST_CASE("amenable collection conditions") {
    const auto f = generate_builtin("p4-cubic");
    const auto& p = find_partition(f, "first");
    CHECK(validate_amenable(f.model, p, find_amenable(f, "first")).ok());

    auto r = validate_amenable(f.model, p, {{{-1, -1, 0, 0}}, {1}});
    REQUIRE_FALSE(r.ok());
    CHECK(r.summary().find("condition (1)") != std::string::npos);

    r = validate_amenable(f.model, p, {{{-1, -1, -1, -1}}, {1}});
    CHECK(r.summary().find("condition (2)") != std::string::npos);

    r = validate_amenable(f.model, p, {{{-1, -1, -1, 0}}, {4}});
    CHECK(r.summary().find("is not in S_1") != std::string::npos);

    const auto g = generate_builtin("p5-22");
    const auto& q = find_partition(g, "first");
    CHECK(validate_amenable(g.model, q, find_amenable(g, "first")).ok());
    r = validate_amenable(g.model, q, {{{-1, -1, 0, 0, 0}, {1, 0, -1, -1, 0}}, {1, 3}});
    CHECK(r.summary().find("condition (3)") != std::string::npos);
    CHECK_FALSE(validate_amenable(g.model, q, {{{-1, -1, 0, 0, 0}}, {1}}).ok());
}

TEST_CASE("conic chain and coordinates") {
    const auto f = generate_builtin("p2-conic");
    const auto& p = find_partition(f, "first");
    const auto& a = find_amenable(f, "first");
    const auto ch = build_mirror_chain(f.model, p, a);
    REQUIRE(ch.factors.size() == 1);
    CHECK(ch.factors[0] == LaurentPoly::constant(2, 1) + mono({-1, 1}));

    const auto b = subtorus_coordinates(f.model, a);
    CHECK(b.basis.column_vec(0) == ExpVec{1, 0});
    CHECK(abs(b.det) == 1);
    CHECK(pairing_is_triangular(b));

    const auto res = extract_mirror(f.model, p, a);
    CHECK(res.mirror.nvars() == 1);
    CHECK(check_mirror(f.model, p, res).ok());
}

TEST_CASE("full codimension has no subtorus") {
    const auto m = projective_space(1);
    CHECK_THROWS_AS(subtorus_coordinates(m, {{{-1}}, {1}}), InputError);
}

TEST_CASE("cubic threefold mirror") {
    const auto f = generate_builtin("p4-cubic");
    for (const char* name : {"first", "second"}) {
        const auto& p = find_partition(f, name);
        const auto& a = find_amenable(f, name);
        const auto res = extract_mirror(f.model, p, a);
        CHECK(res.mirror.nvars() == 3);
        CHECK(pairing_is_triangular(res.coords));
        CHECK(abs(res.coords.det) == 1);
        CHECK(res.coords.basis * res.coords.inverse == IntMatrix::identity(4));
        const auto rep = check_mirror(f.model, p, res, 12, 5);
        CHECK_MESSAGE(rep.ok(), rep.summary());
    }
    const auto res = extract_mirror(f.model, find_partition(f, "first"), find_amenable(f, "first"));
    CHECK(res.mirror.size() == 12);
}

TEST_CASE("subtorus point round trip") {
    const auto f = generate_builtin("p4-cubic");
    const auto b = subtorus_coordinates(f.model, find_amenable(f, "first"));
    const std::vector<Rational> q{th::Q(2), th::Q(-1, 3), th::Q(5, 2)};
    const auto p = lift_point(b, q);
    CHECK(p.size() == 4);
    CHECK(subtorus_point(b, p) == q);
}

TEST_CASE("no constraints leaves the superpotential") {
    const auto m = projective_space(3);
    const NefPartition p{{{1, 2, 3, 4}}};
    const auto res = extract_mirror(m, p, {});
    CHECK(res.chain.map.empty());
    CHECK(res.mirror == superpotential(m));
}

TEST_CASE("substitution") {
    const auto f = mono({1, 0}) + mono({0, -1}, 2);
    const std::vector<RationalFn> r{RationalFn(mono({1})), RationalFn(LaurentPoly::constant(1, 1) + mono({1}))};
    CHECK(rf_eq(substitute(f, r), RationalFn(mono({1}) * (LaurentPoly::constant(1, 1) + mono({1})) +
                                                 LaurentPoly::constant(1, 2),
                                             LaurentPoly::constant(1, 1) + mono({1}))));
    CHECK_THROWS(substitute(f, {r[0]}));
}

TEST_CASE("mirrors of an equivalent pair") {
    const auto f = generate_builtin("p5-22");
    const PartitionPair pair(f.model, find_partition(f, "first"), find_partition(f, "second"));
    const auto eq = mirror_equivalence(pair, find_amenable(f, "first"), find_amenable(f, "second"));
    CHECK_MESSAGE(eq.report.ok(), eq.report.summary());
    CHECK(eq.first.mirror.nvars() == 3);
    CHECK(eq.second.mirror.nvars() == 3);
    CHECK(pairing_is_triangular(eq.first.coords));
    CHECK(pairing_is_triangular(eq.second.coords));
}

TEST_CASE("mirror equivalence with itself") {
    const auto f = generate_builtin("p4-cubic");
    const auto& p = find_partition(f, "first");
    const auto& a = find_amenable(f, "first");
    const PartitionPair pair(f.model, p, p);
    const auto eq = mirror_equivalence(pair, a, a);
    CHECK(eq.phi.phi.empty());
    CHECK_MESSAGE(eq.report.ok(), eq.report.summary());
    CHECK(eq.first.mirror == eq.second.mirror);
}
