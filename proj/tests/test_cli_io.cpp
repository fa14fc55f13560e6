#include <doctest.h>

#include "lgequiv/certificate.hpp"
#include "lgequiv/model_file.hpp"

using namespace lgequiv;
using nlohmann::json;

namespace {

bool throws_with(const std::string& text, const std::string& needle) {
    try {
        parse_model_file(text);
    } catch (const InputError& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

bool rejected(const ModelFile& f, const json& cert) {
    try {
        return !verify_certificate(f, cert).ok();
    } catch (const InputError&) {
        return true;
    }
}

}  // namespace

TEST_CASE("generators") {
    const auto p3 = generate_builtin("pn", {"3"});
    CHECK(p3.model.dim() == 3);
    CHECK(p3.model.num_rays() == 4);
    const auto pp = generate_builtin("product", {"p1", "p1"});
    CHECK(pp.model.dim() == 2);
    CHECK(pp.model.num_rays() == 4);
    CHECK_THROWS_AS(generate_builtin("pn", {"0"}), InputError);
    CHECK_THROWS_AS(generate_builtin("pn", {}), InputError);
    CHECK_THROWS_AS(generate_builtin("product", {"q2"}), InputError);
    CHECK_THROWS_AS(generate_builtin("grassmannian"), InputError);
    for (const char* name : {"p3-quadric", "p4-cubic", "p5-22", "p2-conic"}) {
        const auto f = generate_builtin(name);
        CHECK(validate_model(f.model).ok());
        CHECK(f.partitions.count("first"));
    }
}

TEST_CASE("model files round trip") {
    for (const char* name : {"p4-cubic", "p5-22"}) {
        const auto f = generate_builtin(name);
        const auto g = parse_model_file(serialize(f));
        CHECK(serialize(g) == serialize(f));
        CHECK(model_hash(g) == model_hash(f));
        CHECK(g.amenable.size() == f.amenable.size());
    }
    CHECK(model_hash(generate_builtin("pn", {"3"})) != model_hash(generate_builtin("pn", {"4"})));
    CHECK(model_hash(generate_builtin("pn", {"3"})).size() == 64);
}

TEST_CASE("model file errors are itemized") {
    CHECK(throws_with("{\"dim\": 3, \"rays\": [[1,0,0],[0,1],[0,0,1],[-1,-1,-1]]}", "ray 2 has length 2"));
    CHECK(throws_with("{\"dim\": 2, \"rays\": [[1,0],[0,1],[-1,-1]], \"partitions\": {\"x\": [[1],[2]]}}",
                      "not a partition"));
    CHECK(throws_with("{\"dim\": 2, \"rays\": [[1,0],[0,1],[-1,-1]], \"partitions\": {\"x\": [[1],[2],[3,4]]}}",
                      "partition 'x'"));
    CHECK(throws_with("[1, 2", "malformed"));
    CHECK(throws_with("{\"rays\": []}", "\"dim\""));
    CHECK(throws_with("{\"dim\": 2, \"rays\": [[2,0],[0,1],[-1,-1]]}", "model:"));
    try {
        parse_model_file("{\"dim\": 2, \"rays\": [[1,0,0],[0,1],[1]]}");
        FAIL("expected an error");
    } catch (const InputError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("ray 1") != std::string::npos);
        CHECK(msg.find("ray 3") != std::string::npos);
    }
    const auto f = generate_builtin("p4-cubic");
    CHECK_THROWS_AS(find_partition(f, "nope"), InputError);
    CHECK_THROWS_AS(find_amenable(f, "nope"), InputError);
}

TEST_CASE("equivalence certificates replay") {
    const auto f = generate_builtin("p3-quadric");
    const auto e = emit_equivalence(f, "first", "second");
    CHECK(e.report.ok());
    CHECK(e.certificate["format"] == "lgequiv-certificate");
    CHECK(e.certificate["kind"] == "equivalence");
    CHECK(e.certificate["steps"].size() == 3);
    CHECK(verify_certificate(f, e.certificate).ok());

    const auto round = json::parse(e.certificate.dump());
    CHECK(verify_certificate(f, round).ok());

    auto bad = e.certificate;
    bad["steps"][0]["factor"] = "1/1*z^(0,0,0) + 2/1*z^(-1,1,0)";
    CHECK(rejected(f, bad));

    bad = e.certificate;
    bad["identities"][0]["rhs"] = "1/1*z^(1,0,0)";
    CHECK(rejected(f, bad));

    CHECK_THROWS_AS(verify_certificate(generate_builtin("pn", {"3"}), e.certificate), InputError);
    bad = e.certificate;
    bad.erase("steps");
    CHECK_THROWS_AS(verify_certificate(f, bad), InputError);
    bad = e.certificate;
    bad["format"] = "other";
    CHECK_THROWS_AS(verify_certificate(f, bad), InputError);
}

TEST_CASE("identical partitions give an empty certificate") {
    const auto f = generate_builtin("p4-cubic");
    const auto e = emit_equivalence(f, "first", "first");
    CHECK(e.certificate["steps"].empty());
    CHECK(e.certificate["volume"]["determinant"] == 1);
    CHECK(verify_certificate(f, e.certificate).ok());
}

TEST_CASE("mirror certificates replay") {
    const auto f = generate_builtin("p5-22");
    const auto e = emit_mirror_equivalence(f, "first", "first", "second", "second");
    CHECK_MESSAGE(e.report.ok(), e.report.summary());
    CHECK(e.certificate["kind"] == "mirror-equivalence");
    CHECK(verify_certificate(f, e.certificate).ok());

    auto bad = e.certificate;
    bad["embeddings"]["second"]["mirror"] = "1/1*z^(1,0,0)";
    CHECK(rejected(f, bad));
}

TEST_CASE("identity mutations are left out of certificates") {
    const auto f = generate_builtin("p5-22");
    const auto e = emit_equivalence(f, "first", "second");
    CHECK(e.certificate["steps"].size() == 5);
    CHECK(verify_certificate(f, e.certificate).ok());

    auto padded = e.certificate;
    padded["steps"].push_back({{"type", "mutation"}, {"weight", {0, 1, 0, 0, 0}},
                               {"factor", "1/1*z^(0,0,0,0,0)"}, {"inverse", false}});
    CHECK(rejected(f, padded));
}
