#include "lgequiv/certificate.hpp"

#include "lgequiv/equivalence.hpp"
#include "lgequiv/mirror.hpp"

namespace lgequiv {

using nlohmann::json;

namespace {

json identity(const std::string& name, const LaurentPoly& lhs, const LaurentPoly& rhs) {
    return {{"name", name}, {"lhs", to_canonical(lhs)}, {"rhs", to_canonical(rhs)}};
}

json points_json(const std::vector<std::vector<Rational>>& pts) {
    json a = json::array();
    for (const auto& p : pts) {
        json row = json::array();
        for (const auto& x : p) row.push_back(rational_to_string(x));
        a.push_back(row);
    }
    return a;
}

json sample_block(std::size_t n, std::size_t count, std::uint64_t seed) {
    return {{"seed", seed}, {"count", count}, {"points", points_json(seeded_torus_points(n, count, seed))}};
}

json matrix_json(const IntMatrix& a) {
    json rows = json::array();
    for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(a.row_vec(r));
    return rows;
}

json header(const ModelFile& f, const std::string& kind) {
    return {{"format", "lgequiv-certificate"},
            {"version", 1},
            {"kind", kind},
            {"model_hash", model_hash(f)},
            {"dim", f.model.dim()}};
}

}  // namespace

json steps_to_json(const BirationalMap& m) {
    json steps = json::array();
    for (const auto& s : m.steps) {
        if (const auto* mu = std::get_if<MutationStep>(&s)) {
            // F = 1 is the identity map and would leave its weight unconstrained.
            if (mu->factor == LaurentPoly::constant(m.dim, 1)) continue;
            steps.push_back({{"type", "mutation"},
                             {"weight", mu->weight},
                             {"factor", to_canonical(mu->factor)},
                             {"inverse", mu->inverse}});
        } else {
            steps.push_back({{"type", "automorphism"}, {"matrix", matrix_json(std::get<LatticeAutoStep>(s).matrix)}});
        }
    }
    return steps;
}

Emission emit_equivalence(const ModelFile& f, const std::string& first, const std::string& second,
                          std::uint64_t seed) {
    const PartitionPair pair(f.model, find_partition(f, first), find_partition(f, second));
    EquivalenceOptions opts;
    opts.samples = kVolumeSamples;
    opts.seed = seed;
    EquivalenceResult res = assemble_phi(pair, opts);

    Emission e;
    e.report = res.report;
    json& c = e.certificate;
    c = header(f, "equivalence");
    c["partitions"] = {{"first", first}, {"second", second}};
    c["steps"] = steps_to_json(res.phi);
    c["identities"] = json::array();
    const auto w = superpotential(f.model);
    c["identities"].push_back(identity("phi*(W) = W", w, w));
    for (int i = 1; i <= static_cast<int>(pair.codim() + 1); ++i) {
        c["identities"].push_back(identity("phi*(G_" + std::to_string(i) + ") = G'_" + std::to_string(i),
                                           partition_sum(f.model, pair.part(i)),
                                           partition_sum(f.model, pair.part_prime(i))));
    }
    c["volume"] = sample_block(f.model.dim(), 2 * kVolumeSamples + 8, seed);
    c["volume"]["determinant"] = structural_determinant(res.phi);
    return e;
}

Emission emit_mirror_equivalence(const ModelFile& f, const std::string& first, const std::string& amenable_first,
                                 const std::string& second, const std::string& amenable_second,
                                 std::uint64_t seed) {
    const PartitionPair pair(f.model, find_partition(f, first), find_partition(f, second));
    const auto me = mirror_equivalence(pair, find_amenable(f, amenable_first), find_amenable(f, amenable_second),
                                       kOraclePoints, seed);
    const std::size_t n = f.model.dim(), c = pair.codim();

    Emission e;
    e.report = me.report;
    json& j = e.certificate;
    j = header(f, "mirror-equivalence");
    j["partitions"] = {{"first", first}, {"second", second}};
    j["amenable"] = {{"first", amenable_first}, {"second", amenable_second}};
    j["codim"] = c;
    j["chains"] = {{"first", steps_to_json(me.first.chain.map)}, {"second", steps_to_json(me.second.chain.map)}};
    j["steps"] = steps_to_json(me.phi.phi);
    j["embeddings"] = {
        {"first", {{"basis", matrix_json(me.first.basis())}, {"mirror", to_canonical(me.first.mirror)}}},
        {"second", {{"basis", matrix_json(me.second.basis())}, {"mirror", to_canonical(me.second.mirror)}}}};

    json ids = json::array();
    const auto w = superpotential(f.model);
    const MirrorResult* results[2] = {&me.first, &me.second};
    const char* tags[2] = {"chain", "chain'"};
    for (int k = 0; k < 2; ++k) {
        const auto& r = *results[k];
        const std::string t = tags[k];
        ids.push_back(identity(t + "*(W) = W~" + (k ? "'" : ""), w, r.pulled));
        const NefPartition& p = k ? pair.second() : pair.first();
        for (std::size_t i = 0; i < c; ++i) {
            ids.push_back(identity(t + "*(G_" + std::to_string(i + 1) + ") = z^v_s" + std::to_string(i + 1),
                                   partition_sum(f.model, p.parts[i]),
                                   LaurentPoly::monomial(r.basis().column_vec(i))));
        }
        ids.push_back(identity(std::string("restrict(W~") + (k ? "'" : "") + ") = " + (k ? "g" : "f"), r.pulled,
                               r.mirror));
    }
    ids.push_back(identity("phi*(W) = W", w, w));
    for (int i = 1; i <= static_cast<int>(c + 1); ++i) {
        ids.push_back(identity("phi*(G_" + std::to_string(i) + ") = G'_" + std::to_string(i),
                               partition_sum(f.model, pair.part(i)), partition_sum(f.model, pair.part_prime(i))));
    }
    ids.push_back(identity("psi*(W~) = W~'", me.first.pulled, me.second.pulled));
    for (std::size_t i = 0; i < c; ++i) {
        ids.push_back(identity("psi*(z^v_s" + std::to_string(i + 1) + ") = z^v_s'" + std::to_string(i + 1),
                               LaurentPoly::monomial(me.first.basis().column_vec(i)),
                               LaurentPoly::monomial(me.second.basis().column_vec(i))));
    }
    ids.push_back(identity("g = psi*f", me.first.mirror, me.second.mirror));
    j["identities"] = ids;

    j["volume"] = sample_block(n, 3 * kVolumeSamples + 8, seed + 3);
    j["volume"]["determinant"] = structural_determinant(me.psi);
    j["oracle"] = sample_block(n - c, 4 * kOraclePoints + 8, seed + 2);
    return e;
}

}  // namespace lgequiv
