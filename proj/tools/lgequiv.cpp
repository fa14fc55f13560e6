#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lgequiv/certificate.hpp"
#include "lgequiv/equivalence.hpp"
#include "lgequiv/mirror.hpp"
#include "lgequiv/model_file.hpp"

using namespace lgequiv;

namespace {

void write_json(const nlohmann::json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << "\n";
    std::cout << "wrote " << path << "\n";
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
}

int finish(const VerificationReport& r) {
    std::cout << r.summary();
    const auto failed = r.failures().size();
    std::cout << (failed ? "FAILED: " + std::to_string(failed) + " of " : "verified: all ")
              << r.items.size() << " checks" << (failed ? "" : " passed") << "\n";
    return failed ? 2 : 0;
}

int cmd_validate(const std::string& file) {
    const auto f = read_model_file(file);
    std::cout << "model: rank " << f.model.dim() << ", " << f.model.num_rays() << " rays\n";
    for (const auto& [name, p] : f.partitions) {
        std::cout << "partition " << name << ":";
        for (const auto& s : p.parts) std::cout << " " << to_string(s);
        std::cout << "\n";
    }
    for (const auto& [name, a] : f.amenable) std::cout << "amenable " << name << ": " << a.vectors.size() << " vectors\n";
    std::cout << "hash " << model_hash(f) << "\n";
    return 0;
}

int cmd_mirror(const std::string& file, const std::string& part, const std::string& amen, const std::string& second,
               const std::string& second_amen, const std::string& out, std::uint64_t seed) {
    const auto f = read_model_file(file);
    const auto& p = find_partition(f, part);
    const auto r = extract_mirror(f.model, p, find_amenable(f, amen));
    std::cout << "mirror: " << pretty(r.mirror) << "\n";
    std::cout << "canonical: " << to_canonical(r.mirror) << "\n";
    std::cout << "basis (columns):\n" << r.basis().str() << "\n";
    VerificationReport rep = check_mirror(f.model, p, r, kOraclePoints, seed);
    if (second.empty()) return finish(rep);
    if (second_amen.empty()) throw InputError("--second needs --second-amenable");
    const auto e = emit_mirror_equivalence(f, part, amen, second, second_amen, seed);
    write_json(e.certificate, out);
    return finish(e.report);
}

int cmd_selftest() {
    VerificationReport r;
    r.append(check_hilly_reversal(8, 4));
    const std::vector<std::string> gens{"p3-quadric", "p4-cubic", "p5-22"};
    for (const auto& g : gens) {
        const auto f = generate_builtin(g);
        const PartitionPair pair(f.model, f.partitions.at("first"), f.partitions.at("second"));
        const auto res = assemble_phi(pair);
        r.append(res.report, g + ": ");
        for (const auto& c : res.components) {
            const auto x = crosscheck_combinatorics(pair, c);
            std::size_t bad = x.failures().size();
            r.add(g + ": closed forms over word classes (" + std::to_string(x.items.size()) + " checks)", bad == 0,
                  bad ? x.failures().front().name : "");
        }
    }
    return finish(r);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Birational equivalence of Landau-Ginzburg models of toric complete intersections"};
    app.require_subcommand(1);

    std::string file, first, second, out, cert, amen, second_amen, gen_name;
    std::vector<std::string> gen_params;
    std::uint64_t seed = 20240601;

    auto* validate = app.add_subcommand("validate", "Parse and validate a model file");
    validate->add_option("file", file)->required();

    auto* equiv = app.add_subcommand("equivalence", "Construct and certify the map between two partitions");
    equiv->add_option("file", file)->required();
    equiv->add_option("--first", first)->required();
    equiv->add_option("--second", second)->required();
    equiv->add_option("--out", out, "certificate path (stdout if omitted)");
    equiv->add_option("--seed", seed);

    auto* mirror = app.add_subcommand("mirror", "Extract the mirror Laurent polynomial");
    mirror->add_option("file", file)->required();
    mirror->add_option("--partition", first)->required();
    mirror->add_option("--amenable", amen)->required();
    mirror->add_option("--second", second, "second partition for a mirror equivalence certificate");
    mirror->add_option("--second-amenable", second_amen);
    mirror->add_option("--out", out);
    mirror->add_option("--seed", seed);

    auto* certify = app.add_subcommand("certify", "Replay a certificate against a model file");
    certify->add_option("file", file)->required();
    certify->add_option("certificate", cert)->required();

    auto* gen = app.add_subcommand("gen", "Print a built-in model file");
    gen->add_option("name", gen_name)->required();
    gen->add_option("params", gen_params);
    gen->add_option("--out", out);

    auto* selftest = app.add_subcommand("selftest", "Combinatorial cross-checks on the built-in examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*validate) return cmd_validate(file);
        if (*equiv) {
            const auto f = read_model_file(file);
            const auto e = emit_equivalence(f, first, second, seed);
            write_json(e.certificate, out);
            std::cout << e.certificate["steps"].size() << " steps\n";
            return finish(e.report);
        }
        if (*mirror) return cmd_mirror(file, first, amen, second, second_amen, out, seed);
        if (*certify) return finish(verify_certificate(read_model_file(file), read_json(cert)));
        if (*gen) {
            const auto f = generate_builtin(gen_name, gen_params);
            if (out.empty()) {
                std::cout << serialize(f);
            } else {
                std::ofstream o(out);
                if (!o) throw InputError("cannot write " + out);
                o << serialize(f);
            }
            return 0;
        }
        if (*selftest) return cmd_selftest();
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const VerificationError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
