#include "lgequiv/model_file.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace lgequiv {

using nlohmann::json;

namespace {

bool is_int_array(const json& j) {
    if (!j.is_array()) return false;
    for (const auto& x : j) {
        if (!x.is_number_integer()) return false;
    }
    return true;
}

ExpVec to_vec(const json& j) {
    ExpVec v;
    for (const auto& x : j) v.push_back(x.get<std::int64_t>());
    return v;
}

}  // namespace

ModelFile parse_model_file(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed model file: ") + e.what());
    }
    std::vector<std::string> errors;
    auto fail = [&]() {
        std::string msg = "invalid model file:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw InputError(msg);
    };
    if (!doc.is_object()) {
        errors.push_back("top level must be an object");
        fail();
    }
    if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<std::int64_t>() < 1) {
        errors.push_back("\"dim\" must be a positive integer");
    }
    if (!doc.contains("rays") || !doc["rays"].is_array()) errors.push_back("\"rays\" must be an array");
    if (!errors.empty()) fail();

    const auto n = doc["dim"].get<std::size_t>();
    std::vector<ExpVec> rays;
    for (std::size_t j = 0; j < doc["rays"].size(); ++j) {
        const auto& r = doc["rays"][j];
        if (!is_int_array(r)) {
            errors.push_back("ray " + std::to_string(j + 1) + " is not an integer array");
        } else if (r.size() != n) {
            errors.push_back("ray " + std::to_string(j + 1) + " has length " + std::to_string(r.size()) +
                             ", expected " + std::to_string(n));
        } else {
            rays.push_back(to_vec(r));
        }
    }
    if (!errors.empty()) fail();

    ModelFile f;
    f.model = ToricModel(n, rays);
    for (const auto& v : validate_model(f.model).violations) errors.push_back("model: " + v);

    if (doc.contains("partitions")) {
        if (!doc["partitions"].is_object()) errors.push_back("\"partitions\" must be an object");
        else {
            for (const auto& [name, parts] : doc["partitions"].items()) {
                const std::string tag = "partition '" + name + "': ";
                if (!parts.is_array()) {
                    errors.push_back(tag + "must be an array of index arrays");
                    continue;
                }
                NefPartition p;
                bool shape_ok = true;
                for (const auto& part : parts) {
                    if (!is_int_array(part)) {
                        errors.push_back(tag + "parts must be integer arrays");
                        shape_ok = false;
                        break;
                    }
                    IndexSet s;
                    for (const auto& x : part) {
                        if (!s.insert(x.get<int>()).second) {
                            errors.push_back(tag + "index " + std::to_string(x.get<int>()) + " repeated within a part");
                        }
                    }
                    p.parts.push_back(std::move(s));
                }
                if (!shape_ok) continue;
                for (const auto& v : validate_partition(f.model, p).violations) errors.push_back(tag + v);
                f.partitions.emplace(name, std::move(p));
            }
        }
    }
    if (doc.contains("amenable")) {
        if (!doc["amenable"].is_object()) errors.push_back("\"amenable\" must be an object");
        else {
            for (const auto& [name, a] : doc["amenable"].items()) {
                const std::string tag = "amenable '" + name + "': ";
                if (!a.is_object() || !a.contains("vectors") || !a.contains("distinguished") ||
                    !a["vectors"].is_array() || !is_int_array(a["distinguished"])) {
                    errors.push_back(tag + "needs \"vectors\" and \"distinguished\" arrays");
                    continue;
                }
                AmenableCollection c;
                for (const auto& u : a["vectors"]) {
                    if (!is_int_array(u) || u.size() != n) {
                        errors.push_back(tag + "vectors must be integer arrays of length " + std::to_string(n));
                        break;
                    }
                    c.vectors.push_back(to_vec(u));
                }
                for (const auto& s : a["distinguished"]) c.distinguished.push_back(s.get<int>());
                if (c.vectors.size() != c.distinguished.size()) {
                    errors.push_back(tag + "vectors and distinguished indices differ in number");
                }
                f.amenable.emplace(name, std::move(c));
            }
        }
    }
    if (!errors.empty()) fail();
    return f;
}

ModelFile read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model_file(ss.str());
}

json to_json(const ModelFile& f) {
    json doc;
    doc["dim"] = f.model.dim();
    doc["rays"] = json::array();
    for (const auto& r : f.model.rays()) doc["rays"].push_back(r);
    doc["partitions"] = json::object();
    for (const auto& [name, p] : f.partitions) {
        json parts = json::array();
        for (const auto& s : p.parts) parts.push_back(std::vector<int>(s.begin(), s.end()));
        doc["partitions"][name] = parts;
    }
    if (!f.amenable.empty()) {
        doc["amenable"] = json::object();
        for (const auto& [name, a] : f.amenable) {
            doc["amenable"][name] = {{"vectors", a.vectors}, {"distinguished", a.distinguished}};
        }
    }
    return doc;
}

std::string serialize(const ModelFile& f) { return to_json(f).dump(2) + "\n"; }

std::string model_hash(const ModelFile& f) {
    const std::string canonical = to_json(f).dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(canonical.data(), canonical.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw InternalError("SHA-256 digest failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

const NefPartition& find_partition(const ModelFile& f, const std::string& name) {
    auto it = f.partitions.find(name);
    if (it == f.partitions.end()) throw InputError("no partition named '" + name + "'");
    return it->second;
}

const AmenableCollection& find_amenable(const ModelFile& f, const std::string& name) {
    auto it = f.amenable.find(name);
    if (it == f.amenable.end()) throw InputError("no amenable collection named '" + name + "'");
    return it->second;
}

ToricModel projective_space(int n) { return product_of_projective_spaces({n}); }

ToricModel product_of_projective_spaces(const std::vector<int>& dims) {
    std::size_t total = 0;
    for (int a : dims) {
        if (a < 1) throw InputError("projective space dimension must be at least 1, got " + std::to_string(a));
        total += static_cast<std::size_t>(a);
    }
    std::vector<ExpVec> rays;
    std::size_t offset = 0;
    for (int a : dims) {
        ExpVec neg(total, 0);
        for (int i = 0; i < a; ++i) {
            rays.push_back(unit_vector(total, offset + static_cast<std::size_t>(i)));
            neg[offset + static_cast<std::size_t>(i)] = -1;
        }
        rays.push_back(neg);
        offset += static_cast<std::size_t>(a);
    }
    return ToricModel(total, rays);
}

ModelFile generate_builtin(const std::string& name, const std::vector<std::string>& params) {
    auto need = [&](std::size_t k) {
        if (params.size() != k) {
            throw InputError("generator '" + name + "' takes " + std::to_string(k) + " parameter(s), got " +
                             std::to_string(params.size()));
        }
    };
    ModelFile f;
    if (name == "pn") {
        need(1);
        int n = 0;
        try {
            n = std::stoi(params[0]);
        } catch (const std::exception&) {
            throw InputError("pn: '" + params[0] + "' is not an integer");
        }
        if (n < 1) throw InputError("pn: dimension must be at least 1, got " + std::to_string(n));
        f.model = projective_space(n);
    } else if (name == "product") {
        if (params.empty()) throw InputError("product: list factors such as p1 p2");
        std::vector<int> dims;
        for (const auto& p : params) {
            if (p.size() < 2 || p[0] != 'p' || p.find_first_not_of("0123456789", 1) != std::string::npos) {
                throw InputError("product: factor '" + p + "' is not of the form pN");
            }
            dims.push_back(std::stoi(p.substr(1)));
        }
        f.model = product_of_projective_spaces(dims);
    } else if (name == "p3-quadric") {
        need(0);
        f.model = projective_space(3);
        f.partitions["first"] = {{{1, 2}, {3, 4}}};
        f.partitions["second"] = {{{3, 4}, {1, 2}}};
    } else if (name == "p4-cubic") {
        need(0);
        f.model = projective_space(4);
        f.partitions["first"] = {{{1, 2, 3}, {4, 5}}};
        f.partitions["second"] = {{{1, 4, 5}, {2, 3}}};
        f.amenable["first"] = {{{-1, -1, -1, 0}}, {1}};
        f.amenable["second"] = {{{-1, 1, 2, -1}}, {1}};
    } else if (name == "p5-22") {
        need(0);
        f.model = projective_space(5);
        f.partitions["first"] = {{{1, 2}, {3, 4}, {5, 6}}};
        f.partitions["second"] = {{{1, 6}, {2, 5}, {3, 4}}};
        f.amenable["first"] = {{{-1, -1, 0, 0, 0}, {0, 0, -1, -1, 0}}, {1, 3}};
        f.amenable["second"] = {{{-1, 0, 1, 1, 0}, {0, -1, 1, 1, -1}}, {1, 2}};
    } else if (name == "p2-conic") {
        need(0);
        f.model = projective_space(2);
        f.partitions["first"] = {{{1, 2}, {3}}};
        f.amenable["first"] = {{{-1, -1}}, {1}};
    } else {
        throw InputError("unknown generator '" + name + "' (known: pn, product, p3-quadric, p4-cubic, p5-22, p2-conic)");
    }
    return f;
}

}  // namespace lgequiv
