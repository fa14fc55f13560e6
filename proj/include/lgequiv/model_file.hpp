#pragma once

// JSON model files and the built-in instance generators.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lgequiv/mirror.hpp"
#include "lgequiv/toric_model.hpp"

namespace lgequiv {

struct ModelFile {
    ToricModel model;
    std::map<std::string, NefPartition> partitions;
    std::map<std::string, AmenableCollection> amenable;
};

/// Throws InputError listing every problem found (syntax, ray lengths,
/// model validity, malformed or non-partition index sets).
ModelFile parse_model_file(const std::string& text);
ModelFile read_model_file(const std::string& path);

nlohmann::json to_json(const ModelFile& f);
std::string serialize(const ModelFile& f);

/// SHA-256 hex digest of the compact canonical dump of to_json(f).
std::string model_hash(const ModelFile& f);

const NefPartition& find_partition(const ModelFile& f, const std::string& name);
const AmenableCollection& find_amenable(const ModelFile& f, const std::string& name);

/// "pn N", "product pA pB ...", and the examples "p3-quadric", "p4-cubic",
/// "p5-22", "p2-conic". Throws InputError on unknown names or bad params.
ModelFile generate_builtin(const std::string& name, const std::vector<std::string>& params = {});

ToricModel projective_space(int n);
ToricModel product_of_projective_spaces(const std::vector<int>& dims);

}  // namespace lgequiv
