#pragma once

// Certificates: self-contained JSON records of a constructed map, the
// identities it satisfies and the sample points used for volume checks.
// Replay goes through an independent implementation that only shares the
// exact algebra core with the constructors.

#include <string>

#include <json.hpp>

#include "lgequiv/model_file.hpp"
#include "lgequiv/report.hpp"

namespace lgequiv {

struct Emission {
    nlohmann::json certificate;
    VerificationReport report;  // constructor-side verdict
};

/// Exactly 20 usable points are required by replay; this is also the
/// constructor's sample count.
inline constexpr std::size_t kVolumeSamples = 20;
inline constexpr std::size_t kOraclePoints = 10;

Emission emit_equivalence(const ModelFile& f, const std::string& first, const std::string& second,
                          std::uint64_t seed = 20240601);

Emission emit_mirror_equivalence(const ModelFile& f, const std::string& first, const std::string& amenable_first,
                                 const std::string& second, const std::string& amenable_second,
                                 std::uint64_t seed = 20240601);

nlohmann::json steps_to_json(const BirationalMap& m);

/// Replays a certificate from its serialized data only. Throws InputError
/// when the model hash differs or the document is malformed; identity
/// failures are reported.
VerificationReport verify_certificate(const ModelFile& f, const nlohmann::json& certificate);

}  // namespace lgequiv
