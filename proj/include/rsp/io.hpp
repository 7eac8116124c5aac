#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "rsp/bloch_core.hpp"
#include "rsp/config.hpp"
#include "rsp/metrics.hpp"
#include "rsp/optimizer.hpp"
#include "rsp/protocol.hpp"

namespace rsp::io {

using nlohmann::json;

/// Malformed or unreadable input (maps to CLI exit code 1).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json to_json(const Vec3& v);
json to_json(const Mat3& m);
json to_json(const TwoQubitState& s);
/// 16 row-major [re, im] pairs.
json to_json(const DensityMatrix4& rho);
json to_json(const DecodingStrategy& d);
json to_json(const OptimizerConfig& cfg);
json to_json(const ClosedForms& c);
json to_json(const BetaSweepReport& r);
json to_json(const TEReport& r);
json to_json(const StateFigures& f);
json to_json(const StateComparison& c);

Vec3 vec3_from_json(const json& j);
Mat3 mat3_from_json(const json& j);
/// Either 16 [re, im] pairs or 4 rows of 4 pairs.
DensityMatrix4 density_matrix_from_json(const json& j);
/// {"a":[..],"b":[..],"E":[[..],[..],[..]]} or {"rho": <density matrix>}.
TwoQubitState state_from_json(const json& j);
DecodingStrategy decoding_from_json(const json& j);
/// Overlays the fields present in j onto base. Unknown keys are rejected.
OptimizerConfig config_from_json(const json& j, OptimizerConfig base = {});

json read_json_file(const std::string& path);

}  // namespace rsp::io
