#pragma once

#include <string>

#include "json.hpp"
#include "pairnorm/cex_search.hpp"

namespace pairnorm {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "pairnorm 0.1.0";

/// Matrix wire format: {"rows": r, "cols": c, "re": [[..]], "im": [[..]]}.
/// Doubles are emitted with shortest round-trip serialization, so decimal
/// round-trips are bit-exact.
json matrix_to_json(const CMat& m);
CMat matrix_from_json(const json& j);

json complex_to_json(cplx z);   // [re, im]
cplx complex_from_json(const json& j);

json vec2_to_json(Vec2 v);
Vec2 vec2_from_json(const json& j);

json pair_to_json(const MatrixPair& p);          // {"A1": .., "A2": ..}
MatrixPair pair_from_json(const json& j);

json vpair_to_json(const VPair& v);              // {"V1": .., "V2": ..}
VPair vpair_from_json(const json& j);

json search_config_to_json(const SearchConfig& c);
SearchConfig search_config_from_json(const json& j);

json canonical_class_to_json(const CanonicalClass& c);

json certificate_to_json(const Certificate& c);

/// Rebuilds the re-verifiable part of a certificate (pair, uv, values,
/// config, family parameters); the move chain is not persisted.
Certificate certificate_from_json(const json& j);

/// Parses a file; throws ParseError with "line N" position info.
json load_json_file(const std::string& path);

void write_json_file(const std::string& path, const json& j);

/// Envelope for one CLI invocation; round-trips losslessly.
struct Report {
    std::string command;
    json inputs = json::object();
    json outputs = json::object();
    json tolerances = json::object();
    double wall_time_ms = 0.0;
    bool stable = false;  // omit timing so identical runs are byte-identical

    json to_json() const;
};

}  // namespace pairnorm
