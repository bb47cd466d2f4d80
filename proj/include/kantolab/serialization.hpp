#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "kantolab/positive_maps.hpp"
#include "kantolab/psd_core.hpp"

namespace kantolab {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrices serialize as nested arrays of [re, im] pairs, row-major.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json window_to_json(const SpectralWindow& w);
SpectralWindow window_from_json(const Json& j);

Json map_to_json(const UnitalPositiveMap& map);
UnitalPositiveMap map_from_json(const Json& j);

Json pair_to_json(const PartialIsometryPair& pair);
PartialIsometryPair pair_from_json(const Json& j);

/// Atomic file write: writes to `<path>.tmp`, then renames over `path`.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace kantolab
