#include "kantolab/serialization.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace kantolab {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("matrix: expected a non-empty array of rows");
  }
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j.at(i);
    if (static_cast<Index>(row.size()) != cols) {
      throw ParseError("matrix: ragged rows");
    }
    for (Index c = 0; c < cols; ++c) {
      const Json& entry = row.at(c);
      if (!entry.is_array() || entry.size() != 2) {
        throw ParseError("matrix: entries must be [re, im] pairs");
      }
      m(i, c) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
    }
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) {
    out.push_back(Json::array({v(i).real(), v(i).imag()}));
  }
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("vector: expected an array");
  Vector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i) {
    const Json& entry = j.at(i);
    if (!entry.is_array() || entry.size() != 2) {
      throw ParseError("vector: entries must be [re, im] pairs");
    }
    v(i) = Complex(entry.at(0).get<double>(), entry.at(1).get<double>());
  }
  return v;
}

Json window_to_json(const SpectralWindow& w) {
  return Json{{"m", w.m}, {"M", w.M}};
}

SpectralWindow window_from_json(const Json& j) {
  return SpectralWindow(j.at("m").get<double>(), j.at("M").get<double>());
}

Json map_to_json(const UnitalPositiveMap& map) {
  Json out;
  out["kind"] = to_string(map.kind());
  switch (map.kind()) {
    case MapKind::kraus_mix: {
      Json ops = Json::array();
      for (const Matrix& v : map.kraus_ops()) ops.push_back(matrix_to_json(v));
      out["operators"] = std::move(ops);
      break;
    }
    case MapKind::pinching: {
      out["dim"] = map.input_dim();
      out["blocks"] = map.blocks();
      break;
    }
    case MapKind::schur_multiplier:
      out["matrix"] = matrix_to_json(map.schur_matrix());
      break;
    case MapKind::vector_state:
      out["state"] = vector_to_json(map.state());
      break;
    case MapKind::partial_trace:
      out["dim_a"] = map.factor_a();
      out["dim_b"] = map.factor_b();
      out["traced_factor"] = map.traced_factor();
      break;
    case MapKind::transpose_compose:
      out["inner"] = map_to_json(map.inner());
      break;
  }
  return out;
}

UnitalPositiveMap map_from_json(const Json& j) {
  const MapKind kind = map_kind_from_string(j.at("kind").get<std::string>());
  switch (kind) {
    case MapKind::kraus_mix: {
      std::vector<Matrix> ops;
      for (const Json& op : j.at("operators")) {
        ops.push_back(matrix_from_json(op));
      }
      return UnitalPositiveMap::kraus_mix(std::move(ops));
    }
    case MapKind::pinching:
      return UnitalPositiveMap::pinching(
          j.at("dim").get<Index>(),
          j.at("blocks").get<std::vector<std::vector<Index>>>());
    case MapKind::schur_multiplier:
      return UnitalPositiveMap::schur_multiplier(
          hermitize(matrix_from_json(j.at("matrix"))));
    case MapKind::vector_state:
      return UnitalPositiveMap::vector_state(vector_from_json(j.at("state")));
    case MapKind::partial_trace:
      return UnitalPositiveMap::partial_trace(j.at("dim_a").get<Index>(),
                                              j.at("dim_b").get<Index>(),
                                              j.at("traced_factor").get<int>());
    case MapKind::transpose_compose:
      return UnitalPositiveMap::transpose_compose(map_from_json(j.at("inner")));
  }
  throw ParseError("map: unknown kind");
}

Json pair_to_json(const PartialIsometryPair& pair) {
  return Json{{"X", matrix_to_json(pair.X)},
              {"Y", matrix_to_json(pair.Y)},
              {"rank_x", pair.rank_x},
              {"rank_y", pair.rank_y}};
}

PartialIsometryPair pair_from_json(const Json& j) {
  PartialIsometryPair pair;
  pair.X = matrix_from_json(j.at("X"));
  pair.Y = matrix_from_json(j.at("Y"));
  pair.rank_x = j.at("rank_x").get<Index>();
  pair.rank_y = j.at("rank_y").get<Index>();
  validate_pair(pair);
  return pair;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + tmp);
    }
    out << contents;
    out.flush();
    if (!out) {
      throw std::runtime_error("write failed: " + tmp);
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace kantolab
