#include "kantolab/positive_maps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kantolab/random_matrix.hpp"

namespace kantolab {

namespace {
constexpr double kUnitalityTol = 1e-10;
}

const char* to_string(MapKind kind) {
  switch (kind) {
    case MapKind::kraus_mix: return "kraus_mix";
    case MapKind::pinching: return "pinching";
    case MapKind::schur_multiplier: return "schur_multiplier";
    case MapKind::vector_state: return "vector_state";
    case MapKind::partial_trace: return "partial_trace";
    case MapKind::transpose_compose: return "transpose_compose";
  }
  return "unknown";
}

const char* to_string(PositivityClass cls) {
  switch (cls) {
    case PositivityClass::positive: return "positive";
    case PositivityClass::two_positive: return "two_positive";
    case PositivityClass::completely_positive: return "completely_positive";
  }
  return "unknown";
}

MapKind map_kind_from_string(const std::string& s) {
  if (s == "kraus_mix") return MapKind::kraus_mix;
  if (s == "pinching") return MapKind::pinching;
  if (s == "schur_multiplier") return MapKind::schur_multiplier;
  if (s == "vector_state") return MapKind::vector_state;
  if (s == "partial_trace") return MapKind::partial_trace;
  if (s == "transpose_compose") return MapKind::transpose_compose;
  throw std::invalid_argument("unknown map kind: " + s);
}

void UnitalPositiveMap::validate_unital() const {
  const Matrix image = apply(Matrix::Identity(input_dim_, input_dim_));
  const double residual =
      (image - Matrix::Identity(output_dim_, output_dim_)).norm();
  if (!(residual <= kUnitalityTol)) {
    throw MapConstructionError("map is not unital: residual " +
                               std::to_string(residual));
  }
}

UnitalPositiveMap UnitalPositiveMap::kraus_mix(std::vector<Matrix> ops) {
  if (ops.empty()) {
    throw MapConstructionError("kraus_mix: at least one operator required");
  }
  const Index n = ops.front().rows();
  for (const Matrix& v : ops) {
    if (v.rows() != n || v.cols() != n) {
      throw DimensionError("kraus_mix: operators must be square, same size");
    }
  }
  UnitalPositiveMap map;
  map.kind_ = MapKind::kraus_mix;
  map.positivity_ = PositivityClass::completely_positive;
  map.input_dim_ = map.output_dim_ = n;
  map.kraus_ = std::move(ops);
  map.validate_unital();
  return map;
}

UnitalPositiveMap UnitalPositiveMap::pinching(
    Index dim, std::vector<std::vector<Index>> blocks) {
  std::vector<bool> seen(dim, false);
  for (const auto& block : blocks) {
    for (Index i : block) {
      if (i < 0 || i >= dim || seen[i]) {
        throw MapConstructionError(
            "pinching: blocks must partition the index set");
      }
      seen[i] = true;
    }
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    throw MapConstructionError("pinching: blocks must cover every index");
  }
  UnitalPositiveMap map;
  map.kind_ = MapKind::pinching;
  map.positivity_ = PositivityClass::completely_positive;
  map.input_dim_ = map.output_dim_ = dim;
  map.blocks_ = std::move(blocks);
  map.validate_unital();
  return map;
}

UnitalPositiveMap UnitalPositiveMap::schur_multiplier(
    const HermitianMatrix& c) {
  const Index n = c.dim();
  if (lambda_min(c) < -order_tolerance({operator_norm(c)})) {
    throw MapConstructionError("schur_multiplier: matrix must be PSD");
  }
  for (Index i = 0; i < n; ++i) {
    if (std::abs(c.mat()(i, i) - Complex(1.0)) > 1e-12) {
      throw MapConstructionError("schur_multiplier: diagonal must be one");
    }
  }
  UnitalPositiveMap map;
  map.kind_ = MapKind::schur_multiplier;
  map.positivity_ = PositivityClass::completely_positive;
  map.input_dim_ = map.output_dim_ = n;
  map.schur_ = c.mat();
  map.validate_unital();
  return map;
}

UnitalPositiveMap UnitalPositiveMap::vector_state(const Vector& x) {
  if (std::abs(x.norm() - 1.0) > 1e-12) {
    throw MapConstructionError("vector_state: vector must be unit");
  }
  UnitalPositiveMap map;
  map.kind_ = MapKind::vector_state;
  map.positivity_ = PositivityClass::completely_positive;
  map.input_dim_ = x.size();
  map.output_dim_ = 1;
  map.state_ = x;
  map.validate_unital();
  return map;
}

UnitalPositiveMap UnitalPositiveMap::partial_trace(Index dim_a, Index dim_b,
                                                   int traced_factor) {
  if (dim_a < 2 || dim_b < 2) {
    throw MapConstructionError("partial_trace: both factors need dim >= 2");
  }
  if (traced_factor != 0 && traced_factor != 1) {
    throw MapConstructionError("partial_trace: traced factor must be 0 or 1");
  }
  UnitalPositiveMap map;
  map.kind_ = MapKind::partial_trace;
  map.positivity_ = PositivityClass::completely_positive;
  map.input_dim_ = dim_a * dim_b;
  map.output_dim_ = traced_factor == 0 ? dim_b : dim_a;
  map.dim_a_ = dim_a;
  map.dim_b_ = dim_b;
  map.traced_factor_ = traced_factor;
  map.validate_unital();
  return map;
}

UnitalPositiveMap UnitalPositiveMap::transpose_compose(
    UnitalPositiveMap inner) {
  UnitalPositiveMap map;
  map.kind_ = MapKind::transpose_compose;
  map.positivity_ = PositivityClass::positive;  // transpose breaks 2-positivity
  map.input_dim_ = inner.input_dim();
  map.output_dim_ = inner.output_dim();
  map.inner_ = std::make_shared<UnitalPositiveMap>(std::move(inner));
  map.validate_unital();
  return map;
}

UnitalPositiveMap UnitalPositiveMap::identity(Index n) {
  return kraus_mix({Matrix::Identity(n, n)});
}

const UnitalPositiveMap& UnitalPositiveMap::inner() const {
  if (!inner_) {
    throw std::logic_error("inner(): map has no inner payload");
  }
  return *inner_;
}

Matrix UnitalPositiveMap::apply(const Matrix& t) const {
  if (t.rows() != input_dim_ || t.cols() != input_dim_) {
    throw DimensionError("apply: operand dimension mismatch");
  }
  switch (kind_) {
    case MapKind::kraus_mix: {
      Matrix out = Matrix::Zero(output_dim_, output_dim_);
      for (const Matrix& v : kraus_) out += v.adjoint() * t * v;
      return out;
    }
    case MapKind::pinching: {
      Matrix out = Matrix::Zero(output_dim_, output_dim_);
      for (const auto& block : blocks_) {
        for (Index i : block) {
          for (Index j : block) out(i, j) = t(i, j);
        }
      }
      return out;
    }
    case MapKind::schur_multiplier:
      return schur_.cwiseProduct(t);
    case MapKind::vector_state: {
      Matrix out(1, 1);
      out(0, 0) = (state_.adjoint() * t * state_)(0, 0);
      return out;
    }
    case MapKind::partial_trace: {
      const Index keep = output_dim_;
      const Index traced = traced_factor_ == 0 ? dim_a_ : dim_b_;
      Matrix out = Matrix::Zero(keep, keep);
      // Index (a, b) of the product space flattens to a * dim_b + b.
      if (traced_factor_ == 0) {
        for (Index b = 0; b < dim_b_; ++b)
          for (Index b2 = 0; b2 < dim_b_; ++b2)
            for (Index a = 0; a < dim_a_; ++a)
              out(b, b2) += t(a * dim_b_ + b, a * dim_b_ + b2);
      } else {
        for (Index a = 0; a < dim_a_; ++a)
          for (Index a2 = 0; a2 < dim_a_; ++a2)
            for (Index b = 0; b < dim_b_; ++b)
              out(a, a2) += t(a * dim_b_ + b, a2 * dim_b_ + b);
      }
      return out / static_cast<double>(traced);
    }
    case MapKind::transpose_compose:
      return inner_->apply(t.transpose());
  }
  throw std::logic_error("apply: unreachable");
}

UnitalPositiveMap unitalize_kraus(const std::vector<Matrix>& raw) {
  if (raw.empty()) {
    throw MapConstructionError("unitalize_kraus: empty operator list");
  }
  const Index n = raw.front().rows();
  Matrix s = Matrix::Zero(n, n);
  for (const Matrix& v : raw) {
    if (v.rows() != n || v.cols() != n) {
      throw DimensionError("unitalize_kraus: operators must be square");
    }
    s += v.adjoint() * v;
  }
  HermitianMatrix sh = hermitize(s);
  Eigensystem es = eig_h(sh);
  const double tol = order_tolerance({es.values(es.values.size() - 1)});
  if (!(es.values(0) > tol)) {
    throw MapConstructionError("unitalize_kraus: degenerate Kraus seed");
  }
  const Matrix s_inv_sqrt = es.vectors *
                            es.values.cwiseSqrt().cwiseInverse().asDiagonal() *
                            es.vectors.adjoint();
  std::vector<Matrix> ops;
  ops.reserve(raw.size());
  for (const Matrix& v : raw) ops.push_back(v * s_inv_sqrt);
  return UnitalPositiveMap::kraus_mix(std::move(ops));
}

bool map_kind_valid(MapKind kind, Index n) {
  if (n < 1) return false;
  if (kind == MapKind::partial_trace) {
    for (Index p = 2; p * p <= n; ++p) {
      if (n % p == 0) return true;
    }
    return false;
  }
  return true;
}

namespace {

Index smallest_factor(Index n) {
  for (Index p = 2; p * p <= n; ++p) {
    if (n % p == 0) return p;
  }
  return n;
}

}  // namespace

UnitalPositiveMap random_map(MapKind kind, Index n, std::uint64_t seed) {
  if (!map_kind_valid(kind, n)) {
    throw MapConstructionError(std::string("random_map: kind ") +
                               to_string(kind) +
                               " is invalid at dimension " + std::to_string(n));
  }
  Rng rng(seed);
  switch (kind) {
    case MapKind::kraus_mix: {
      const Index count = rng.uniform_int(1, 3);
      std::vector<Matrix> raw;
      for (Index i = 0; i < count; ++i) raw.push_back(ginibre(n, n, rng));
      return unitalize_kraus(raw);
    }
    case MapKind::pinching: {
      std::vector<Index> perm(n);
      std::iota(perm.begin(), perm.end(), Index{0});
      for (Index i = n - 1; i > 0; --i) {
        std::swap(perm[i], perm[rng.uniform_int(0, i)]);
      }
      const Index block_count = rng.uniform_int(1, n);
      std::vector<std::vector<Index>> blocks(block_count);
      for (Index i = 0; i < n; ++i) {
        // First indices seed each block, the rest land uniformly.
        const Index slot =
            i < block_count ? i : rng.uniform_int(0, block_count - 1);
        blocks[slot].push_back(perm[i]);
      }
      std::erase_if(blocks, [](const auto& b) { return b.empty(); });
      return UnitalPositiveMap::pinching(n, std::move(blocks));
    }
    case MapKind::schur_multiplier: {
      for (;;) {
        const Matrix g = ginibre(n, n, rng);
        Matrix c0 = g * g.adjoint();
        RealVector d = c0.diagonal().real();
        if (d.minCoeff() < 1e-8) continue;  // nearly vanishing row: resample
        const RealVector scale = d.cwiseSqrt().cwiseInverse();
        Matrix c = scale.asDiagonal() * c0 * scale.asDiagonal();
        c = 0.5 * (c + c.adjoint());
        for (Index i = 0; i < n; ++i) c(i, i) = 1.0;
        return UnitalPositiveMap::schur_multiplier(HermitianMatrix(c));
      }
    }
    case MapKind::vector_state:
      return UnitalPositiveMap::vector_state(random_unit_vector(n, rng));
    case MapKind::partial_trace: {
      const Index p = smallest_factor(n);
      const int traced = static_cast<int>(rng.uniform_int(0, 1));
      return UnitalPositiveMap::partial_trace(p, n / p, traced);
    }
    case MapKind::transpose_compose: {
      const MapKind inner_kinds[] = {MapKind::kraus_mix, MapKind::pinching,
                                     MapKind::schur_multiplier};
      const MapKind inner = inner_kinds[rng.uniform_int(0, 2)];
      return UnitalPositiveMap::transpose_compose(
          random_map(inner, n, rng.next_u64()));
    }
  }
  throw std::logic_error("random_map: unreachable");
}

bool check_two_positive_blocks(const UnitalPositiveMap& map, int trials,
                               std::uint64_t seed) {
  Rng rng(seed);
  const Index n = map.input_dim();
  for (int trial = 0; trial < trials; ++trial) {
    const HermitianMatrix z = random_psd(2 * n, rng.uniform_int(1, 2 * n), rng);
    const Matrix& zm = z.mat();
    const Matrix top_left = map.apply(zm.topLeftCorner(n, n));
    const Matrix top_right = map.apply(zm.topRightCorner(n, n));
    const Matrix bottom_left = map.apply(zm.bottomLeftCorner(n, n));
    const Matrix bottom_right = map.apply(zm.bottomRightCorner(n, n));
    const Index m = map.output_dim();
    Matrix block(2 * m, 2 * m);
    block.topLeftCorner(m, m) = top_left;
    block.topRightCorner(m, m) = top_right;
    block.bottomLeftCorner(m, m) = bottom_left;
    block.bottomRightCorner(m, m) = bottom_right;
    const HermitianMatrix image = hermitize(block);
    if (lambda_min(image) < -order_tolerance({operator_norm(image)})) {
      return false;
    }
  }
  return true;
}

bool verify_positive_sampled(const UnitalPositiveMap& map, int trials,
                             std::uint64_t seed) {
  Rng rng(seed);
  const Index n = map.input_dim();
  for (int trial = 0; trial < trials; ++trial) {
    const HermitianMatrix p = random_psd(n, rng.uniform_int(1, n), rng);
    const HermitianMatrix image = hermitize(map.apply(p.mat()));
    if (lambda_min(image) < -order_tolerance({operator_norm(image)})) {
      return false;
    }
  }
  if (at_least(map.positivity(), PositivityClass::two_positive)) {
    return check_two_positive_blocks(map, trials, mix64(seed ^ 0x2b0c1));
  }
  return true;
}

PartialIsometryPair random_partial_isometry_pair(Index n, Index rank_x,
                                                 Index rank_y,
                                                 std::uint64_t seed) {
  if (rank_x < 0 || rank_y < 0 || rank_x + rank_y > n) {
    throw MapConstructionError(
        "random_partial_isometry_pair: ranks must satisfy rx + ry <= n");
  }
  Rng rng(seed);
  const Matrix w = haar_unitary(n, rng);
  const Matrix u1 = haar_unitary(n, rng);
  const Matrix u2 = haar_unitary(n, rng);
  PartialIsometryPair pair;
  pair.rank_x = rank_x;
  pair.rank_y = rank_y;
  pair.X = Matrix::Zero(n, n);
  pair.Y = Matrix::Zero(n, n);
  if (rank_x > 0) pair.X = w.leftCols(rank_x) * u1.topRows(rank_x);
  if (rank_y > 0) pair.Y = w.middleCols(rank_x, rank_y) * u2.topRows(rank_y);
  validate_pair(pair);
  return pair;
}

void validate_pair(const PartialIsometryPair& pair) {
  const double tol = 1e-10;
  const Matrix& x = pair.X;
  const Matrix& y = pair.Y;
  if ((x * x.adjoint() * x - x).norm() > tol ||
      (y * y.adjoint() * y - y).norm() > tol) {
    throw MapConstructionError("partial isometry invariant violated");
  }
  if ((x * x.adjoint() * y * y.adjoint()).norm() > tol) {
    throw MapConstructionError("final projections are not orthogonal");
  }
}

}  // namespace kantolab
