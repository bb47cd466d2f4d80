#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kantolab/psd_core.hpp"
#include "kantolab/rng.hpp"

namespace kantolab {

struct MapConstructionError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class MapKind {
  kraus_mix,
  pinching,
  schur_multiplier,
  vector_state,
  partial_trace,
  transpose_compose,
};

/// positive < two_positive < completely_positive.
enum class PositivityClass { positive, two_positive, completely_positive };

const char* to_string(MapKind kind);
const char* to_string(PositivityClass cls);
MapKind map_kind_from_string(const std::string& s);

inline bool at_least(PositivityClass have, PositivityClass need) {
  return static_cast<int>(have) >= static_cast<int>(need);
}

/// A unital positive linear map Phi. Every constructor validates unitality
/// (||Phi(I) - I|| <= 1e-10) and the payload invariants of its kind.
///
/// All kinds except transpose_compose are completely positive; composing with
/// the transpose demotes the class to merely positive, which is exactly the
/// boundary the 2-positive statements need a witness for.
class UnitalPositiveMap {
 public:
  static UnitalPositiveMap kraus_mix(std::vector<Matrix> ops);
  static UnitalPositiveMap pinching(Index dim,
                                    std::vector<std::vector<Index>> blocks);
  static UnitalPositiveMap schur_multiplier(const HermitianMatrix& c);
  static UnitalPositiveMap vector_state(const Vector& x);
  /// Normalized partial trace on C^{da} (x) C^{db}; traced_factor selects
  /// which tensor factor is traced out (0 = left, 1 = right).
  static UnitalPositiveMap partial_trace(Index dim_a, Index dim_b,
                                         int traced_factor);
  static UnitalPositiveMap transpose_compose(UnitalPositiveMap inner);
  static UnitalPositiveMap identity(Index n);

  Matrix apply(const Matrix& t) const;

  Index input_dim() const { return input_dim_; }
  Index output_dim() const { return output_dim_; }
  MapKind kind() const { return kind_; }
  PositivityClass positivity() const { return positivity_; }

  // Payload accessors (serialization and refinement).
  const std::vector<Matrix>& kraus_ops() const { return kraus_; }
  const std::vector<std::vector<Index>>& blocks() const { return blocks_; }
  const Matrix& schur_matrix() const { return schur_; }
  const Vector& state() const { return state_; }
  Index factor_a() const { return dim_a_; }
  Index factor_b() const { return dim_b_; }
  int traced_factor() const { return traced_factor_; }
  const UnitalPositiveMap& inner() const;

 private:
  UnitalPositiveMap() = default;
  void validate_unital() const;

  MapKind kind_ = MapKind::kraus_mix;
  PositivityClass positivity_ = PositivityClass::completely_positive;
  Index input_dim_ = 0;
  Index output_dim_ = 0;

  std::vector<Matrix> kraus_;
  std::vector<std::vector<Index>> blocks_;
  Matrix schur_;
  Vector state_;
  Index dim_a_ = 0, dim_b_ = 0;
  int traced_factor_ = 0;
  std::shared_ptr<UnitalPositiveMap> inner_;
};

/// Manufactures a unital Kraus map from arbitrary seed operators:
/// W_i = V_i S^{-1/2} with S = sum V_i* V_i. Throws MapConstructionError if
/// S is singular.
UnitalPositiveMap unitalize_kraus(const std::vector<Matrix>& raw);

/// Random valid map of the requested kind at dimension n. partial_trace
/// requires composite n.
UnitalPositiveMap random_map(MapKind kind, Index n, std::uint64_t seed);

/// Kinds constructible at dimension n.
bool map_kind_valid(MapKind kind, Index n);

/// Samples apply(P) for random PSD P and checks positivity; for maps declared
/// at least 2-positive, additionally runs the 2x2 block criterion.
bool verify_positive_sampled(const UnitalPositiveMap& map, int trials,
                             std::uint64_t seed);

/// The 2x2 block criterion alone: PSD [[P, Q], [Q*, R]] must map to a PSD
/// [[Phi(P), Phi(Q)], [Phi(Q*), Phi(R)]]. Returns false if a witness against
/// 2-positivity is found within `trials` samples.
bool check_two_positive_blocks(const UnitalPositiveMap& map, int trials,
                               std::uint64_t seed);

/// Pair of square partial isometries with mutually orthogonal final spaces.
struct PartialIsometryPair {
  Matrix X;
  Matrix Y;
  Index rank_x = 0;
  Index rank_y = 0;
};

/// Haar-random pair: X = W E1 U1, Y = W E2 U2 with E1, E2 projections onto
/// disjoint coordinate blocks of sizes rank_x, rank_y.
PartialIsometryPair random_partial_isometry_pair(Index n, Index rank_x,
                                                 Index rank_y,
                                                 std::uint64_t seed);

/// Validates the partial-isometry invariants; throws MapConstructionError on
/// violation beyond tolerance.
void validate_pair(const PartialIsometryPair& pair);

}  // namespace kantolab
