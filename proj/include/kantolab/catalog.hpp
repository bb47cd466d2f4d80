#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kantolab/positive_maps.hpp"
#include "kantolab/psd_core.hpp"
#include "kantolab/serialization.hpp"

namespace kantolab {

/// How a statement is expected to behave:
///  - theorem:     proved; a violation is a fatal finding.
///  - false_claim: known to fail; the engine hunts a counterexample.
///  - open:        conjectured; the engine accumulates evidence.
///  - conditional: follows from the open conjecture; evidence channel.
///  - external:    cited result verified numerically here.
enum class StatementClass { theorem, false_claim, open, conditional, external };

/// Margin semantics: lambda_min(RHS - LHS) for order claims, bound - value
/// for norm claims, and route agreement for equivalence claims.
enum class ValueKind { order, norm, equivalence };

const char* to_string(StatementClass cls);

struct StatementInfo {
  std::string id;
  StatementClass cls = StatementClass::theorem;
  ValueKind value_kind = ValueKind::order;
  PositivityClass map_requirement = PositivityClass::positive;
  bool needs_window = false;  // A is sampled inside a spectral window
  bool needs_A = false;
  bool needs_B = false;
  bool needs_map = false;
  bool needs_x = false;
  bool needs_y = false;
  bool needs_pair = false;
  bool needs_ST = false;  // two free square matrices S, T
  bool needs_t = false;   // scalar threshold
  std::string title;
  std::string formula;
};

/// The fixed, closed registry of the thirty catalog statements S01..S30.
const std::vector<StatementInfo>& statement_registry();
bool statement_known(const std::string& id);
/// Registry row for `id`; throws std::invalid_argument on unknown ids.
const StatementInfo& statement_requirements(const std::string& id);

/// One evaluation instance. Statements declare which slots they read; the
/// generator fills exactly those.
struct InstanceBundle {
  std::uint64_t seed = 0;
  Index dim = 0;
  std::optional<SpectralWindow> w;
  std::optional<HermitianMatrix> A;
  std::optional<HermitianMatrix> B;
  std::optional<UnitalPositiveMap> map;
  std::optional<Vector> x;
  std::optional<Vector> y;
  std::optional<PartialIsometryPair> pair;
  std::optional<Matrix> S;
  std::optional<Matrix> T;
  std::optional<double> t;
};

Json bundle_to_json(const InstanceBundle& inst);
InstanceBundle bundle_from_json(const Json& j);

/// Evaluated record of one statement on one instance. `rejected` marks
/// instances the statement could not be evaluated on (singular compressions,
/// degenerate windows); a rejection is not a verdict.
struct Certificate {
  std::string statement;
  std::uint64_t seed = 0;
  Index dim = 0;
  std::string map_kind = "none";
  double margin = 0.0;
  double ratio = 0.0;
  double tolerance = 0.0;
  bool holds = false;
  bool pinv_used = false;
  bool rejected = false;
  std::string reject_reason;
};

/// Heavy companion of a Certificate: the evaluated sides and the full
/// serialized instance, enough to re-verify independently.
struct CertificateDetail {
  Certificate cert;
  Json lhs_value;
  Json rhs_value;
  Json instance;
};

/// The jsonl projection: exactly the fields {statement, seed, dim, map_kind,
/// margin, ratio, verdict, tolerance, pinv_used}, in that order.
Json certificate_to_jsonl(const Certificate& cert);

/// Evaluates one statement on one instance. Pure function of its inputs.
/// `tol_scale` is the relative tolerance prefactor (1e-9 by default; 1e-12
/// for independent re-verification of counterexamples). Missing slots or a
/// too-weak map class throw std::invalid_argument.
Certificate evaluate(const StatementInfo& info, const InstanceBundle& inst,
                     double tol_scale = 1e-9);
Certificate evaluate(const std::string& id, const InstanceBundle& inst,
                     double tol_scale = 1e-9);
CertificateDetail evaluate_detail(const StatementInfo& info,
                                  const InstanceBundle& inst,
                                  double tol_scale = 1e-9);

/// Gamma = Phi(X*AY) Phi(Y*AY)^+ Phi(Y*AX) Phi(X*AX)^+, the operator probed
/// by S27/S28/S29. Assembled on the support of Phi(X*AX).
struct GammaResult {
  bool rejected = false;
  std::string reject_reason;
  Matrix gamma;  // full-space operator (zero off the support)
  bool pinv_used = false;
};
GammaResult assemble_gamma(const InstanceBundle& inst);

}  // namespace kantolab
