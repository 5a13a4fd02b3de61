#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "selectra/engines.hpp"
#include "selectra/random.hpp"
#include "selectra/relations.hpp"

namespace selectra {

/// Deterministic source of probe points.
///
/// Base points: the barycenter of every cell, then `count` random rational
/// points of |K|. Value probes for a body: its interior point, closure
/// generators pulled towards it by 2^{−resolution} (open bodies) or taken as
/// is (closed bodies), midpoints of generator pairs, and axis rays for
/// unbounded bodies.
struct Sampler {
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  int resolution = 10;

  std::vector<Vec> base_points(const SimplicialComplex& k) const;
  std::vector<Vec> value_probes(const ConvexBody& body) const;
};

enum class Strength {
  Exact,    // the verdict is a proof (certificate or validated witness)
  Sampled,  // "holds" only means no witness was found
};

struct CheckResult {
  std::string name;
  bool passed = true;
  Strength strength = Strength::Exact;
  /// Concrete failing data (cell, point, value); empty on success.
  std::string witness;
  /// Sorted key → canonical value string.
  std::map<std::string, std::string> metrics;
};

/// Ordered list of checks. JSON and text renderings are pure functions of
/// the checks; wall-clock timings are kept apart and only shown on request.
struct Report {
  std::string title;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, double>> timings;

  bool passed() const;
  void add(CheckResult c) { checks.push_back(std::move(c)); }
  void merge(const Report& other);
  std::string to_json() const;
  std::string to_text(bool with_timings = false) const;
};

struct OracleWitness {
  CellId cell;    // carrier of x
  CellId coface;  // cell holding the escaping point
  Vec x;
  Vec y;
  Vec x_escape;  // point of the coface at distance ≤ 2^{−resolution} from x
  /// Open oracle: (x_escape, y_escape) ∉ Φ with both within `radius` of
  /// (x, y). l.s.c. oracle: y_escape = y and the open box of this radius
  /// around y meets Φ(x) but misses Φ(x_escape).
  Vec y_escape;
  Rational radius;
};

struct OracleVerdict {
  bool holds = true;
  std::optional<OracleWitness> witness;
  std::size_t pairs_tested = 0;
  /// Pairs that neither produced a witness nor a certified box.
  std::size_t inconclusive = 0;
};

/// Openness of Φ ⊆ |K|×ℝⁿ probed directly: for every sampled (x, y) with y
/// in Φ(x), look for a box around (x, y) inside Φ, shrinking down to the
/// sampler resolution. A witness is only reported after exact re-validation.
OracleVerdict oracle_open(const ConvexCellRelation& phi, const Sampler& sampler);
/// Lower semicontinuity probed through open boxes U around value probes: a
/// witness is x with Φ(x) ∩ U ≠ ∅ next to points x' with Φ(x') ∩ U = ∅.
OracleVerdict oracle_lsc(const ConvexCellRelation& phi, const Sampler& sampler);

/// f on r.fine against Φ on r.coarse. Parents are recomputed from the fine
/// geometry. Errors: MeshMismatch.
Report check_selection(const PLMap& f, const Refinement& r, const ConvexCellRelation& phi,
                       const Rational& tolerance = 0);
Report check_pou(const PartitionOfUnity& pou, const IndexedCover& omega);
/// Memberwise containment, cover completeness and order (≤ order_bound when
/// given). Errors: IndexMismatch, MeshMismatch.
Report check_refinement(const IndexedCover& phi, const IndexedCover& omega,
                        std::optional<std::size_t> order_bound = std::nullopt);
/// Same, for candidate members that need not cover.
Report check_refinement(const std::vector<OpenCellSet>& phi, const IndexedCover& omega,
                        std::optional<std::size_t> order_bound = std::nullopt);
/// Strict sandwich on every cell plus carrier comparisons at sampled points.
Report check_insertion(const PLMap& f, const Refinement& r, const ScalarCellField& xi, const ScalarCellField& eta,
                       const Sampler& sampler);

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t instances = 10;
  std::size_t samples = 200;
  /// Replace the fattening family by perturbed (mostly non-l.s.c.) relations.
  bool adversarial = false;
};

/// Seeded families exercising the theorem-level equivalences: fattening,
/// bounds round trip, selections of open convex relations, composition with
/// the order relation, and classifier/oracle agreement.
Report equivalence_suite(const SuiteOptions& options);

}  // namespace selectra
