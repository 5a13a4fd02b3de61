#include "selectra/verification.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "json.hpp"
#include "selectra/errors.hpp"
#include "selectra/generators.hpp"

namespace selectra {

// ---------------------------------------------------------------------------
// Sampler

std::vector<Vec> Sampler::base_points(const SimplicialComplex& k) const {
  std::vector<Vec> out;
  out.reserve(k.num_cells() + count);
  for (CellId c = 0; c < k.num_cells(); ++c) out.push_back(k.barycenter(c));
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_point(rng, k));
  return out;
}

std::vector<Vec> Sampler::value_probes(const ConvexBody& body) const {
  const Rational pull = pow2(-resolution);
  const Vec c = interior_point(body);
  const std::size_t n = c.size();
  const bool open = body.is_open();
  std::vector<Vec> out{c};
  auto toward_centre = [&](const Vec& e) { return open ? Vec(e + pull * (c - e)) : e; };
  if (body.is_bounded()) {
    const auto gens = closure_generators(body);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      out.push_back(toward_centre(gens[i]));
      const Vec mid = make_rational(1, 2) * (gens[i] + gens[(i + 1) % gens.size()]);
      out.push_back(toward_centre(mid));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (int s : {1, -1}) {
        for (int j : {0, 3, 6, 10}) {
          Vec y = c;
          y[i] += s * pow2(j);
          out.push_back(std::move(y));
        }
      }
    }
    if (auto b = body.as<Box>()) {
      for (std::size_t i = 0; i < n; ++i) {
        for (const ExtRational* side : {&b->lo[i], &b->hi[i]}) {
          if (!side->is_finite()) continue;
          Vec y = c;
          y[i] = side->value();
          out.push_back(toward_centre(y));
        }
      }
    } else if (auto iv = body.as<Interval>()) {
      for (const ExtRational* side : {&iv->lo, &iv->hi}) {
        if (side->is_finite()) out.push_back(toward_centre(Vec{side->value()}));
      }
    } else if (auto h = body.as<OpenHPolytope>()) {
      for (const auto& hs : h->halfspaces()) {
        const Rational gap = hs.b - dot(hs.a, c);
        Vec dir(n);
        for (std::size_t i = 0; i < n; ++i) dir[i] = sgn(hs.a[i]);
        out.push_back(c + (gap * (1 - pull)) * dir);
      }
    }
  }
  std::vector<Vec> kept;
  for (auto& y : out) {
    const auto m = membership(body, y);
    if (open ? m.position == Position::Inside : m.position != Position::Outside) kept.push_back(std::move(y));
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return kept;
}

// ---------------------------------------------------------------------------
// Report

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  timings.insert(timings.end(), other.timings.begin(), other.timings.end());
}

namespace {

const char* strength_name(Strength s) { return s == Strength::Exact ? "exact" : "sampled"; }

}  // namespace

std::string Report::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [k, v] : c.metrics) m[k] = v;
    checks_json.push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"strength", strength_name(c.strength)},
                           {"witness", c.witness},
                           {"metrics", m}});
  }
  nlohmann::json doc{{"title", title}, {"passed", passed()}, {"checks", checks_json}};
  return doc.dump(2) + "\n";
}

std::string Report::to_text(bool with_timings) const {
  std::ostringstream os;
  os << title << ": " << (passed() ? "PASS" : "FAIL") << "\n";
  for (const auto& c : checks) {
    os << "  " << (c.passed ? "PASS " : "FAIL ") << c.name << " [" << strength_name(c.strength) << "]";
    for (const auto& [k, v] : c.metrics) os << " " << k << "=" << v;
    os << "\n";
    if (!c.witness.empty()) os << "    witness: " << c.witness << "\n";
  }
  if (with_timings) {
    for (const auto& [name, secs] : timings) os << "  time " << name << " " << secs << "s\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Oracles

namespace {

struct SampledCell {
  CellId cell;
  Vec x;
};

// One representative base point per carrier cell, in cell order.
std::vector<SampledCell> sampled_cells(const SimplicialComplex& k, const Sampler& sampler) {
  std::map<CellId, Vec> first;
  for (auto& x : sampler.base_points(k)) {
    const CellId c = carrier(k, x).cell;
    first.try_emplace(c, std::move(x));
  }
  std::vector<SampledCell> out;
  for (auto& [c, x] : first) out.push_back({c, std::move(x)});
  return out;
}

Vec step_into(const SimplicialComplex& k, const Vec& x, CellId coface, const Rational& t) {
  return x + t * (k.barycenter(coface) - x);
}

// A point within `step` of y (ℓ∞) lying outside the body, if one is found
// among the outward step from the interior point and the axis steps.
std::optional<Vec> escape_value(const ConvexBody& body, const Vec& y, const Rational& step) {
  std::vector<Vec> candidates;
  const Vec c = interior_point(body);
  const Vec d = y - c;
  const Rational nd = norm_inf(d);
  if (nd > 0) candidates.push_back(y + (step / nd) * d);
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (int s : {1, -1}) {
      Vec z = y;
      z[i] += s * step;
      candidates.push_back(std::move(z));
    }
  }
  for (auto& z : candidates) {
    if (!contains(body, z)) return z;
  }
  return std::nullopt;
}

}  // namespace

OracleVerdict oracle_open(const ConvexCellRelation& phi, const Sampler& sampler) {
  const auto& k = *phi.complex;
  const Rational res = pow2(-sampler.resolution);
  OracleVerdict out;
  for (const auto& [sigma, x] : sampled_cells(k, sampler)) {
    const ConvexBody& own = phi[sigma];
    const auto cos = cofaces(k, sigma);
    for (const Vec& y : sampler.value_probes(own)) {
      ++out.pairs_tested;
      const auto own_m = membership(own, y);
      if (own_m.position != Position::Inside) {
        // y ∈ Φ(x) on the boundary of a closed value: escape in y alone.
        if (auto z = escape_value(own, y, res)) {
          out.holds = false;
          out.witness = OracleWitness{sigma, sigma, x, y, x, *z, res};
          return out;
        }
        ++out.inconclusive;
        continue;
      }
      ExtRational margin = own_m.margin;
      for (CellId tau : cos) {
        if (tau == sigma) continue;
        const auto m = membership(phi[tau], y);
        const Vec xe = step_into(k, x, tau, res);
        if (!contains(phi[tau], y)) {
          if (carrier(k, xe).cell == tau) {
            out.holds = false;
            out.witness = OracleWitness{sigma, tau, x, y, xe, y, res};
            return out;
          }
        } else if (m.position != Position::Inside) {
          if (auto z = escape_value(phi[tau], y, res); z && carrier(k, xe).cell == tau) {
            out.holds = false;
            out.witness = OracleWitness{sigma, tau, x, y, xe, *z, res};
            return out;
          }
        }
        margin = min(margin, m.margin);
      }
      // Largest dyadic radius below the common margin, then the corner test.
      std::optional<Rational> radius;
      for (int j = 1; j <= sampler.resolution && !radius; ++j) {
        if (ExtRational(pow2(-j)) < margin) radius = pow2(-j);
      }
      if (!radius) {
        ++out.inconclusive;
        continue;
      }
      const std::size_t n = y.size();
      bool corners_ok = true;
      for (std::size_t mask = 0; mask < (std::size_t{1} << n) && corners_ok; ++mask) {
        Vec corner = y;
        for (std::size_t i = 0; i < n; ++i) corner[i] += (mask >> i) & 1u ? *radius : Rational(-*radius);
        for (CellId tau : cos) {
          if (membership(phi[tau], corner).position != Position::Inside) {
            corners_ok = false;
            break;
          }
        }
      }
      if (!corners_ok) ++out.inconclusive;
    }
  }
  return out;
}

OracleVerdict oracle_lsc(const ConvexCellRelation& phi, const Sampler& sampler) {
  const auto& k = *phi.complex;
  const Rational res = pow2(-sampler.resolution);
  OracleVerdict out;
  for (const auto& [sigma, x] : sampled_cells(k, sampler)) {
    const auto cos = cofaces(k, sigma);
    for (const Vec& y : sampler.value_probes(phi[sigma])) {
      ++out.pairs_tested;
      bool undecided = false;
      for (CellId tau : cos) {
        if (tau == sigma) continue;
        const Rational delta = distance(phi[tau], y);
        if (delta == 0) continue;
        std::optional<Rational> radius;
        for (int j = 0; j <= sampler.resolution && !radius; ++j) {
          if (pow2(-j) <= delta) radius = pow2(-j);
        }
        const Vec xe = step_into(k, x, tau, res);
        if (radius && contains(phi[sigma], y) && carrier(k, xe).cell == tau) {
          out.holds = false;
          out.witness = OracleWitness{sigma, tau, x, y, xe, y, *radius};
          return out;
        }
        undecided = true;
      }
      if (undecided) ++out.inconclusive;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Certificate checkers

namespace {

std::string cell_and_parent(const SimplicialComplex& fine, CellId c, const SimplicialComplex& coarse, CellId p) {
  return "cell " + fine.cell_name(c) + " (parent " + coarse.cell_name(p) + ")";
}

std::vector<CellId> geometric_parents(const SimplicialComplex& fine, const SimplicialComplex& coarse) {
  std::vector<CellId> out;
  out.reserve(fine.num_cells());
  for (CellId c = 0; c < fine.num_cells(); ++c) out.push_back(carrier(coarse, fine.barycenter(c)).cell);
  return out;
}

CheckResult parent_check(const Refinement& r, const std::vector<CellId>& parents) {
  CheckResult res{"refinement parents", true, Strength::Exact, {}, {}};
  for (CellId c = 0; c < parents.size(); ++c) {
    if (r.parent.at(c) != parents[c]) {
      res.passed = false;
      res.witness = "cell " + r.fine->cell_name(c) + " recorded under " + r.coarse->cell_name(r.parent[c]) +
                    " but its barycenter lies in " + r.coarse->cell_name(parents[c]);
      break;
    }
  }
  res.metrics["fine_cells"] = std::to_string(parents.size());
  return res;
}

}  // namespace

Report check_selection(const PLMap& f, const Refinement& r, const ConvexCellRelation& phi,
                       const Rational& tolerance) {
  if (r.coarse != phi.complex || f.complex() != r.fine) {
    throw Error(ErrorCode::MeshMismatch, "map is not defined on a refinement of the relation's complex");
  }
  if (f.target_dim() != phi.dim) throw Error(ErrorCode::MeshMismatch, "map and relation have different targets");
  const auto& fine = *r.fine;
  const auto& coarse = *r.coarse;
  Report report{"check_selection", {}, {}};
  const auto parents = geometric_parents(fine, coarse);
  report.add(parent_check(r, parents));

  CheckResult sel{"selection", true, Strength::Exact, {}, {}};
  ExtRational min_margin = ExtRational::pos_inf();
  Rational max_distance(0);
  std::map<std::pair<VertexId, CellId>, std::pair<bool, Membership>> cache;
  for (CellId c = 0; c < fine.num_cells(); ++c) {
    const CellId p = parents[c];
    const ConvexBody& body = phi[p];
    for (VertexId v : fine.cell(c)) {
      auto it = cache.find({v, p});
      if (it == cache.end()) {
        std::pair<bool, Membership> entry{false, membership(body, f.at(v))};
        if (body.is_open()) {
          entry.first = entry.second.position == Position::Inside;
        } else {
          const Rational d = entry.second.position == Position::Outside ? entry.second.margin.value() : Rational(0);
          entry.first = d <= tolerance;
        }
        it = cache.emplace(std::make_pair(v, p), entry).first;
      }
      const auto& [ok, m] = it->second;
      if (body.is_open()) {
        min_margin = min(min_margin, m.position == Position::Inside ? m.margin : ExtRational(0));
      } else if (m.position == Position::Outside) {
        max_distance = std::max(max_distance, m.margin.value());
      }
      if (!ok && sel.passed) {
        sel.passed = false;
        sel.witness = cell_and_parent(fine, c, coarse, p) + ": vertex " + std::to_string(v) + " value " +
                      format_vec(f.at(v)) + " not in " + describe(body);
      }
    }
  }
  sel.metrics["cells"] = std::to_string(fine.num_cells());
  sel.metrics["min_margin"] = format_ext(min_margin);
  sel.metrics["max_distance"] = format_rational(max_distance);
  sel.metrics["tolerance"] = format_rational(tolerance);
  report.add(std::move(sel));
  return report;
}

Report check_pou(const PartitionOfUnity& pou, const IndexedCover& omega) {
  Report report{"check_pou", {}, {}};
  const auto& r = pou.refinement;
  CheckResult mesh{"mesh", true, Strength::Exact, {}, {}};
  if (r.coarse != omega.complex) {
    mesh.passed = false;
    mesh.witness = "partition lives on a different complex";
  } else if (pou.functions.size() != omega.size()) {
    mesh.passed = false;
    mesh.witness = std::to_string(pou.functions.size()) + " functions for " + std::to_string(omega.size()) +
                   " members";
  } else {
    for (const auto& fn : pou.functions) {
      if (fn.complex() != r.fine || fn.target_dim() != 1) {
        mesh.passed = false;
        mesh.witness = "function not scalar on the refined complex";
      }
    }
  }
  report.add(mesh);
  if (!mesh.passed) return report;

  const auto& fine = *r.fine;
  CheckResult sum{"sum to one", true, Strength::Exact, {}, {}};
  CheckResult range{"values in [0,1]", true, Strength::Exact, {}, {}};
  for (VertexId v = 0; v < fine.num_vertices(); ++v) {
    Rational total(0);
    for (std::size_t i = 0; i < pou.functions.size(); ++i) {
      const Rational val = scalar_at(pou.functions[i], v);
      total += val;
      if ((val < 0 || val > 1) && range.passed) {
        range.passed = false;
        range.witness = "vertex " + std::to_string(v) + " function " + std::to_string(i) + " value " +
                        format_rational(val);
      }
    }
    if (total != 1 && sum.passed) {
      sum.passed = false;
      sum.witness = "vertex " + std::to_string(v) + " sum " + format_rational(total);
    }
  }
  sum.metrics["vertices"] = std::to_string(fine.num_vertices());
  report.add(sum);
  report.add(range);

  CheckResult coz{"cozero in member", true, Strength::Exact, {}, {}};
  const auto parents = geometric_parents(fine, *r.coarse);
  for (std::size_t i = 0; i < pou.functions.size() && coz.passed; ++i) {
    for (CellId c = 0; c < fine.num_cells(); ++c) {
      bool positive = false;
      for (VertexId v : fine.cell(c)) positive = positive || scalar_at(pou.functions[i], v) > 0;
      if (positive && !omega.members[i].contains(parents[c])) {
        coz.passed = false;
        coz.witness = "function " + std::to_string(i) + " positive on " +
                      cell_and_parent(fine, c, *r.coarse, parents[c]) + " outside member " + std::to_string(i);
        break;
      }
    }
  }
  report.add(coz);
  return report;
}

Report check_refinement(const IndexedCover& phi, const IndexedCover& omega, std::optional<std::size_t> order_bound) {
  if (phi.complex != omega.complex) throw Error(ErrorCode::MeshMismatch, "covers live on different complexes");
  return check_refinement(phi.members, omega, order_bound);
}

Report check_refinement(const std::vector<OpenCellSet>& members, const IndexedCover& omega,
                        std::optional<std::size_t> order_bound) {
  const auto& k = *omega.complex;
  if (members.size() != omega.size()) {
    throw Error(ErrorCode::IndexMismatch,
                std::to_string(members.size()) + " members against " + std::to_string(omega.size()));
  }
  for (const auto& m : members) {
    if (m.cells().universe() != k.num_cells()) {
      throw Error(ErrorCode::MeshMismatch, "member lives on a different complex");
    }
  }
  Report report{"check_refinement", {}, {}};
  CheckResult inside{"memberwise containment", true, Strength::Exact, {}, {}};
  for (std::size_t i = 0; i < members.size() && inside.passed; ++i) {
    for (CellId c : members[i].ids()) {
      if (!omega.members[i].contains(c)) {
        inside.passed = false;
        inside.witness = "cell " + k.cell_name(c) + " in refinement member " + std::to_string(i) +
                         " but not in the cover member";
        break;
      }
    }
  }
  report.add(inside);

  CheckResult cover{"cover", true, Strength::Exact, {}, {}};
  CheckResult order{"order", true, Strength::Exact, {}, {}};
  std::size_t max_count = 0;
  for (CellId c = 0; c < k.num_cells(); ++c) {
    std::size_t count = 0;
    for (const auto& m : members) count += m.contains(c) ? 1 : 0;
    max_count = std::max(max_count, count);
    if (count == 0 && cover.passed) {
      cover.passed = false;
      cover.witness = "cell " + k.cell_name(c) + " is uncovered";
    }
  }
  order.metrics["order"] = std::to_string(max_count);
  if (order_bound) {
    order.metrics["bound"] = std::to_string(*order_bound);
    if (max_count > *order_bound) {
      order.passed = false;
      order.witness = "order " + std::to_string(max_count) + " exceeds " + std::to_string(*order_bound);
    }
  }
  report.add(cover);
  report.add(order);
  return report;
}

Report check_insertion(const PLMap& f, const Refinement& r, const ScalarCellField& xi, const ScalarCellField& eta,
                       const Sampler& sampler) {
  Report report{"check_insertion", {}, {}};
  CheckResult mesh{"mesh", true, Strength::Exact, {}, {}};
  if (xi.complex != r.coarse || eta.complex != r.coarse || f.complex() != r.fine || f.target_dim() != 1) {
    mesh.passed = false;
    mesh.witness = "f, xi and eta do not share a refinement";
    report.add(mesh);
    return report;
  }
  report.add(mesh);
  const auto& fine = *r.fine;
  const auto& coarse = *r.coarse;
  const auto parents = geometric_parents(fine, coarse);

  CheckResult cells{"strict sandwich", true, Strength::Exact, {}, {}};
  ExtRational lower_gap = ExtRational::pos_inf(), upper_gap = ExtRational::pos_inf();
  for (CellId c = 0; c < fine.num_cells(); ++c) {
    const CellId p = parents[c];
    for (VertexId v : fine.cell(c)) {
      const ExtRational val(scalar_at(f, v));
      lower_gap = min(lower_gap, val - xi[p]);
      upper_gap = min(upper_gap, eta[p] - val);
      if (!(xi[p] < val && val < eta[p]) && cells.passed) {
        cells.passed = false;
        cells.witness = cell_and_parent(fine, c, coarse, p) + ": f(" + std::to_string(v) + ")=" + format_ext(val) +
                        " xi=" + format_ext(xi[p]) + " eta=" + format_ext(eta[p]);
      }
    }
  }
  cells.metrics["min_gap_below"] = format_ext(lower_gap);
  cells.metrics["min_gap_above"] = format_ext(upper_gap);
  report.add(cells);

  CheckResult samples{"sampled carriers", true, Strength::Sampled, {}, {}};
  Sampler s = sampler;
  std::size_t tested = 0;
  Rng rng(s.seed);
  for (std::size_t i = 0; i < s.count; ++i) {
    const Vec x = random_point(rng, fine);
    const auto cf = carrier(fine, x);
    const ExtRational val(eval_in_cell(f, cf.cell, cf.barycentric)[0]);
    const CellId p = carrier(coarse, x).cell;
    ++tested;
    if (!(xi[p] < val && val < eta[p])) {
      samples.passed = false;
      samples.witness = "x=" + format_vec(x) + " f=" + format_ext(val) + " on " + coarse.cell_name(p);
      break;
    }
  }
  samples.metrics["points"] = std::to_string(tested);
  report.add(samples);
  return report;
}

// ---------------------------------------------------------------------------
// Equivalence suite

namespace {

BodyKind random_kind(Rng& rng, std::size_t n, bool open) {
  std::vector<BodyKind> kinds{BodyKind::Box, BodyKind::VPolytope};
  if (n == 1) kinds.push_back(BodyKind::Interval);
  if (open) kinds.push_back(BodyKind::HPolytope);
  return rng.pick(kinds);
}

std::string witness_text(const SimplicialComplex& k, const FaceViolation& w) {
  std::string s = k.cell_name(w.face) + " <= " + k.cell_name(w.coface);
  if (w.point) s += " at y=" + format_vec(*w.point);
  return s;
}

std::string oracle_text(const SimplicialComplex& k, const OracleWitness& w) {
  return "x=" + format_vec(w.x) + " in " + k.cell_name(w.cell) + ", y=" + format_vec(w.y) + ", escape (" +
         format_vec(w.x_escape) + ", " + format_vec(w.y_escape) + ") in " + k.cell_name(w.coface);
}

}  // namespace

Report equivalence_suite(const SuiteOptions& options) {
  Report report{"equivalence_suite", {}, {}};
  Rng rng(options.seed);
  using clock = std::chrono::steady_clock;

  // is_lsc(Φ) ⟺ is_open(O_ε[Φ]) for every ε.
  {
    const auto t0 = clock::now();
    CheckResult res{"fattening equivalence", true, Strength::Exact, {}, {}};
    std::size_t lsc_true = 0, lsc_false = 0;
    for (std::size_t i = 0; i < options.instances; ++i) {
      const auto k = random_complex(rng, 2, 60);
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
      auto phi = random_closed_relation(rng, k, n, random_kind(rng, n, false));
      if (options.adversarial || rng.coin()) phi = perturb_relation(rng, phi);
      const bool lsc = is_lsc_relation(phi).holds;
      (lsc ? lsc_true : lsc_false)++;
      for (const Rational& eps : {Rational(1), make_rational(1, 2), make_rational(1, 3)}) {
        const bool open = is_open_relation(fatten(phi, eps, true)).holds;
        if (open != lsc && res.passed) {
          res.passed = false;
          res.witness = "instance " + std::to_string(i) + " eps=" + format_rational(eps) + ": lsc=" +
                        (lsc ? "true" : "false") + " open=" + (open ? "true" : "false");
        }
      }
    }
    res.metrics["instances"] = std::to_string(options.instances);
    res.metrics["lsc_true"] = std::to_string(lsc_true);
    res.metrics["lsc_false"] = std::to_string(lsc_false);
    report.add(std::move(res));
    report.timings.emplace_back("fattening", std::chrono::duration<double>(clock::now() - t0).count());
  }

  // ξ = inf Φ, η = sup Φ and back; insertion selects the open relation.
  {
    const auto t0 = clock::now();
    CheckResult res{"bounds round trip", true, Strength::Exact, {}, {}};
    for (std::size_t i = 0; i < options.instances && res.passed; ++i) {
      const auto k = random_complex(rng, 2, 60);
      const auto [xi, eta] = random_envelopes(rng, k, true);
      const auto phi = from_bounds(xi, eta);
      const auto [lo, hi] = bounds_of(phi);
      const auto sel = insert(xi, eta);
      const auto chk = check_selection(sel.map, sel.refinement, phi);
      if (!(lo == xi && hi == eta) || !(from_bounds(lo, hi) == phi)) {
        res.passed = false;
        res.witness = "instance " + std::to_string(i) + ": bounds do not round trip";
      } else if (!chk.passed()) {
        res.passed = false;
        res.witness = "instance " + std::to_string(i) + ": " + chk.checks.back().witness;
      }
    }
    res.metrics["instances"] = std::to_string(options.instances);
    report.add(std::move(res));
    report.timings.emplace_back("bounds", std::chrono::duration<double>(clock::now() - t0).count());
  }

  // Open convex-valued l.s.c. relations admit selections.
  {
    const auto t0 = clock::now();
    CheckResult res{"open convex selection", true, Strength::Exact, {}, {}};
    for (std::size_t i = 0; i < options.instances && res.passed; ++i) {
      const auto k = random_complex(rng, 2, 60);
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
      const auto phi = random_open_relation(rng, k, n, random_kind(rng, n, true));
      const auto sel = select_pou(phi);
      const auto chk = check_selection(sel.map, sel.refinement, phi);
      if (!chk.passed()) {
        res.passed = false;
        res.witness = "instance " + std::to_string(i) + ": " + chk.checks.back().witness;
      }
    }
    res.metrics["instances"] = std::to_string(options.instances);
    report.add(std::move(res));
    report.timings.emplace_back("selection", std::chrono::duration<double>(clock::now() - t0).count());
  }

  // An open cover composed with the order relation is open.
  {
    const auto t0 = clock::now();
    CheckResult res{"composition is open", true, Strength::Exact, {}, {}};
    for (std::size_t i = 0; i < options.instances && res.passed; ++i) {
      const auto k = random_complex(rng, 3, 120);
      const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 5));
      const auto omega = random_increasing_cover(rng, k, m);
      const auto v = is_open_relation(compose(omega, order_relation(m)));
      if (!v) {
        res.passed = false;
        res.witness = "instance " + std::to_string(i) + ": " + witness_text(*k, *v.witness);
      }
    }
    res.metrics["instances"] = std::to_string(options.instances);
    report.add(std::move(res));
    report.timings.emplace_back("composition", std::chrono::duration<double>(clock::now() - t0).count());
  }

  // Classifiers against the oracles.
  {
    const auto t0 = clock::now();
    CheckResult res{"classifier oracle agreement", true, Strength::Sampled, {}, {}};
    std::size_t open_true = 0, open_false = 0;
    for (std::size_t i = 0; i < options.instances && res.passed; ++i) {
      const auto k = random_complex(rng, 2, 40);
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
      auto phi = random_open_relation(rng, k, n, random_kind(rng, n, true));
      if (rng.coin()) phi = perturb_relation(rng, phi);
      const Sampler sampler{options.seed + i, options.samples, 10};
      const auto open = is_open_relation(phi);
      const auto lsc = is_lsc_relation(phi);
      const auto o_open = oracle_open(phi, sampler);
      const auto o_lsc = oracle_lsc(phi, sampler);
      (open.holds ? open_true : open_false)++;
      if (open.holds != o_open.holds || lsc.holds != o_lsc.holds) {
        res.passed = false;
        std::string w = "instance " + std::to_string(i) + ": classifier open=" + (open.holds ? "1" : "0") +
                        " lsc=" + (lsc.holds ? "1" : "0") + ", oracle open=" + (o_open.holds ? "1" : "0") +
                        " lsc=" + (o_lsc.holds ? "1" : "0");
        if (o_open.witness) w += "; " + oracle_text(*k, *o_open.witness);
        res.witness = w;
      }
    }
    res.metrics["instances"] = std::to_string(options.instances);
    res.metrics["open_true"] = std::to_string(open_true);
    res.metrics["open_false"] = std::to_string(open_false);
    report.add(std::move(res));
    report.timings.emplace_back("oracles", std::chrono::duration<double>(clock::now() - t0).count());
  }
  return report;
}

}  // namespace selectra
