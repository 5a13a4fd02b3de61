// Command-line front end. Exit codes: 0 success, 1 property false or
// construction infeasible (witness in the output), 2 invalid input.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "selectra/demo.hpp"
#include "selectra/engines.hpp"
#include "selectra/errors.hpp"
#include "selectra/io.hpp"
#include "selectra/plot.hpp"
#include "selectra/verification.hpp"

using namespace selectra;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFalse = 1, kInvalid = 2;

struct Options {
  std::string input;
  std::string output;
  std::string field;
  std::string field2;
  std::string subcomplex = "A";
  std::string tol = "1/64";
  bool tol_given = false;
  int max_depth = 12;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 1000;
  std::string format = "json";
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotOpenRelation:
    case ErrorCode::NotLSCRelation:
    case ErrorCode::NotUSC:
    case ErrorCode::NotLSC:
    case ErrorCode::GapViolated:
    case ErrorCode::NotIncreasing:
    case ErrorCode::NotASelectionOnA:
    case ErrorCode::SubdivisionLimitExceeded:
    case ErrorCode::InfeasibleInteriorPoint:
    case ErrorCode::NotACover:
    case ErrorCode::NotDisjoint:
      return kFalse;
    default:
      return kInvalid;
  }
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(o.output, text);
  }
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("SELECTRA_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (...) {
    }
    throw Error(ErrorCode::InvalidArgument, std::string("SELECTRA_SEED is not an unsigned integer: ") + env);
  }
  return 1;
}

Rational resolve_tol(const Options& o) {
  const Rational t = parse_rational(o.tol);
  if (t <= 0) throw Error(ErrorCode::InvalidArgument, "--tol must be positive");
  return t;
}

InstanceDocument load(const Options& o) {
  if (o.input.empty()) throw Error(ErrorCode::InvalidArgument, "missing -i input");
  return read_instance(o.input);
}

std::string need(const std::string& value, const std::string& fallback) { return value.empty() ? fallback : value; }

json verdict_json(const SimplicialComplex& k, const Verdict& v) {
  json out{{"holds", v.holds}};
  if (v.witness) {
    json w{{"face", k.cell_name(v.witness->face)}, {"coface", k.cell_name(v.witness->coface)}};
    if (v.witness->point) w["point"] = vec_to_json(*v.witness->point);
    out["witness"] = w;
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

std::string witness_line(const SimplicialComplex& k, const std::string& what, const Verdict& v) {
  std::string s = what + " fails at " + k.cell_name(v.witness->face) + " <= " + k.cell_name(v.witness->coface);
  if (v.witness->point) s += " y=" + format_vec(*v.witness->point);
  return s;
}

void attach_selection(InstanceDocument& doc, const std::string& field, const Selection& sel, bool with_refinement) {
  doc.refinement.reset();
  if (with_refinement) doc.refinement = sel.refinement;
  SelectionData data{field, sel.map.target_dim(), {}};
  for (VertexId v = 0; v < sel.map.values().size(); ++v) data.values.emplace(v, sel.map.at(v));
  doc.selection = std::move(data);
  doc.extra["certificate"] = certificate_to_json(*sel.refinement.fine, *sel.refinement.coarse, sel.certificate);
}

int finish_selection(const Options& o, InstanceDocument& doc, const std::string& field, const Selection& sel,
                     bool with_refinement) {
  attach_selection(doc, field, sel, with_refinement);
  emit(o, serialize_instance(doc));
  if (!sel.certificate.valid) {
    std::cerr << "certificate fails on cell " << sel.refinement.fine->cell_name(*sel.certificate.failing_cell) << "\n";
    return kFalse;
  }
  return kOk;
}

int cmd_classify(const Options& o) {
  auto doc = load(o);
  const std::string name = need(o.field, "phi");
  const Field& f = doc.field(name);
  const auto& k = *doc.complex;
  json out{{"field", name}, {"kind", to_string(f.kind)}};
  bool ok = true;
  std::string failure;
  switch (f.kind) {
    case FieldKind::Scalar: {
      const auto c = classify_scalar(f.scalar());
      out["usc"] = verdict_json(k, c.usc);
      out["lsc"] = verdict_json(k, c.lsc);
      ok = c.is_usc() || c.is_lsc();
      if (!ok) failure = witness_line(k, "u.s.c.", c.usc) + "; " + witness_line(k, "l.s.c.", c.lsc);
      break;
    }
    case FieldKind::Interval:
    case FieldKind::Polytope:
    case FieldKind::FiniteSet: {
      const ConvexCellRelation phi =
          f.kind == FieldKind::FiniteSet ? convex_hull_relation(f.finite_set()) : f.relation();
      const bool all_open = std::all_of(phi.bodies.begin(), phi.bodies.end(), [](const ConvexBody& b) { return b.is_open(); });
      const auto lsc = is_lsc_relation(phi);
      out["lsc"] = verdict_json(k, lsc);
      if (all_open) {
        const auto open = is_open_relation(phi);
        out["open"] = verdict_json(k, open);
        ok = open.holds;
        if (!ok) failure = witness_line(k, "openness", open);
      } else {
        out["open"] = {{"holds", false}, {"witness", nullptr}, {"reason", "closed values"}};
        ok = lsc.holds;
        if (!ok) failure = witness_line(k, "l.s.c.", lsc);
      }
      break;
    }
    case FieldKind::Cover: {
      const auto inc = is_increasing_cover(f.cover());
      out["increasing"] = verdict_json(k, inc);
      out["order"] = f.cover().order();
      ok = inc.holds;
      if (!ok) failure = witness_line(k, "increasing", inc);
      break;
    }
  }
  doc.extra["classification"] = out;
  emit(o, serialize_instance(doc));
  if (!ok) std::cerr << name << ": " << failure << "\n";
  return ok ? kOk : kFalse;
}

int cmd_insert(const Options& o) {
  auto doc = load(o);
  const std::string a = need(o.field, "xi"), b = need(o.field2, "eta");
  const auto sel = insert(doc.field(a, FieldKind::Scalar).scalar(), doc.field(b, FieldKind::Scalar).scalar());
  return finish_selection(o, doc, a + "," + b, sel, false);
}

int cmd_select(const Options& o) {
  auto doc = load(o);
  const std::string name = need(o.field, "phi");
  const Field& f = doc.field(name);
  if (f.kind == FieldKind::Cover) {
    const auto pou = pou_from_cover(f.cover());
    json fns = json::array();
    for (const auto& fn : pou.functions) {
      json vals = json::object();
      for (VertexId v = 0; v < fn.values().size(); ++v) vals[std::to_string(v)] = format_rational(fn.at(v)[0]);
      fns.push_back(vals);
    }
    doc.refinement = pou.refinement;
    doc.extra["pou"] = {{"field", name}, {"functions", fns}};
    emit(o, serialize_instance(doc));
    return kOk;
  }
  const ConvexCellRelation phi =
      f.kind == FieldKind::FiniteSet ? convex_hull_relation(f.finite_set()) : doc.field(name, FieldKind::Polytope).relation();
  return finish_selection(o, doc, name, select_pou(phi), false);
}

int cmd_michael(const Options& o) {
  auto doc = load(o);
  const std::string name = need(o.field, "phi");
  const auto res = select_michael(doc.field(name, FieldKind::Polytope).relation(), resolve_tol(o), o.max_depth);
  json trace = json::array();
  for (const auto& st : res.trace) {
    trace.push_back({{"n", st.n},
                     {"step_norm", format_rational(st.step_norm)},
                     {"bound", format_rational(st.bound)},
                     {"distance", format_rational(st.distance)},
                     {"vertices", st.vertices},
                     {"subdivisions", st.subdivisions}});
  }
  doc.extra["trace"] = trace;
  return finish_selection(o, doc, name, res.selection, true);
}

int cmd_extend(const Options& o) {
  auto doc = load(o);
  const std::string name = need(o.field, "phi");
  const auto& phi = doc.field(name, FieldKind::Polytope).relation();
  if (!doc.selection) throw Error(ErrorCode::ValidationError, "selection: extend needs the values on A");
  if (doc.refinement) throw Error(ErrorCode::ValidationError, "refinement: g must live on the base complex");
  const auto sel = extend_selection(phi, doc.subcomplex(o.subcomplex), doc.selection->values, o.max_depth);
  return finish_selection(o, doc, name, sel, true);
}

int cmd_refine(const Options& o, bool c0) {
  auto doc = load(o);
  const std::string name = need(o.field, "omega");
  const auto& omega = doc.field(name, FieldKind::Cover).cover();
  const auto res = c0 ? refine_c0(omega) : refine_countable(omega);
  const auto check = check_refinement(res.phi, res.omega_fine, res.order_bound);
  json f = json::object();
  for (VertexId v = 0; v < res.f.values().size(); ++v) f[std::to_string(v)] = vec_to_json(res.f.at(v));
  doc.refinement = res.refinement;
  doc.extra["cover_refinement"] = {{"field", name},
                                   {"method", c0 ? "c0" : "countable"},
                                   {"phi", cover_to_json(res.phi)},
                                   {"f", f},
                                   {"order", res.phi.order()},
                                   {"order_bound", res.order_bound}};
  doc.extra["report"] = json::parse(check.to_json());
  emit(o, serialize_instance(doc));
  return check.passed() ? kOk : kFalse;
}

int cmd_lift(const Options& o) {
  auto doc = load(o);
  if (!doc.product) throw Error(ErrorCode::ValidationError, "product_of: lift needs a product instance");
  const std::string name = need(o.field, "phi");
  const auto res = lift_product(*doc.product, doc.field(name, FieldKind::Polytope).relation());
  doc.extra["modulus"] = format_rational(res.modulus);
  return finish_selection(o, doc, name, res.selection, false);
}

int cmd_separate(const Options& o) {
  auto doc = load(o);
  const std::string a = need(o.field, "A"), b = need(o.field2, "B");
  const auto sel = separate_sets(doc.complex, doc.subcomplex(a), doc.subcomplex(b));
  return finish_selection(o, doc, a + "," + b, sel, false);
}

void emit_report(const Options& o, const Report& rep) {
  emit(o, o.format == "text" ? rep.to_text() : rep.to_json());
}

int cmd_verify(const Options& o) {
  const std::uint64_t seed = resolve_seed(o);
  if (o.input.empty()) {
    SuiteOptions so;
    so.seed = seed;
    so.samples = o.samples;
    const Report rep = equivalence_suite(so);
    emit_report(o, rep);
    return rep.passed() ? kOk : kFalse;
  }
  auto doc = load(o);
  const Sampler sampler{seed, o.samples, 10};
  Report rep{"verify", {}, {}};
  // Selections written by insert / separate name two inputs, "a,b".
  std::string name = need(o.field, doc.selection ? doc.selection->field : "phi");
  std::string name2 = o.field2;
  if (const auto comma = name.find(','); comma != std::string::npos && name2.empty()) {
    name2 = name.substr(comma + 1);
    name = name.substr(0, comma);
  }
  if (!name2.empty() && doc.subcomplexes.contains(name) && doc.subcomplexes.contains(name2)) {
    const auto gadget = separation_gadget(doc.complex, doc.subcomplex(name), doc.subcomplex(name2));
    rep.merge(check_selection(doc.selection_map(), doc.selection_refinement(), gadget));
  } else if (!name2.empty()) {
    const auto& xi = doc.field(name, FieldKind::Scalar).scalar();
    const auto& eta = doc.field(name2, FieldKind::Scalar).scalar();
    rep.merge(check_insertion(doc.selection_map(), doc.selection_refinement(), xi, eta, sampler));
  } else if (doc.selection) {
    const auto& phi = doc.field(name, FieldKind::Polytope).relation();
    // Without --tol, use the tolerance the producing engine certified.
    Rational tol(0);
    if (o.tol_given) {
      tol = resolve_tol(o);
    } else if (doc.extra.contains("certificate") && doc.extra["certificate"].contains("tolerance")) {
      tol = parse_rational(doc.extra["certificate"]["tolerance"].get<std::string>());
    }
    rep.merge(check_selection(doc.selection_map(), doc.selection_refinement(), phi, tol));
  } else {
    const auto& phi = doc.field(name, FieldKind::Polytope).relation();
    const auto lsc = is_lsc_relation(phi);
    const auto o_lsc = oracle_lsc(phi, sampler);
    CheckResult c{"l.s.c. classifier vs oracle", lsc.holds == o_lsc.holds, Strength::Sampled, {}, {}};
    c.metrics["classifier"] = lsc.holds ? "true" : "false";
    c.metrics["oracle"] = o_lsc.holds ? "true" : "false";
    c.metrics["pairs"] = std::to_string(o_lsc.pairs_tested);
    rep.add(c);
    const bool all_open =
        std::all_of(phi.bodies.begin(), phi.bodies.end(), [](const ConvexBody& b) { return b.is_open(); });
    if (all_open) {
      const auto open = is_open_relation(phi);
      const auto o_open = oracle_open(phi, sampler);
      CheckResult d{"openness classifier vs oracle", open.holds == o_open.holds, Strength::Sampled, {}, {}};
      d.metrics["classifier"] = open.holds ? "true" : "false";
      d.metrics["oracle"] = o_open.holds ? "true" : "false";
      d.metrics["pairs"] = std::to_string(o_open.pairs_tested);
      rep.add(d);
    }
  }
  emit_report(o, rep);
  return rep.passed() ? kOk : kFalse;
}

int cmd_demo(const Options& o) {
  const Report rep = run_demo();
  emit_report(o, rep);
  return rep.passed() ? kOk : kFalse;
}

int cmd_plot(const Options& o) {
  auto doc = load(o);
  PlotData data{doc.complex, {}, {}, {}};
  const std::string lo = need(o.field, "xi"), hi = need(o.field2, "eta");
  if (doc.fields.contains(lo) && doc.fields.contains(hi)) {
    data.lower = doc.field(lo, FieldKind::Scalar).scalar();
    data.upper = doc.field(hi, FieldKind::Scalar).scalar();
  } else if (doc.fields.contains(lo) && doc.field(lo).kind == FieldKind::Interval) {
    auto [a, b] = bounds_of(doc.field(lo).relation());
    data.lower = a;
    data.upper = b;
  } else if (!o.field.empty()) {
    doc.field(lo);  // reports the missing field
  }
  if (doc.selection) {
    data.curve = doc.selection_map();
  } else if (data.lower && data.upper) {
    data.curve = insert(*data.lower, *data.upper).map;
  }
  if (o.format == "svg") {
    emit(o, render_svg(data));
  } else if (o.format == "csv") {
    emit(o, render_csv(data));
  } else {
    throw Error(ErrorCode::InvalidArgument, "plot --format must be svg or csv");
  }
  return kOk;
}

void write_error(const Options& o, const Error& e) {
  json err{{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
  try {
    emit(o, err.dump(2) + "\n");
  } catch (...) {
  }
  std::cerr << e.what() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selections, insertions and cover refinements over simplicial complexes"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("-i,--input", o.input, "instance JSON");
    if (needs_input) in->required();
    sub->add_option("-o,--output", o.output, "output path (stdout when absent)");
    sub->add_option("--field", o.field, "field name");
    sub->add_option("--field2", o.field2, "second field name");
    sub->add_option("--subcomplex", o.subcomplex, "subcomplex name (extend)");
    sub->add_option("--tol", o.tol, "tolerance p/q");
    sub->add_option("--max-depth", o.max_depth, "subdivision limit")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", seed_value, "random seed (default: SELECTRA_SEED or 1)");
    sub->add_option("--samples", o.samples, "oracle sample count");
    sub->add_option("--format", o.format, "json|text|csv|svg")->check(CLI::IsMember({"json", "text", "csv", "svg"}));
  };

  struct Entry {
    const char* name;
    const char* help;
    bool needs_input;
    std::function<int()> run;
  };
  const std::vector<Entry> entries{
      {"classify", "semicontinuity / openness / monotonicity of a field", true, [&] { return cmd_classify(o); }},
      {"insert", "strict insertion between --field (u.s.c.) and --field2 (l.s.c.)", true, [&] { return cmd_insert(o); }},
      {"select", "selection of an open relation, or a partition of unity for a cover", true,
       [&] { return cmd_select(o); }},
      {"michael", "approximate selection of a closed l.s.c. relation", true, [&] { return cmd_michael(o); }},
      {"extend", "extend the document's selection from --subcomplex", true, [&] { return cmd_extend(o); }},
      {"refine", "indexed refinement of an increasing cover", true, [&] { return cmd_refine(o, false); }},
      {"refine-c0", "indexed refinement through coordinate selections", true, [&] { return cmd_refine(o, true); }},
      {"lift", "selection on a product instance with its curried form", true, [&] { return cmd_lift(o); }},
      {"separate", "function below -1 on --field and above 1 on --field2", true, [&] { return cmd_separate(o); }},
      {"verify", "check the document's selection, or run the equivalence suite", false,
       [&] { return cmd_verify(o); }},
      {"demo", "worked example for every engine", false, [&] { return cmd_demo(o); }},
      {"plot", "SVG or CSV rendering", true, [&] { return cmd_plot(o); }},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, e.needs_input);
    subs.emplace_back(sub, &e);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }
  for (auto& [sub, entry] : subs) {
    if (!sub->parsed()) continue;
    if (sub->count("--seed") > 0) o.seed = seed_value;
    o.tol_given = sub->count("--tol") > 0;
    if (std::string(entry->name) == "plot" && sub->count("--format") == 0) o.format = "svg";
    try {
      return entry->run();
    } catch (const Error& e) {
      write_error(o, e);
      return exit_code_for(e.code());
    } catch (const std::exception& e) {
      std::cerr << "internal error: " << e.what() << "\n";
      return kInvalid;
    }
  }
  return kInvalid;
}
