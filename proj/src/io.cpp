#include "selectra/io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "selectra/errors.hpp"

namespace selectra {

using nlohmann::json;

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::Scalar: return "scalar";
    case FieldKind::Interval: return "interval";
    case FieldKind::Polytope: return "polytope";
    case FieldKind::FiniteSet: return "finite_set";
    case FieldKind::Cover: return "cover";
  }
  return "?";
}

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& reason) {
  throw Error(ErrorCode::ValidationError, where + ": " + reason);
}

FieldKind parse_kind(const std::string& where, const std::string& name) {
  for (auto k : {FieldKind::Scalar, FieldKind::Interval, FieldKind::Polytope, FieldKind::FiniteSet, FieldKind::Cover}) {
    if (to_string(k) == name) return k;
  }
  invalid(where, "unknown kind \"" + name + "\"");
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) invalid(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) invalid(where, "missing \"" + key + "\"");
  return *it;
}

Rational to_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      invalid(where, e.what());
    }
  }
  invalid(where, "expected a rational as an integer or a \"p/q\" string");
}

ExtRational to_ext(const json& j, const std::string& where) {
  if (j.is_number_integer()) return ExtRational(Rational(j.get<long>()));
  if (j.is_string()) {
    try {
      return parse_ext(j.get<std::string>());
    } catch (const Error& e) {
      invalid(where, e.what());
    }
  }
  invalid(where, "expected an extended rational");
}

Vec to_vec(const json& j, const std::string& where) {
  if (!j.is_array()) invalid(where, "expected an array of rationals");
  Vec out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_rational(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<ExtRational> to_ext_vec(const json& j, const std::string& where) {
  if (!j.is_array()) invalid(where, "expected an array");
  std::vector<ExtRational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(to_ext(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

bool to_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) invalid(where, "expected true or false");
  return j.get<bool>();
}

std::size_t to_size(const json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long>() >= 0)) {
    invalid(where, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::string ext_string(const ExtRational& v) { return format_ext(v); }

json ext_vec_json(const std::vector<ExtRational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(ext_string(x));
  return out;
}

ComplexPtr parse_complex(const json& j, const std::string& where) {
  const std::size_t dim = to_size(member(j, "dim", where), where + ".dim");
  const json& verts = member(j, "vertices", where);
  if (!verts.is_array()) invalid(where + ".vertices", "expected an array");
  std::vector<Vec> points;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    Vec p = to_vec(verts[i], where + ".vertices[" + std::to_string(i) + "]");
    if (p.size() != dim) invalid(where + ".vertices[" + std::to_string(i) + "]", "expected " + std::to_string(dim) + " coordinates");
    points.push_back(std::move(p));
  }
  const json& simp = member(j, "simplices", where);
  if (!simp.is_array()) invalid(where + ".simplices", "expected an array");
  std::vector<Cell> tops;
  for (std::size_t i = 0; i < simp.size(); ++i) {
    const std::string w = where + ".simplices[" + std::to_string(i) + "]";
    if (!simp[i].is_array() || simp[i].empty()) invalid(w, "expected a nonempty array of vertex ids");
    Cell c;
    for (const auto& v : simp[i]) {
      const std::size_t id = to_size(v, w);
      if (id >= points.size()) invalid(w, "vertex " + std::to_string(id) + " out of range");
      c.push_back(static_cast<VertexId>(id));
    }
    tops.push_back(std::move(c));
  }
  try {
    return build_complex(std::move(points), tops);
  } catch (const Error& e) {
    invalid(where, e.what());
  }
}

CellId parse_cell(const SimplicialComplex& k, const std::string& name, const std::string& where) {
  try {
    return k.parse_cell_name(name);
  } catch (const Error& e) {
    invalid(where, "bad cell id \"" + name + "\": " + e.what());
  }
}

// Values keyed by cell id, one per cell.
template <typename T, typename Fn>
std::vector<T> per_cell(const SimplicialComplex& k, const json& values, const std::string& where, Fn convert) {
  if (!values.is_object()) invalid(where, "expected an object keyed by cell ids");
  std::vector<std::optional<T>> slots(k.num_cells());
  for (const auto& [key, val] : values.items()) {
    const CellId c = parse_cell(k, key, where);
    if (slots[c]) invalid(where + "." + key, "duplicate cell");
    slots[c] = convert(val, where + "." + key);
  }
  std::vector<T> out;
  for (CellId c = 0; c < k.num_cells(); ++c) {
    if (!slots[c]) invalid("cell " + k.cell_name(c), "missing value in " + where);
    out.push_back(std::move(*slots[c]));
  }
  return out;
}

ConvexBody parse_body(const json& j, std::size_t n, const std::string& where) {
  const json& f = member(j, "form", where);
  if (!f.is_string()) invalid(where + ".form", "expected a string");
  const std::string form = f.get<std::string>();
  ConvexBody body = [&]() -> ConvexBody {
    try {
      if (form == "open_interval" || form == "closed_interval") {
        const auto lo = to_ext(member(j, "lo", where), where + ".lo");
        const auto hi = to_ext(member(j, "hi", where), where + ".hi");
        return form == "open_interval" ? open_interval(lo, hi) : closed_interval(lo, hi);
      }
      if (form == "open_box" || form == "closed_box") {
        const auto lo = to_ext_vec(member(j, "lo", where), where + ".lo");
        const auto hi = to_ext_vec(member(j, "hi", where), where + ".hi");
        return form == "open_box" ? open_box(lo, hi) : closed_box(lo, hi);
      }
      if (form == "open_hpolytope") {
        const json& hs = member(j, "halfspaces", where);
        if (!hs.is_array()) invalid(where + ".halfspaces", "expected an array");
        std::vector<Halfspace> out;
        for (std::size_t i = 0; i < hs.size(); ++i) {
          const std::string w = where + ".halfspaces[" + std::to_string(i) + "]";
          out.push_back({to_vec(member(hs[i], "a", w), w + ".a"), to_rational(member(hs[i], "b", w), w + ".b")});
        }
        return open_hpolytope(n, std::move(out));
      }
      std::vector<Vec> pts;
      const std::string key = form == "fattened" ? "base" : "vertices";
      if (form == "closed_vpolytope" || form == "fattened") {
        const json& vs = member(j, key, where);
        if (!vs.is_array()) invalid(where + "." + key, "expected an array of points");
        for (std::size_t i = 0; i < vs.size(); ++i) pts.push_back(to_vec(vs[i], where + "." + key));
      }
      if (form == "closed_vpolytope") return closed_vpolytope(std::move(pts));
      if (form == "fattened") {
        const Rational r = to_rational(member(j, "radius", where), where + ".radius");
        const bool strict = to_bool(member(j, "strict", where), where + ".strict");
        return fattened(closed_vpolytope(std::move(pts)), r, strict);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ValidationError) throw;
      invalid(where, e.what());
    }
    invalid(where + ".form", "unknown form \"" + form + "\"");
  }();
  if (body.dim() != n) invalid(where, "body of dimension " + std::to_string(body.dim()) + ", expected " + std::to_string(n));
  return body;
}

Field parse_field(const SimplicialComplex& k, const ComplexPtr& kp, const std::string& name, const json& j) {
  const std::string where = "fields." + name;
  const json& kind_j = member(j, "kind", where);
  if (!kind_j.is_string()) invalid(where + ".kind", "expected a string");
  const FieldKind kind = parse_kind(where + ".kind", kind_j.get<std::string>());
  const json& values = member(j, "values", where);
  try {
    switch (kind) {
      case FieldKind::Scalar: {
        auto v = per_cell<ExtRational>(k, values, where + ".values", to_ext);
        return {kind, ScalarCellField(kp, std::move(v))};
      }
      case FieldKind::Interval: {
        auto v = per_cell<ConvexBody>(k, values, where + ".values", [](const json& b, const std::string& w) {
          auto body = parse_body(b, 1, w);
          if (!body.as<Interval>()) invalid(w, "interval fields hold interval bodies");
          return body;
        });
        return {kind, ConvexCellRelation(kp, 1, std::move(v))};
      }
      case FieldKind::Polytope: {
        const std::size_t n = to_size(member(j, "dim", where), where + ".dim");
        auto v = per_cell<ConvexBody>(k, values, where + ".values",
                                      [n](const json& b, const std::string& w) { return parse_body(b, n, w); });
        return {kind, ConvexCellRelation(kp, n, std::move(v))};
      }
      case FieldKind::FiniteSet: {
        const std::size_t n = to_size(member(j, "dim", where), where + ".dim");
        auto v = per_cell<std::vector<Vec>>(k, values, where + ".values", [n](const json& s, const std::string& w) {
          if (!s.is_array() || s.empty()) invalid(w, "expected a nonempty array of points");
          std::vector<Vec> pts;
          for (const auto& p : s) {
            pts.push_back(to_vec(p, w));
            if (pts.back().size() != n) invalid(w, "point of the wrong dimension");
          }
          return pts;
        });
        return {kind, FiniteSetCellField(kp, n, std::move(v))};
      }
      case FieldKind::Cover: {
        const std::size_t m = to_size(member(j, "size", where), where + ".size");
        auto v = per_cell<std::vector<std::size_t>>(k, values, where + ".values",
                                                    [m](const json& s, const std::string& w) {
                                                      if (!s.is_array()) invalid(w, "expected member indices");
                                                      std::vector<std::size_t> idx;
                                                      for (const auto& i : s) {
                                                        idx.push_back(to_size(i, w));
                                                        if (idx.back() >= m) invalid(w, "member index out of range");
                                                      }
                                                      return idx;
                                                    });
        std::vector<CellSet> sets(m, CellSet(k.num_cells()));
        for (CellId c = 0; c < k.num_cells(); ++c) {
          for (std::size_t i : v[c]) sets[i].insert(c);
        }
        std::vector<OpenCellSet> members;
        for (std::size_t i = 0; i < m; ++i) {
          for (CellId c : sets[i].ids()) {
            for (CellId up : k.cofacets(c)) {
              if (!sets[i].contains(up)) {
                invalid("cell " + k.cell_name(up), "member " + std::to_string(i) + " of " + where +
                                                       " contains a face but not this coface (not open)");
              }
            }
          }
          members.emplace_back(k, sets[i]);
        }
        return {kind, IndexedCover(kp, std::move(members))};
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError) throw;
    invalid(where, e.what());
  }
  invalid(where, "unreachable");
}

json field_to_json(const SimplicialComplex& k, const Field& f) {
  json values = json::object();
  json out{{"kind", to_string(f.kind)}};
  switch (f.kind) {
    case FieldKind::Scalar: {
      const auto& s = f.scalar();
      for (CellId c = 0; c < k.num_cells(); ++c) values[k.cell_name(c)] = ext_string(s[c]);
      break;
    }
    case FieldKind::Interval:
    case FieldKind::Polytope: {
      const auto& r = f.relation();
      for (CellId c = 0; c < k.num_cells(); ++c) values[k.cell_name(c)] = body_to_json(r[c]);
      if (f.kind == FieldKind::Polytope) out["dim"] = r.dim;
      break;
    }
    case FieldKind::FiniteSet: {
      const auto& s = f.finite_set();
      for (CellId c = 0; c < k.num_cells(); ++c) {
        json pts = json::array();
        for (const auto& p : s.sets[c]) pts.push_back(vec_to_json(p));
        values[k.cell_name(c)] = pts;
      }
      out["dim"] = s.dim;
      break;
    }
    case FieldKind::Cover:
      return cover_to_json(f.cover());
  }
  out["values"] = values;
  return out;
}

Refinement parse_refinement(const ComplexPtr& coarse, const json& j) {
  const std::string where = "refinement";
  Refinement r;
  r.coarse = coarse;
  r.fine = parse_complex(member(j, "complex", where), where + ".complex");
  const auto& fine = *r.fine;
  r.parent = per_cell<CellId>(fine, member(j, "parent", where), where + ".parent",
                              [&](const json& p, const std::string& w) {
                                if (!p.is_string()) invalid(w, "expected a cell id");
                                return parse_cell(*coarse, p.get<std::string>(), w);
                              });
  const json& weights = member(j, "weights", where);
  if (!weights.is_object()) invalid(where + ".weights", "expected an object keyed by vertex ids");
  r.weights.assign(fine.num_vertices(), {});
  std::vector<bool> seen(fine.num_vertices(), false);
  for (const auto& [key, val] : weights.items()) {
    const std::string w = where + ".weights." + key;
    std::size_t v = 0;
    try {
      v = std::stoul(key);
    } catch (...) {
      invalid(w, "bad vertex id");
    }
    if (v >= fine.num_vertices()) invalid(w, "vertex out of range");
    if (!val.is_object()) invalid(w, "expected coarse vertex weights");
    for (const auto& [u, wt] : val.items()) {
      std::size_t cu = 0;
      try {
        cu = std::stoul(u);
      } catch (...) {
        invalid(w, "bad coarse vertex id");
      }
      if (cu >= coarse->num_vertices()) invalid(w, "coarse vertex out of range");
      r.weights[v].emplace_back(static_cast<VertexId>(cu), to_rational(wt, w));
    }
    std::sort(r.weights[v].begin(), r.weights[v].end());
    seen[v] = true;
  }
  for (VertexId v = 0; v < seen.size(); ++v) {
    if (!seen[v]) invalid(where + ".weights", "vertex " + std::to_string(v) + " has no weights");
  }
  return r;
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

// ---------------------------------------------------------------------------

const ScalarCellField& Field::scalar() const {
  if (auto p = std::get_if<ScalarCellField>(&value)) return *p;
  throw Error(ErrorCode::ValidationError, "field is not scalar");
}
const ConvexCellRelation& Field::relation() const {
  if (auto p = std::get_if<ConvexCellRelation>(&value)) return *p;
  throw Error(ErrorCode::ValidationError, "field is not a relation");
}
const FiniteSetCellField& Field::finite_set() const {
  if (auto p = std::get_if<FiniteSetCellField>(&value)) return *p;
  throw Error(ErrorCode::ValidationError, "field is not a finite set field");
}
const IndexedCover& Field::cover() const {
  if (auto p = std::get_if<IndexedCover>(&value)) return *p;
  throw Error(ErrorCode::ValidationError, "field is not a cover");
}

const Field& InstanceDocument::field(const std::string& name) const {
  auto it = fields.find(name);
  if (it == fields.end()) invalid("fields", "no field named \"" + name + "\"");
  return it->second;
}

const Field& InstanceDocument::field(const std::string& name, FieldKind kind) const {
  const Field& f = field(name);
  const bool relation_ok = (kind == FieldKind::Polytope || kind == FieldKind::Interval) &&
                           (f.kind == FieldKind::Polytope || f.kind == FieldKind::Interval);
  if (f.kind != kind && !relation_ok) {
    invalid("fields." + name, "is " + to_string(f.kind) + ", expected " + to_string(kind));
  }
  return f;
}

const CellSet& InstanceDocument::subcomplex(const std::string& name) const {
  auto it = subcomplexes.find(name);
  if (it == subcomplexes.end()) invalid("subcomplexes", "no subcomplex named \"" + name + "\"");
  return it->second;
}

PLMap InstanceDocument::selection_map() const {
  if (!selection) invalid("selection", "document has no selection");
  const ComplexPtr& k = refinement ? refinement->fine : complex;
  std::vector<Vec> values;
  for (VertexId v = 0; v < k->num_vertices(); ++v) {
    auto it = selection->values.find(v);
    if (it == selection->values.end()) invalid("selection", "vertex " + std::to_string(v) + " has no value");
    values.push_back(it->second);
  }
  return PLMap(k, selection->dim, std::move(values));
}

Refinement InstanceDocument::selection_refinement() const {
  return refinement ? *refinement : identity_refinement(complex);
}

InstanceDocument parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    std::string msg = e.what();
    if (auto pos = msg.find("]: "); pos != std::string::npos) msg = msg.substr(pos + 3);
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }
  if (!j.is_object()) invalid("document", "expected a JSON object");
  InstanceDocument doc;
  const bool has_complex = j.contains("complex");
  if (j.contains("product_of")) {
    if (has_complex) invalid("document", "give either \"complex\" or \"product_of\", not both");
    const json& p = j["product_of"];
    doc.product = product_complex(parse_complex(member(p, "left", "product_of"), "product_of.left"),
                                  parse_complex(member(p, "right", "product_of"), "product_of.right"));
    doc.complex = doc.product->product;
  } else {
    doc.complex = parse_complex(member(j, "complex", "document"), "complex");
  }
  const auto& k = *doc.complex;
  if (j.contains("fields")) {
    const json& fs = j["fields"];
    if (!fs.is_object()) invalid("fields", "expected an object");
    for (const auto& [name, fj] : fs.items()) doc.fields.emplace(name, parse_field(k, doc.complex, name, fj));
  }
  if (j.contains("subcomplexes")) {
    const json& ss = j["subcomplexes"];
    if (!ss.is_object()) invalid("subcomplexes", "expected an object");
    for (const auto& [name, cells] : ss.items()) {
      const std::string where = "subcomplexes." + name;
      if (!cells.is_array()) invalid(where, "expected an array of cell ids");
      CellSet s(k.num_cells());
      for (const auto& c : cells) {
        if (!c.is_string()) invalid(where, "expected cell id strings");
        s.insert(parse_cell(k, c.get<std::string>(), where));
      }
      if (!is_downward_closed(k, s)) invalid(where, "not closed under faces");
      doc.subcomplexes.emplace(name, std::move(s));
    }
  }
  if (j.contains("refinement")) doc.refinement = parse_refinement(doc.complex, j["refinement"]);
  if (j.contains("selection")) {
    const json& s = j["selection"];
    SelectionData sel;
    const json& fj = member(s, "field", "selection");
    if (!fj.is_string()) invalid("selection.field", "expected a field name");
    sel.field = fj.get<std::string>();
    sel.dim = to_size(member(s, "dim", "selection"), "selection.dim");
    const ComplexPtr& target = doc.refinement ? doc.refinement->fine : doc.complex;
    const json& values = member(s, "values", "selection");
    if (!values.is_object()) invalid("selection.values", "expected an object keyed by vertex ids");
    for (const auto& [key, val] : values.items()) {
      const std::string w = "selection.values." + key;
      std::size_t v = 0;
      try {
        std::size_t used = 0;
        v = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (...) {
        invalid(w, "bad vertex id");
      }
      if (v >= target->num_vertices()) invalid(w, "vertex out of range");
      Vec y = to_vec(val, w);
      if (y.size() != sel.dim) invalid(w, "value of the wrong dimension");
      sel.values.emplace(static_cast<VertexId>(v), std::move(y));
    }
    doc.selection = std::move(sel);
  }
  for (const auto& [key, val] : j.items()) {
    static const std::set<std::string> known{"complex",    "product_of", "fields",
                                             "subcomplexes", "refinement", "selection"};
    if (!known.contains(key)) doc.extra[key] = val;
  }
  return doc;
}

InstanceDocument read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

// ---------------------------------------------------------------------------

json vec_to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(format_rational(x));
  return out;
}

json complex_to_json(const SimplicialComplex& k) {
  json verts = json::array();
  for (const auto& p : k.vertices()) verts.push_back(vec_to_json(p));
  json simp = json::array();
  for (CellId c : k.maximal_cells()) simp.push_back(k.cell(c));
  return {{"dim", k.dim_ambient()}, {"vertices", verts}, {"simplices", simp}};
}

json body_to_json(const ConvexBody& body) {
  json out{{"form", form_name(body)}};
  if (auto i = body.as<Interval>()) {
    out["lo"] = ext_string(i->lo);
    out["hi"] = ext_string(i->hi);
  } else if (auto b = body.as<Box>()) {
    out["lo"] = ext_vec_json(b->lo);
    out["hi"] = ext_vec_json(b->hi);
  } else if (auto h = body.as<OpenHPolytope>()) {
    json hs = json::array();
    for (const auto& s : h->halfspaces()) hs.push_back({{"a", vec_to_json(s.a)}, {"b", format_rational(s.b)}});
    out["halfspaces"] = hs;
  } else if (auto v = body.as<ClosedVPolytope>()) {
    json pts = json::array();
    for (const auto& p : v->vertices()) pts.push_back(vec_to_json(p));
    out["vertices"] = pts;
  } else if (auto f = body.as<Fattened>()) {
    json pts = json::array();
    for (const auto& p : f->base.vertices()) pts.push_back(vec_to_json(p));
    out["base"] = pts;
    out["radius"] = format_rational(f->radius);
    out["strict"] = f->strict;
  }
  return out;
}

json refinement_to_json(const Refinement& r) {
  json parent = json::object();
  for (CellId c = 0; c < r.fine->num_cells(); ++c) parent[r.fine->cell_name(c)] = r.coarse->cell_name(r.parent[c]);
  json weights = json::object();
  for (VertexId v = 0; v < r.weights.size(); ++v) {
    json w = json::object();
    for (const auto& [u, x] : r.weights[v]) w[std::to_string(u)] = format_rational(x);
    weights[std::to_string(v)] = w;
  }
  return {{"complex", complex_to_json(*r.fine)}, {"parent", parent}, {"weights", weights}};
}

json selection_to_json(const std::string& field, const PLMap& f) {
  json values = json::object();
  for (VertexId v = 0; v < f.values().size(); ++v) values[std::to_string(v)] = vec_to_json(f.at(v));
  return {{"field", field}, {"dim", f.target_dim()}, {"values", values}};
}

json certificate_to_json(const SimplicialComplex& fine, const SimplicialComplex& coarse,
                         const SelectionCertificate& cert) {
  json cells = json::object();
  for (const auto& c : cert.cells) {
    json e{{"parent", coarse.cell_name(c.coarse_cell)}};
    if (c.open_body) {
      e["margin"] = ext_string(c.margin);
    } else {
      e["distance"] = format_rational(c.distance);
    }
    cells[fine.cell_name(c.cell)] = e;
  }
  json out{{"valid", cert.valid},
           {"tolerance", format_rational(cert.tolerance)},
           {"min_margin", ext_string(cert.min_margin)},
           {"max_distance", format_rational(cert.max_distance)},
           {"cells", cells}};
  out["failing_cell"] = cert.failing_cell ? json(fine.cell_name(*cert.failing_cell)) : json(nullptr);
  return out;
}

json cover_to_json(const IndexedCover& omega) {
  const auto& k = *omega.complex;
  json values = json::object();
  for (CellId c = 0; c < k.num_cells(); ++c) {
    json idx = json::array();
    for (std::size_t i = 0; i < omega.size(); ++i) {
      if (omega.members[i].contains(c)) idx.push_back(i);
    }
    values[k.cell_name(c)] = idx;
  }
  return {{"kind", "cover"}, {"size", omega.size()}, {"values", values}};
}

void set_field(InstanceDocument& doc, const std::string& name, Field field) {
  doc.fields.insert_or_assign(name, std::move(field));
}

std::string serialize_instance(const InstanceDocument& doc) {
  json j = doc.extra.is_object() ? doc.extra : json::object();
  if (doc.product) {
    j["product_of"] = {{"left", complex_to_json(*doc.product->left)}, {"right", complex_to_json(*doc.product->right)}};
  } else {
    j["complex"] = complex_to_json(*doc.complex);
  }
  if (!doc.fields.empty()) {
    json fs = json::object();
    for (const auto& [name, f] : doc.fields) fs[name] = field_to_json(*doc.complex, f);
    j["fields"] = fs;
  }
  if (!doc.subcomplexes.empty()) {
    json ss = json::object();
    for (const auto& [name, s] : doc.subcomplexes) {
      json cells = json::array();
      for (CellId c : s.ids()) cells.push_back(doc.complex->cell_name(c));
      ss[name] = cells;
    }
    j["subcomplexes"] = ss;
  }
  if (doc.refinement) j["refinement"] = refinement_to_json(*doc.refinement);
  if (doc.selection) {
    json values = json::object();
    for (const auto& [v, y] : doc.selection->values) values[std::to_string(v)] = vec_to_json(y);
    j["selection"] = {{"field", doc.selection->field}, {"dim", doc.selection->dim}, {"values", values}};
  }
  return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorCode::InvalidArgument, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::InvalidArgument, "cannot rename onto " + path + ": " + ec.message());
  }
}

}  // namespace selectra
