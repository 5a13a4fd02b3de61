#include "selectra/body.hpp"

#include <algorithm>
#include <sstream>

#include "selectra/errors.hpp"
#include "selectra/linalg.hpp"
#include "selectra/lp.hpp"

namespace selectra {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Box as_box(const Interval& i) { return Box{{i.lo}, {i.hi}, i.open}; }

// Box-shaped bodies (intervals included) share one code path.
std::optional<Box> box_view(const ConvexBody& body) {
  if (auto i = body.as<Interval>()) return as_box(*i);
  if (auto b = body.as<Box>()) return *b;
  return std::nullopt;
}

ExtRational axis_point(const ExtRational& lo, const ExtRational& hi) {
  if (lo.is_finite() && hi.is_finite()) return Rational((lo.value() + hi.value()) / 2);
  if (lo.is_finite()) return Rational(lo.value() + 1);
  if (hi.is_finite()) return Rational(hi.value() - 1);
  return ExtRational(0);
}

void check_box(const std::vector<ExtRational>& lo, const std::vector<ExtRational>& hi, bool open) {
  if (lo.size() != hi.size()) throw Error(ErrorCode::InvalidArgument, "box bounds have different lengths");
  if (lo.empty()) throw Error(ErrorCode::InvalidArgument, "box of dimension 0");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i].is_pos_inf() || hi[i].is_neg_inf()) {
      throw Error(ErrorCode::EmptyBody, "box axis " + std::to_string(i) + " has an infinite bound on the wrong side");
    }
    if (open ? !(lo[i] < hi[i]) : !(lo[i] <= hi[i])) {
      throw Error(ErrorCode::EmptyInterval, "box axis " + std::to_string(i) + " is empty: " + format_ext(lo[i]) +
                                                ", " + format_ext(hi[i]));
    }
  }
}

Membership box_membership(const Box& b, const Vec& y) {
  ExtRational inside = ExtRational::pos_inf();
  Rational outside(0);
  bool on_boundary = false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (b.lo[i].is_finite()) {
      const Rational d = y[i] - b.lo[i].value();
      if (sgn(d) < 0) outside = std::max(outside, Rational(-d));
      if (sgn(d) == 0) on_boundary = true;
      inside = min(inside, d);
    }
    if (b.hi[i].is_finite()) {
      const Rational d = b.hi[i].value() - y[i];
      if (sgn(d) < 0) outside = std::max(outside, Rational(-d));
      if (sgn(d) == 0) on_boundary = true;
      inside = min(inside, d);
    }
  }
  if (sgn(outside) > 0) return {Position::Outside, outside};
  if (on_boundary) return {Position::Boundary, ExtRational(0)};
  return {Position::Inside, inside};
}

Rational box_distance(const Box& b, const Vec& y) {
  Rational d(0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (b.lo[i].is_finite() && y[i] < b.lo[i].value()) d = std::max(d, Rational(b.lo[i].value() - y[i]));
    if (b.hi[i].is_finite() && y[i] > b.hi[i].value()) d = std::max(d, Rational(y[i] - b.hi[i].value()));
  }
  return d;
}

ExtRational box_support(const Box& b, const Vec& c) {
  ExtRational s(0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const int sg = sgn(c[i]);
    if (sg > 0) s = s + c[i] * b.hi[i];
    if (sg < 0) s = s + c[i] * b.lo[i];
  }
  return s;
}

Rational hpoly_distance(const OpenHPolytope& h, const Vec& y) {
  const std::size_t n = h.dim();
  // variables z (n, free), t
  lp::Problem p(n + 1);
  for (const auto& hs : h.halfspaces()) {
    Vec row = hs.a;
    row.push_back(0);
    p.add_le(std::move(row), hs.b);
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vec up(n + 1), down(n + 1);
    up[i] = 1;
    up[n] = -1;
    down[i] = -1;
    down[n] = -1;
    p.add_le(std::move(up), y[i]);
    p.add_le(std::move(down), -y[i]);
  }
  Vec obj(n + 1);
  obj[n] = -1;
  p.maximize(std::move(obj));
  const auto sol = p.solve();
  if (sol.status != lp::Status::Optimal) throw Error(ErrorCode::InvalidArgument, "distance LP failed");
  return sgn(sol.x[n]) < 0 ? Rational(0) : sol.x[n];
}

// Margin of y against closed halfspaces with ‖a‖₁ = 1.
Rational halfspace_slack(const std::vector<Halfspace>& hs, const Vec& y, bool& any) {
  Rational s;
  any = false;
  for (const auto& h : hs) {
    const Rational v = h.b - dot(h.a, y);
    if (!any || v < s) s = v;
    any = true;
  }
  return s;
}

std::vector<Vec> box_corners(const Box& b) {
  std::vector<Vec> out{Vec{}};
  for (std::size_t i = 0; i < b.lo.size(); ++i) {
    std::vector<Vec> next;
    for (const auto& p : out) {
      Vec a = p;
      a.push_back(b.lo[i].value());
      next.push_back(std::move(a));
      if (b.hi[i] != b.lo[i]) {
        Vec c = p;
        c.push_back(b.hi[i].value());
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Direction r in the recession cone of the body with c·r > 0. Only called
// when support(body, c) = +∞.
Vec recession_direction(const ConvexBody& body, const Vec& c) {
  const std::size_t n = body.dim();
  if (auto b = box_view(body)) {
    for (std::size_t i = 0; i < n; ++i) {
      Vec r(n);
      if (sgn(c[i]) > 0 && b->hi[i].is_pos_inf()) {
        r[i] = 1;
        return r;
      }
      if (sgn(c[i]) < 0 && b->lo[i].is_neg_inf()) {
        r[i] = -1;
        return r;
      }
    }
  }
  if (auto h = body.as<OpenHPolytope>()) {
    lp::Problem p(n);
    for (const auto& hs : h->halfspaces()) p.add_le(hs.a, 0);
    for (std::size_t i = 0; i < n; ++i) {
      p.upper_bound(i, 1);
      p.lower_bound(i, -1);
    }
    p.maximize(c);
    const auto sol = p.solve();
    if (sol.status == lp::Status::Optimal && sgn(sol.objective) > 0) return sol.x;
  }
  throw Error(ErrorCode::InvalidArgument, "no recession direction");
}

// A point of `body` with c·y > beta, given that support(body, c) > beta.
Vec point_beyond(const ConvexBody& body, const Vec& c, const Rational& beta) {
  if (!support(body, c).is_finite()) {
    const Vec r = recession_direction(body, c);
    const Vec p = interior_point(body);
    Rational t = (beta - dot(c, p)) / dot(c, r);
    if (sgn(t) < 0) t = 0;
    t += 1;
    return p + t * r;
  }
  const auto gens = closure_generators(body);
  const Vec* best = &gens.front();
  for (const auto& g : gens) {
    if (dot(c, g) > dot(c, *best)) best = &g;
  }
  if (!body.is_open()) return *best;
  const Vec p = interior_point(body);
  const Rational gap = dot(c, *best) - beta;
  const Rational drop = dot(c, *best - p);
  Rational s(1, 2);
  if (sgn(drop) > 0 && gap / (2 * drop) < s) s = gap / (2 * drop);
  return *best + s * (p - *best);
}

}  // namespace

// ---------------------------------------------------------------------------

OpenHPolytope OpenHPolytope::create(std::size_t dim, std::vector<Halfspace> halfspaces) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "H-polytope of dimension 0");
  auto data = std::make_shared<Data>();
  data->dim = dim;
  for (auto& h : halfspaces) {
    if (h.a.size() != dim) throw Error(ErrorCode::InvalidArgument, "halfspace normal has wrong dimension");
    data->halfspaces.push_back(normalized(h));
  }
  // Largest inscribed ℓ∞ ball, radius capped at 1: a·y + r ≤ b.
  lp::Problem cheb(dim + 1);
  for (const auto& h : data->halfspaces) {
    Vec row = h.a;
    row.push_back(1);
    cheb.add_le(std::move(row), h.b);
  }
  cheb.upper_bound(dim, 1);
  Vec obj(dim + 1);
  obj[dim] = 1;
  cheb.maximize(std::move(obj));
  const auto sol = cheb.solve();
  if (sol.status != lp::Status::Optimal || sgn(sol.objective) <= 0) {
    throw Error(ErrorCode::EmptyBody, "open H-polytope is empty");
  }
  Vec centre(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(dim));

  data->bounded = true;
  for (std::size_t i = 0; i < dim && data->bounded; ++i) {
    for (int sign : {1, -1}) {
      lp::Problem rec(dim);
      for (const auto& h : data->halfspaces) rec.add_le(h.a, 0);
      for (std::size_t j = 0; j < dim; ++j) {
        rec.upper_bound(j, 1);
        rec.lower_bound(j, -1);
      }
      Vec o(dim);
      o[i] = sign;
      rec.maximize(std::move(o));
      if (sgn(rec.solve().objective) > 0) {
        data->bounded = false;
        break;
      }
    }
  }
  if (data->bounded) {
    data->vertices = vertices_from_hrep(data->halfspaces, dim);
    data->interior = centroid(data->vertices);
  } else {
    data->interior = std::move(centre);
  }
  OpenHPolytope out;
  out.data_ = std::move(data);
  return out;
}

const std::vector<Vec>& OpenHPolytope::closure_vertices() const {
  if (!data_->bounded) throw Error(ErrorCode::UnsupportedForm, "unbounded H-polytope has no vertex description");
  return data_->vertices;
}

ClosedVPolytope ClosedVPolytope::create(std::vector<Vec> points) {
  if (points.empty()) throw Error(ErrorCode::EmptyBody, "V-polytope without points");
  const std::size_t dim = points.front().size();
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "V-polytope of dimension 0");
  if (dim > kMaxPolytopeDim) throw Error(ErrorCode::UnsupportedDim, "V-polytopes are limited to dimension 3");
  for (const auto& p : points) {
    if (p.size() != dim) throw Error(ErrorCode::InvalidArgument, "V-polytope points have mixed dimensions");
  }
  auto data = std::make_shared<Data>();
  data->dim = dim;
  data->vertices = extreme_points(std::move(points));
  if (data->vertices.size() > kMaxPolytopeVertices) {
    throw Error(ErrorCode::EnumerationOverflow, "more than 32 vertices");
  }
  data->hrep = hrep_from_points(data->vertices, dim);
  data->full = linalg::affine_rank(data->vertices) == static_cast<int>(dim);
  ClosedVPolytope out;
  out.data_ = std::move(data);
  return out;
}

// ---------------------------------------------------------------------------

std::size_t ConvexBody::dim() const {
  return std::visit(overloaded{[](const Interval&) -> std::size_t { return 1; },
                               [](const Box& b) { return b.lo.size(); },
                               [](const OpenHPolytope& h) { return h.dim(); },
                               [](const ClosedVPolytope& v) { return v.dim(); },
                               [](const Fattened& f) { return f.base.dim(); }},
                    form_);
}

bool ConvexBody::is_open() const {
  return std::visit(overloaded{[](const Interval& i) { return i.open; }, [](const Box& b) { return b.open; },
                               [](const OpenHPolytope&) { return true; },
                               [](const ClosedVPolytope&) { return false; },
                               [](const Fattened& f) { return f.strict; }},
                    form_);
}

bool ConvexBody::is_bounded() const {
  if (auto b = box_view(*this)) {
    for (std::size_t i = 0; i < b->lo.size(); ++i) {
      if (!b->lo[i].is_finite() || !b->hi[i].is_finite()) return false;
    }
    return true;
  }
  if (auto h = as<OpenHPolytope>()) return h->bounded();
  return true;
}

ConvexBody open_interval(ExtRational lo, ExtRational hi) {
  check_box({lo}, {hi}, true);
  return Interval{std::move(lo), std::move(hi), true};
}

ConvexBody closed_interval(ExtRational lo, ExtRational hi) {
  check_box({lo}, {hi}, false);
  return Interval{std::move(lo), std::move(hi), false};
}

ConvexBody open_box(std::vector<ExtRational> lo, std::vector<ExtRational> hi) {
  check_box(lo, hi, true);
  return Box{std::move(lo), std::move(hi), true};
}

ConvexBody closed_box(std::vector<ExtRational> lo, std::vector<ExtRational> hi) {
  check_box(lo, hi, false);
  return Box{std::move(lo), std::move(hi), false};
}

ConvexBody open_hpolytope(std::size_t dim, std::vector<Halfspace> halfspaces) {
  return OpenHPolytope::create(dim, std::move(halfspaces));
}

ConvexBody closed_vpolytope(std::vector<Vec> points) { return ClosedVPolytope::create(std::move(points)); }

ConvexBody fattened(const ConvexBody& base, const Rational& radius, bool strict) {
  if (base.is_open()) throw Error(ErrorCode::UnsupportedForm, "fattened base must be closed");
  return fatten(base, radius, strict);
}

ConvexBody point_body(const Vec& y) {
  if (y.size() == 1) return closed_interval(y[0], y[0]);
  std::vector<ExtRational> b(y.begin(), y.end());
  return closed_box(b, b);
}

// ---------------------------------------------------------------------------

Membership membership(const ConvexBody& body, const Vec& y) {
  if (y.size() != body.dim()) throw Error(ErrorCode::InvalidArgument, "point has wrong dimension");
  if (auto b = box_view(body)) return box_membership(*b, y);
  if (auto h = body.as<OpenHPolytope>()) {
    bool any = false;
    const Rational s = halfspace_slack(h->halfspaces(), y, any);
    if (!any) return {Position::Inside, ExtRational::pos_inf()};
    if (sgn(s) > 0) return {Position::Inside, s};
    if (sgn(s) == 0) return {Position::Boundary, ExtRational(0)};
    return {Position::Outside, hpoly_distance(*h, y)};
  }
  if (auto v = body.as<ClosedVPolytope>()) {
    bool any = false;
    const Rational s = halfspace_slack(v->hrep(), y, any);
    if (any && sgn(s) < 0) return {Position::Outside, distance_to_hull(v->vertices(), y)};
    if (any && sgn(s) == 0) return {Position::Boundary, ExtRational(0)};
    return {Position::Inside, s};
  }
  const auto& f = std::get<Fattened>(body.form());
  const Rational d = distance_to_hull(f.base.vertices(), y);
  const int cmp = sgn(d - f.radius);
  if (cmp < 0) return {Position::Inside, Rational(f.radius - d)};
  if (cmp == 0) return {Position::Boundary, ExtRational(0)};
  return {Position::Outside, Rational(d - f.radius)};
}

bool contains(const ConvexBody& body, const Vec& y) {
  const auto m = membership(body, y);
  return m.position == Position::Inside || (m.position == Position::Boundary && !body.is_open());
}

Rational distance(const ConvexBody& body, const Vec& y) {
  if (y.size() != body.dim()) throw Error(ErrorCode::InvalidArgument, "point has wrong dimension");
  if (auto b = box_view(body)) return box_distance(*b, y);
  if (auto h = body.as<OpenHPolytope>()) return hpoly_distance(*h, y);
  if (auto v = body.as<ClosedVPolytope>()) return distance_to_hull(v->vertices(), y);
  const auto& f = std::get<Fattened>(body.form());
  const Rational d = distance_to_hull(f.base.vertices(), y) - f.radius;
  return sgn(d) < 0 ? Rational(0) : d;
}

ExtRational support(const ConvexBody& body, const Vec& c) {
  if (auto b = box_view(body)) return box_support(*b, c);
  auto vertex_max = [&](const std::vector<Vec>& pts) {
    Rational best = dot(c, pts.front());
    for (const auto& p : pts) best = std::max(best, dot(c, p));
    return best;
  };
  if (auto h = body.as<OpenHPolytope>()) {
    if (h->bounded()) return vertex_max(h->closure_vertices());
    lp::Problem p(h->dim());
    for (const auto& hs : h->halfspaces()) p.add_le(hs.a, hs.b);
    p.maximize(c);
    const auto sol = p.solve();
    if (sol.status == lp::Status::Unbounded) return ExtRational::pos_inf();
    return sol.objective;
  }
  if (auto v = body.as<ClosedVPolytope>()) return vertex_max(v->vertices());
  const auto& f = std::get<Fattened>(body.form());
  return Rational(vertex_max(f.base.vertices()) + f.radius * norm_1(c));
}

std::vector<Vec> closure_generators(const ConvexBody& body) {
  if (!body.is_bounded()) throw Error(ErrorCode::UnsupportedForm, "unbounded body has no vertex description");
  if (auto b = box_view(body)) return box_corners(*b);
  if (auto h = body.as<OpenHPolytope>()) return h->closure_vertices();
  if (auto v = body.as<ClosedVPolytope>()) return v->vertices();
  const auto& f = std::get<Fattened>(body.form());
  const std::size_t n = f.base.dim();
  std::vector<ExtRational> lo(n, ExtRational(Rational(-f.radius))), hi(n, ExtRational(f.radius));
  const auto signs = box_corners(Box{lo, hi, false});
  std::vector<Vec> out;
  for (const auto& p : f.base.vertices()) {
    for (const auto& s : signs) out.push_back(p + s);
  }
  return out;
}

Vec interior_point(const ConvexBody& body) {
  if (auto b = box_view(body)) {
    Vec y;
    for (std::size_t i = 0; i < b->lo.size(); ++i) y.push_back(axis_point(b->lo[i], b->hi[i]).value());
    return y;
  }
  if (auto h = body.as<OpenHPolytope>()) return h->interior_point();
  if (auto v = body.as<ClosedVPolytope>()) return centroid(v->vertices());
  return centroid(std::get<Fattened>(body.form()).base.vertices());
}

namespace {

std::optional<std::vector<Halfspace>> closure_hrep(const ConvexBody& body) {
  if (auto b = box_view(body)) {
    std::vector<Halfspace> out;
    const std::size_t n = b->lo.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (b->hi[i].is_finite()) {
        Vec a(n);
        a[i] = 1;
        out.push_back({a, b->hi[i].value()});
      }
      if (b->lo[i].is_finite()) {
        Vec a(n);
        a[i] = -1;
        out.push_back({a, Rational(-b->lo[i].value())});
      }
    }
    return out;
  }
  if (auto h = body.as<OpenHPolytope>()) return h->halfspaces();
  if (auto v = body.as<ClosedVPolytope>()) return v->hrep();
  return std::nullopt;
}

}  // namespace

std::optional<Vec> containment_witness(const ConvexBody& inner, const ConvexBody& outer) {
  if (inner.dim() != outer.dim()) throw Error(ErrorCode::InvalidArgument, "bodies have different dimensions");
  if (auto hs = closure_hrep(outer)) {
    for (const auto& h : *hs) {
      if (support(inner, h.a) > ExtRational(h.b)) return point_beyond(inner, h.a, h.b);
    }
    return std::nullopt;
  }
  const auto& f = std::get<Fattened>(outer.form());
  const std::size_t n = inner.dim();
  if (!inner.is_bounded()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (int sign : {1, -1}) {
        Vec c(n);
        c[i] = sign;
        if (!support(inner, c).is_finite()) return point_beyond(inner, c, support(outer, c).value());
      }
    }
  }
  for (const auto& g : closure_generators(inner)) {
    const Rational d = distance_to_hull(f.base.vertices(), g);
    if (d <= f.radius) continue;
    if (!inner.is_open()) return g;
    const Vec p = interior_point(inner);
    const Rational spread = dist_inf(g, p);
    Rational s(1, 2);
    if (sgn(spread) > 0 && (d - f.radius) / (2 * spread) < s) s = (d - f.radius) / (2 * spread);
    return g + s * (p - g);
  }
  return std::nullopt;
}

ConvexBody fatten(const ConvexBody& body, const Rational& eps, bool strict) {
  if (sgn(eps) <= 0) throw Error(ErrorCode::InvalidArgument, "fattening radius must be positive");
  // Open + closed ball stays open, so the result is strict if either is.
  const bool open = strict || body.is_open();
  if (auto b = box_view(body)) {
    Box out{{}, {}, open};
    for (std::size_t i = 0; i < b->lo.size(); ++i) {
      out.lo.push_back(b->lo[i] - ExtRational(eps));
      out.hi.push_back(b->hi[i] + ExtRational(eps));
    }
    if (body.as<Interval>()) return Interval{out.lo[0], out.hi[0], open};
    return out;
  }
  if (auto v = body.as<ClosedVPolytope>()) {
    if (v->dim() == 1) {
      return Interval{Rational(v->vertices().front()[0] - eps), Rational(v->vertices().back()[0] + eps), strict};
    }
    return Fattened{*v, eps, strict};
  }
  // ℓ∞ balls add: O_ε(O_r(B)) = O_{r+ε}(B).
  if (auto f = body.as<Fattened>()) return Fattened{f->base, f->radius + eps, open};
  throw Error(ErrorCode::UnsupportedForm, "cannot fatten a " + form_name(body));
}

ConvexBody closure(const ConvexBody& body) {
  if (auto i = body.as<Interval>()) return Interval{i->lo, i->hi, false};
  if (auto b = body.as<Box>()) return Box{b->lo, b->hi, false};
  if (auto h = body.as<OpenHPolytope>()) {
    if (!h->bounded()) throw Error(ErrorCode::UnsupportedForm, "closure of an unbounded H-polytope");
    return ClosedVPolytope::create(h->closure_vertices());
  }
  if (auto f = body.as<Fattened>()) return Fattened{f->base, f->radius, false};
  return body;
}

std::string form_name(const ConvexBody& body) {
  return std::visit(
      overloaded{[](const Interval& i) -> std::string { return i.open ? "open_interval" : "closed_interval"; },
                 [](const Box& b) -> std::string { return b.open ? "open_box" : "closed_box"; },
                 [](const OpenHPolytope&) -> std::string { return "open_hpolytope"; },
                 [](const ClosedVPolytope&) -> std::string { return "closed_vpolytope"; },
                 [](const Fattened&) -> std::string { return "fattened"; }},
      body.form());
}

std::string describe(const ConvexBody& body) {
  std::ostringstream os;
  auto axis = [&](const ExtRational& lo, const ExtRational& hi, bool open) {
    os << (open || !lo.is_finite() ? "(" : "[") << format_ext(lo) << "," << format_ext(hi)
       << (open || !hi.is_finite() ? ")" : "]");
  };
  if (auto i = body.as<Interval>()) {
    axis(i->lo, i->hi, i->open);
  } else if (auto b = body.as<Box>()) {
    for (std::size_t k = 0; k < b->lo.size(); ++k) {
      if (k) os << "x";
      axis(b->lo[k], b->hi[k], b->open);
    }
  } else if (auto h = body.as<OpenHPolytope>()) {
    os << "{";
    for (std::size_t k = 0; k < h->halfspaces().size(); ++k) {
      if (k) os << ", ";
      os << format_vec(h->halfspaces()[k].a) << ".y<" << format_rational(h->halfspaces()[k].b);
    }
    os << "}";
  } else if (auto v = body.as<ClosedVPolytope>()) {
    os << "conv{";
    for (std::size_t k = 0; k < v->vertices().size(); ++k) {
      if (k) os << ", ";
      os << format_vec(v->vertices()[k]);
    }
    os << "}";
  } else {
    const auto& f = std::get<Fattened>(body.form());
    os << "O" << (f.strict ? "" : "cl") << "[" << format_rational(f.radius) << "]("
       << describe(ConvexBody(f.base)) << ")";
  }
  return os.str();
}

}  // namespace selectra
