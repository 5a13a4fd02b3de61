#include "selectra/polytope.hpp"

#include <algorithm>
#include <functional>

#include "selectra/errors.hpp"
#include "selectra/linalg.hpp"
#include "selectra/lp.hpp"

namespace selectra {

Halfspace normalized(const Halfspace& h) {
  const Rational n = norm_1(h.a);
  if (sgn(n) == 0) throw Error(ErrorCode::InvalidArgument, "halfspace with zero normal");
  return {Rational(1) / n * h.a, Rational(h.b / n)};
}

namespace {

bool in_hull_of_others(const std::vector<Vec>& pts, std::size_t skip) {
  const std::size_t k = pts.size() - 1;
  if (k == 0) return false;
  const std::size_t n = pts[skip].size();
  lp::Problem p(k);
  for (std::size_t j = 0; j < k; ++j) p.set_nonnegative(j);
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(k);
    std::size_t col = 0;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j != skip) row[col++] = pts[j][i];
    }
    p.add_eq(std::move(row), pts[skip][i]);
  }
  p.add_eq(Vec(k, Rational(1)), 1);
  return lp::feasible(p);
}

}  // namespace

std::vector<Vec> extreme_points(std::vector<Vec> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (std::size_t i = points.size(); i-- > 0;) {
    if (points.size() > 1 && in_hull_of_others(points, i)) points.erase(points.begin() + static_cast<std::ptrdiff_t>(i));
  }
  return points;
}

namespace {

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Halfspace> hrep_from_points(const std::vector<Vec>& points, std::size_t dim) {
  if (points.empty()) throw Error(ErrorCode::EmptyBody, "hull of no points");
  if (dim > kMaxPolytopeDim) throw Error(ErrorCode::UnsupportedDim, "polytopes are limited to dimension 3");
  const Vec& p0 = points[0];
  linalg::Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - p0);
  const auto equations = diffs.empty() ? [&] {
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < dim; ++i) {
      Vec e(dim);
      e[i] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }()
                                       : linalg::nullspace(diffs, dim);
  const std::size_t r = dim - equations.size();

  std::vector<Halfspace> out;
  for (const Vec& u : equations) {
    out.push_back(normalized({u, dot(u, p0)}));
    out.push_back(normalized({Rational(-1) * u, Rational(-dot(u, p0))}));
  }
  if (r > 0) {
    for_each_subset(points.size(), r, [&](const std::vector<std::size_t>& idx) {
      linalg::Matrix rows;
      for (std::size_t i = 1; i < idx.size(); ++i) rows.push_back(points[idx[i]] - points[idx[0]]);
      for (const Vec& u : equations) rows.push_back(u);
      if (linalg::rank(rows) != dim - 1) return;
      const auto ns = linalg::nullspace(rows, dim);
      const Vec& a = ns.front();
      const Rational b = dot(a, points[idx[0]]);
      bool below = false, above = false;
      for (const auto& p : points) {
        const int s = sgn(dot(a, p) - b);
        if (s < 0) below = true;
        if (s > 0) above = true;
      }
      if (below && above) return;
      if (above) {
        out.push_back(normalized({Rational(-1) * a, Rational(-b)}));
      } else {
        out.push_back(normalized({a, b}));
      }
    });
  }
  std::sort(out.begin(), out.end(), [](const Halfspace& x, const Halfspace& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Vec> vertices_from_hrep(const std::vector<Halfspace>& hs, std::size_t dim) {
  std::vector<Vec> out;
  if (dim == 0) return {Vec{}};
  for_each_subset(hs.size(), dim, [&](const std::vector<std::size_t>& idx) {
    linalg::Matrix a;
    Vec b;
    for (std::size_t i : idx) {
      a.push_back(hs[i].a);
      b.push_back(hs[i].b);
    }
    auto y = linalg::solve_unique(a, b);
    if (!y) return;
    for (const auto& h : hs) {
      if (dot(h.a, *y) > h.b) return;
    }
    if (std::find(out.begin(), out.end(), *y) == out.end()) {
      out.push_back(std::move(*y));
      if (out.size() > kMaxPolytopeVertices) {
        throw Error(ErrorCode::EnumerationOverflow, "more than 32 vertices");
      }
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

Rational distance_to_hull(const std::vector<Vec>& points, const Vec& y) {
  const std::size_t k = points.size(), n = y.size();
  // variables: λ_1..λ_k ≥ 0, t
  lp::Problem p(k + 1);
  for (std::size_t j = 0; j < k; ++j) p.set_nonnegative(j);
  for (std::size_t i = 0; i < n; ++i) {
    Vec up(k + 1), down(k + 1);
    for (std::size_t j = 0; j < k; ++j) {
      up[j] = -points[j][i];
      down[j] = points[j][i];
    }
    up[k] = -1;
    down[k] = -1;
    p.add_le(std::move(up), -y[i]);   // y_i − Σλp ≤ t
    p.add_le(std::move(down), y[i]);  // Σλp − y_i ≤ t
  }
  Vec sum(k + 1);
  for (std::size_t j = 0; j < k; ++j) sum[j] = 1;
  p.add_eq(std::move(sum), 1);
  Vec obj(k + 1);
  obj[k] = -1;
  p.maximize(std::move(obj));
  const auto sol = p.solve();
  if (sol.status != lp::Status::Optimal) throw Error(ErrorCode::InvalidArgument, "distance LP failed");
  const Rational& t = sol.x[k];
  return sgn(t) < 0 ? Rational(0) : t;
}

Vec centroid(const std::vector<Vec>& points) {
  Vec c(points.front().size());
  for (const auto& p : points) c = c + p;
  return Rational(1, static_cast<unsigned long>(points.size())) * c;
}

}  // namespace selectra
