#pragma once

#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "selectra/polytope.hpp"
#include "selectra/rational.hpp"

namespace selectra {

/// (lo, hi) or [lo, hi] in ℝ; infinite endpoints are always excluded.
struct Interval {
  ExtRational lo;
  ExtRational hi;
  bool open = true;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Product of intervals, either all open or all closed.
struct Box {
  std::vector<ExtRational> lo;
  std::vector<ExtRational> hi;
  bool open = true;
  friend bool operator==(const Box&, const Box&) = default;
};

/// {y : a·y < b for every halfspace}, nonempty and full-dimensional.
class OpenHPolytope {
 public:
  /// Throws EmptyBody when the strict system has no solution.
  static OpenHPolytope create(std::size_t dim, std::vector<Halfspace> halfspaces);

  std::size_t dim() const { return data_->dim; }
  /// Normalised (‖a‖₁ = 1) halfspaces in input order.
  const std::vector<Halfspace>& halfspaces() const { return data_->halfspaces; }
  bool bounded() const { return data_->bounded; }
  /// Vertex centroid of the closure when bounded, otherwise the centre of a
  /// largest inscribed ℓ∞ ball (radius capped at 1).
  const Vec& interior_point() const { return data_->interior; }
  /// Vertices of the closure. Throws UnsupportedForm when unbounded.
  const std::vector<Vec>& closure_vertices() const;

  friend bool operator==(const OpenHPolytope& a, const OpenHPolytope& b) {
    return a.data_->halfspaces == b.data_->halfspaces;
  }

 private:
  struct Data {
    std::size_t dim;
    std::vector<Halfspace> halfspaces;
    bool bounded;
    Vec interior;
    std::vector<Vec> vertices;
  };
  std::shared_ptr<const Data> data_;
};

/// conv(vertices), n ≤ 3, at most 32 extreme points.
class ClosedVPolytope {
 public:
  /// Keeps only extreme points. Throws EmptyBody, UnsupportedDim,
  /// EnumerationOverflow.
  static ClosedVPolytope create(std::vector<Vec> points);

  std::size_t dim() const { return data_->dim; }
  const std::vector<Vec>& vertices() const { return data_->vertices; }
  const std::vector<Halfspace>& hrep() const { return data_->hrep; }
  bool full_dimensional() const { return data_->full; }

  friend bool operator==(const ClosedVPolytope& a, const ClosedVPolytope& b) {
    return a.data_->vertices == b.data_->vertices;
  }

 private:
  struct Data {
    std::size_t dim;
    std::vector<Vec> vertices;
    std::vector<Halfspace> hrep;
    bool full;
  };
  std::shared_ptr<const Data> data_;
};

/// {y : dist∞(y, base) < radius} (strict) or ≤ radius. Fattened boxes and
/// intervals are boxes again, so the base is always a V-polytope.
struct Fattened {
  ClosedVPolytope base;
  Rational radius;
  bool strict = true;
  friend bool operator==(const Fattened&, const Fattened&) = default;
};

/// One of the supported convex body forms.
class ConvexBody {
 public:
  using Form = std::variant<Interval, Box, OpenHPolytope, ClosedVPolytope, Fattened>;

  template <typename T>
    requires std::is_constructible_v<Form, T>
  ConvexBody(T form) : form_(std::move(form)) {}  // NOLINT

  const Form& form() const { return form_; }
  template <typename T>
  const T* as() const { return std::get_if<T>(&form_); }

  std::size_t dim() const;
  /// Open bodies: open intervals/boxes, H-polytopes, strict fattenings.
  bool is_open() const;
  bool is_bounded() const;

  friend bool operator==(const ConvexBody&, const ConvexBody&) = default;

 private:
  Form form_;
};

// Validating constructors. Errors: EmptyBody / EmptyInterval / InvalidArgument.
ConvexBody open_interval(ExtRational lo, ExtRational hi);
ConvexBody closed_interval(ExtRational lo, ExtRational hi);
ConvexBody open_box(std::vector<ExtRational> lo, std::vector<ExtRational> hi);
ConvexBody closed_box(std::vector<ExtRational> lo, std::vector<ExtRational> hi);
ConvexBody open_hpolytope(std::size_t dim, std::vector<Halfspace> halfspaces);
ConvexBody closed_vpolytope(std::vector<Vec> points);
/// Same as fatten(base, radius, strict) for a closed V-polytope or box base.
ConvexBody fattened(const ConvexBody& base, const Rational& radius, bool strict);
ConvexBody point_body(const Vec& y);

enum class Position { Inside, Boundary, Outside };

struct Membership {
  /// Inside = topological interior; Boundary = closure minus interior.
  Position position;
  /// For Inside, the ℓ∞ distance to the complement (+∞ for all of ℝⁿ).
  /// For Outside, the ℓ∞ distance to the body. Zero on the boundary.
  ExtRational margin;
};

Membership membership(const ConvexBody& body, const Vec& y);
bool contains(const ConvexBody& body, const Vec& y);

/// ℓ∞ distance from y to the closure of the body.
Rational distance(const ConvexBody& body, const Vec& y);

/// sup { c·y : y ∈ body }.
ExtRational support(const ConvexBody& body, const Vec& c);

/// Finite point set whose hull is the closure. Throws UnsupportedForm for
/// unbounded bodies. Not necessarily minimal.
std::vector<Vec> closure_generators(const ConvexBody& body);

/// Deterministic member of the body; for open bodies an interior point.
///  interval/box axis: midpoint, (c,∞) ↦ c+1, (−∞,c) ↦ c−1, ℝ ↦ 0;
///  bounded H-polytope: vertex centroid of the closure;
///  unbounded H-polytope: inscribed-ball centre;
///  V-polytope: vertex centroid; fattening: representative of the base.
Vec interior_point(const ConvexBody& body);

/// nullopt when cl(inner) ⊆ cl(outer); otherwise a point of `inner` lying
/// outside cl(outer). For open or closed bodies of the same kind this decides
/// inner ⊆ outer exactly.
std::optional<Vec> containment_witness(const ConvexBody& inner, const ConvexBody& outer);

/// ε-fattening under ℓ∞. Intervals and boxes are fattened in closed form;
/// V-polytopes become Fattened and Fattened bodies grow their radius. The
/// result is open when `strict` is set or the body is already open.
/// Errors: UnsupportedForm (H-polytopes).
ConvexBody fatten(const ConvexBody& body, const Rational& eps, bool strict);

/// Errors: UnsupportedForm (unbounded H-polytope), EnumerationOverflow.
ConvexBody closure(const ConvexBody& body);

/// Tag used in serialised instances.
std::string form_name(const ConvexBody& body);
std::string describe(const ConvexBody& body);

}  // namespace selectra
