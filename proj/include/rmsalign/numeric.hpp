#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rmsalign/errors.hpp"

namespace rmsalign {

// Exact rational. gmpxx keeps it canonical (reduced, positive denominator).
using Scalar = mpq_class;
using Integer = mpz_class;

int sign(const Scalar& v);
Scalar parse_scalar(const std::string& text);  // "3", "-1/3", "0.25"; throws ParseError
std::string to_string(const Scalar& v);        // "p/q" or "p"
std::string to_decimal(const Scalar& v, int digits = 20);
double to_double(const Scalar& v);

struct Point {
  Scalar x, y;

  Point() = default;
  Point(Scalar x_, Scalar y_) : x(std::move(x_)), y(std::move(y_)) {}

  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator-(const Point& a) { return {-a.x, -a.y}; }
  friend Point operator*(const Scalar& k, const Point& a) { return {k * a.x, k * a.y}; }
  friend Point operator*(const Point& a, const Scalar& k) { return {k * a.x, k * a.y}; }
  friend Point operator/(const Point& a, const Scalar& k) { return {a.x / k, a.y / k}; }
  Point& operator+=(const Point& o) { x += o.x; y += o.y; return *this; }
  Point& operator-=(const Point& o) { x -= o.x; y -= o.y; return *this; }
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  // lexicographic (x, then y)
  friend bool operator<(const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
};

Scalar dot(const Point& a, const Point& b);
Scalar cross(const Point& a, const Point& b);
Scalar norm2(const Point& a);
Scalar sq_dist(const Point& p, const Point& q);
std::string to_string(const Point& p);
Point centroid(const std::vector<Point>& pts);
// Counterclockwise angular order of nonzero directions starting at angle 0.
bool angle_less(const Point& u, const Point& v);

// The locus <t, normal> = offset, stored canonically: integer coefficients with
// gcd 1 and the first nonzero normal component positive.
struct Line {
  Point normal;
  Scalar offset;

  Line() = default;
  Line(const Point& n, const Scalar& off);  // canonicalizes; throws std::invalid_argument on n = 0

  static Line vertical(const Scalar& c) { return Line({1, 0}, c); }
  static Line horizontal(const Scalar& c) { return Line({0, 1}, c); }
  static Line through(const Point& p, const Point& q);

  Scalar eval(const Point& t) const { return dot(normal, t) - offset; }
  int side(const Point& t) const { return sign(eval(t)); }
  bool contains(const Point& t) const { return side(t) == 0; }
  bool is_vertical() const { return sgn(normal.y) == 0; }
  // Parameterization t(s) = base() + s * direction(); direction has increasing x
  // (increasing y for vertical lines).
  Point direction() const;
  Point base() const;
  Point at(const Scalar& s) const { return base() + s * direction(); }
  Scalar param_of(const Point& t) const;  // assumes t on the line
  // y on a non-vertical line at abscissa x
  Scalar y_at(const Scalar& x) const { return (offset - normal.x * x) / normal.y; }

  friend bool operator==(const Line& a, const Line& b) {
    return a.normal == b.normal && a.offset == b.offset;
  }
  friend bool operator!=(const Line& a, const Line& b) { return !(a == b); }
  friend bool operator<(const Line& a, const Line& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

bool parallel(const Line& a, const Line& b);
std::optional<Point> intersect(const Line& a, const Line& b);
std::string to_string(const Line& l);

enum class Keep { LE, GE };

struct Halfplane {
  Line boundary;
  Keep keep = Keep::LE;

  Halfplane() = default;
  // {t : <normal, t> (<= or >=) offset}; canonicalizes the boundary and flips
  // `keep` when that needed a negative factor.
  Halfplane(const Point& normal, const Scalar& offset, Keep k);

  bool contains(const Point& t) const {
    int s = boundary.side(t);
    return keep == Keep::LE ? s <= 0 : s >= 0;
  }
  bool strictly_contains(const Point& t) const {
    int s = boundary.side(t);
    return keep == Keep::LE ? s < 0 : s > 0;
  }
  // Boundary direction with the kept side on its left.
  Point ccw_direction() const;
  // Unit-free normal pointing out of the kept side.
  Point outward_normal() const {
    return keep == Keep::LE ? boundary.normal : -boundary.normal;
  }
  friend bool operator==(const Halfplane& a, const Halfplane& b) {
    return a.boundary == b.boundary && a.keep == b.keep;
  }
};

// Boundary piece on one supporting halfplane; absent endpoints are at infinity.
struct PolygonEdge {
  Halfplane h;
  std::optional<Point> from, to;
  // A point in the relative interior of the edge.
  Point midpoint() const;
};

struct ConvexPolygon {
  std::vector<Point> vertices;        // counterclockwise
  std::vector<Point> unbounded_rays;  // empty when bounded
  std::vector<Halfplane> halfplanes;  // supporting, in boundary order
  std::vector<PolygonEdge> edges;     // same order as halfplanes

  bool bounded() const { return unbounded_rays.empty() && !edges.empty(); }
  bool contains(const Point& t) const;  // closure
  bool strictly_contains(const Point& t) const;
};

// Intersection of halfplanes known to contain `witness` (in the closure).
// Indices of halfplanes that do not contribute an edge go to `redundant`.
ConvexPolygon halfplane_intersection(const std::vector<Halfplane>& hs, const Point& witness,
                                     std::vector<std::size_t>* redundant = nullptr);

struct VerticalSlab {
  std::optional<Scalar> left, right;

  bool inside(const Scalar& x) const {
    return (!left || *left < x) && (!right || x < *right);
  }
  // some abscissa strictly inside
  Scalar interior_x() const;
};

// Pairwise intersection with the k-th smallest x strictly inside the slab, ties by
// smaller y; k is 1-based. Throws OutOfRange when k exceeds the count.
Point kth_intersection_in_slab(const std::vector<Line>& lines, const VerticalSlab& slab,
                               std::size_t k);
std::size_t count_intersections_in_slab(const std::vector<Line>& lines, const VerticalSlab& slab);

// Smallest value whose cumulative weight reaches half the total.
Scalar weighted_median(std::vector<std::pair<Scalar, Scalar>> items);

// p + q * sqrt(d), d >= 0 an integer. Square factors found by small-prime trial
// division are pulled out of d; a perfect-square d collapses to a rational.
class QuadAlg {
 public:
  QuadAlg() = default;
  QuadAlg(const Scalar& r) : p_(r) {}  // NOLINT implicit
  QuadAlg(int r) : p_(r) {}           // NOLINT implicit
  static QuadAlg make(const Scalar& p, const Scalar& q, const Integer& d);
  static QuadAlg sqrt_of(const Scalar& r);  // r >= 0

  const Scalar& p() const { return p_; }
  const Scalar& q() const { return q_; }
  const Integer& d() const { return d_; }
  bool is_rational() const { return sgn(q_) == 0; }
  const Scalar& rational() const { return p_; }

  QuadAlg operator-() const { return reduced(-p_, -q_, d_); }
  friend QuadAlg operator+(const QuadAlg& a, const QuadAlg& b);
  friend QuadAlg operator-(const QuadAlg& a, const QuadAlg& b) { return a + (-b); }
  friend QuadAlg operator*(const QuadAlg& a, const QuadAlg& b);
  friend bool operator==(const QuadAlg& a, const QuadAlg& b);
  friend bool operator!=(const QuadAlg& a, const QuadAlg& b) { return !(a == b); }
  friend bool operator<(const QuadAlg& a, const QuadAlg& b);
  friend bool operator<=(const QuadAlg& a, const QuadAlg& b) { return !(b < a); }
  friend bool operator>(const QuadAlg& a, const QuadAlg& b) { return b < a; }
  friend bool operator>=(const QuadAlg& a, const QuadAlg& b) { return !(a < b); }

  double to_double() const;
  std::string to_decimal(int digits = 20) const;
  // A rational within 2^-bits of the value.
  Scalar approx(unsigned bits = 96) const;

 private:
  // d already square-free
  static QuadAlg reduced(const Scalar& p, const Scalar& q, const Integer& d);

  Scalar p_{0}, q_{0};
  Integer d_{0};
};

int sign(const QuadAlg& v);
int compare(const QuadAlg& a, const QuadAlg& b);

// A point whose coordinates may be quadratic irrationals over one radicand.
struct AlgPoint {
  QuadAlg x, y;

  AlgPoint() = default;
  AlgPoint(QuadAlg x_, QuadAlg y_) : x(std::move(x_)), y(std::move(y_)) {}
  AlgPoint(const Point& p) : x(p.x), y(p.y) {}  // NOLINT implicit

  bool is_rational() const { return x.is_rational() && y.is_rational(); }
  Point rational() const { return {x.rational(), y.rational()}; }
  friend bool operator==(const AlgPoint& a, const AlgPoint& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const AlgPoint& a, const AlgPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

std::string to_string(const AlgPoint& p);

// Real roots of a2 x^2 + a1 x + a0 = 0 in increasing order (not all coefficients zero).
std::vector<QuadAlg> quadratic_roots(const Scalar& a2, const Scalar& a1, const Scalar& a0);
// Evaluate a2 x^2 + a1 x + a0 at an algebraic x.
QuadAlg eval_quadratic(const Scalar& a2, const Scalar& a1, const Scalar& a0, const QuadAlg& x);

// Rational upper bound on ln(m), m >= 1, within 1e-15.
Scalar ln_upper_bound(unsigned m);

}  // namespace rmsalign
