#pragma once

#include <string>
#include <vector>

#include "rmsalign/numeric.hpp"

namespace rmsalign {

// A = the n model points, B = the m points that get translated (1 <= m <= n).
struct Instance {
  std::vector<Point> A, B;

  std::size_t n() const { return A.size(); }
  std::size_t m() const { return B.size(); }
  // Throws ValidationError on empty sets, m > n, or duplicates within a set.
  void validate() const;
  static Instance make(std::vector<Point> a, std::vector<Point> b);

  friend bool operator==(const Instance& x, const Instance& y) { return x.A == y.A && x.B == y.B; }
};

// Injective assignment of B into A: assign[i] is the A-index for b_i.
struct Matching {
  std::vector<int> assign;
  std::vector<int> matched_set;  // sorted

  Matching() = default;
  explicit Matching(std::vector<int> a);

  friend bool operator==(const Matching& x, const Matching& y) { return x.assign == y.assign; }
  friend bool operator!=(const Matching& x, const Matching& y) { return !(x == y); }
  friend bool operator<(const Matching& x, const Matching& y) { return x.assign < y.assign; }
};

std::string to_string(const Matching& pi);

// Outcome of a line decision. Left / right are the negative / positive side of
// the line's normal (for a vertical line x = c: smaller / larger x).
enum class Descent { Left, Right, LocalMin };

std::string to_string(Descent d);

// f(pi, t) = c + <t, d> + m |t|^2
struct CostPlane {
  Scalar c;
  Point d;
  int m = 0;

  friend bool operator==(const CostPlane& x, const CostPlane& y) {
    return x.c == y.c && x.d == y.d && x.m == y.m;
  }
  friend bool operator!=(const CostPlane& x, const CostPlane& y) { return !(x == y); }
  friend bool operator<(const CostPlane& x, const CostPlane& y) {
    if (x.c != y.c) return x.c < y.c;
    return x.d < y.d;
  }
};

Scalar cost_at(const CostPlane& plane, const Point& t);
// Minimizer of the paraboloid, -d / (2m).
Point plane_vertex(const CostPlane& plane);
// Gradient at t: d + 2 m t.
Point plane_gradient(const CostPlane& plane, const Point& t);

}  // namespace rmsalign
