#pragma once

#include <vector>

#include "rmsalign/instance.hpp"

namespace rmsalign {

// t0 + eps * dir for an infinitesimal eps > 0.
struct SymbolicPoint {
  Point base;
  Point dir;
};

struct PathVertex {
  bool is_b = false;
  int index = 0;
  friend bool operator==(const PathVertex& x, const PathVertex& y) {
    return x.is_b == y.is_b && x.index == y.index;
  }
};

// One component of pi (sym. diff.) sigma. d_gamma and c_gamma are this component's
// exact share of d_pi - d_sigma and c_pi - c_sigma.
struct AlternatingPath {
  std::vector<PathVertex> vertices;  // a, b, a, b, ..., starting at an a
  bool cycle = false;
  Point d_gamma;
  Scalar c_gamma;
};

CostPlane cost_plane(const Instance& inst, const Matching& pi);
// sum |b_i + t - a_pi(i)|^2
Scalar matching_cost(const Instance& inst, const Matching& pi, const Point& t);

// Minimum-cost injective assignment of B + t into A; among optimal ones the
// lexicographically smallest assign array.
Matching optimal_matching(const Instance& inst, const Point& t);
// Optimal at at.base + eps * at.dir for all small eps > 0 (same tie rule).
Matching optimal_matching_perturbed(const Instance& inst, const SymbolicPoint& at);
// Same, with A restricted to the given sorted column subset (|cols| >= m).
Matching optimal_matching_on(const Instance& inst, const std::vector<int>& cols, const Point& t);

std::vector<AlternatingPath> symmetric_difference_paths(const Instance& inst, const Matching& pi,
                                                        const Matching& sigma);

}  // namespace rmsalign
