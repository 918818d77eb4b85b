#pragma once

#include <optional>
#include <vector>

#include "rmsalign/hausdorff1d.hpp"
#include "rmsalign/instance.hpp"
#include "rmsalign/voronoi.hpp"

namespace rmsalign {

// r(t) = m |t|^2 + <d, t> + c on one cell of the overlay
struct ParaboloidPiece {
  Scalar c;
  Point d;
  long m = 0;
};

struct LineDecision {
  Scalar x0;
  QuadAlg y_bar;  // minimizer on x = x0, rational except possibly for linf
  QuadAlg value;
  Descent direction = Descent::LocalMin;
  std::size_t breakpoint_count = 0;
  bool at_breakpoint = false;
  bool degenerate_min = false;  // the minimum value on the line is attained twice
  QuadAlg slope_left, slope_right;  // one-sided derivatives towards -x and +x

  AlgPoint t_bar() const { return {QuadAlg(x0), y_bar}; }
};

struct LocalMin2D {
  AlgPoint t_star;
  QuadAlg value;
  std::vector<int> assignment;          // per b, nearest A-index (smaller index on ties)
  std::vector<int> reverse_assignment;  // per a, nearest B-index (two-sided variants)
  Variant variant = Variant::Uni;
  bool exact = true;
  // when not exact: the minimum lies on a vertical line within [lo, hi]
  std::optional<Scalar> interval_lo, interval_hi;
  std::size_t stage1_calls = 0, stage2_calls = 0, final_calls = 0;
  std::size_t stage1_candidates = 0, stage2_intersections = 0;
};

struct IcpResult {
  Point t;
  Scalar value;
  std::vector<int> assignment;
  std::size_t recenterings = 0;
  bool converged = true;  // false when the iteration guard fired
};

Scalar rms2d(const Instance& inst, const Point& t, Variant variant);
QuadAlg rms2d(const Instance& inst, const AlgPoint& t, Variant variant);
LineDecision gamma1(const Instance& inst, const Scalar& x0, Variant variant);
LocalMin2D local_min_h2(const Instance& inst, Variant variant);
// dim 1 requires every point on the x-axis.
IcpResult icp(const Instance& inst, const Point& t0, int dim);

// Exact test that t is a local minimum of the chosen variant.
bool is_local_minimum_h2(const Instance& inst, const AlgPoint& t, Variant variant);
// Piece of the variant's (uni / l1) function around a generic rational point.
ParaboloidPiece paraboloid_at(const Instance& inst, const Point& t, Variant variant);

}  // namespace rmsalign
