#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rmsalign/assignment.hpp"

namespace rmsalign {

// Equality line between the current matching and the best matching on the set
// obtained by swapping A-index `removed` for `added`.
struct Bisector {
  int removed = -1, added = -1;
  Line line;
  Halfplane keep;  // side where the current matching is no worse
  Matching neighbor;
  CostPlane neighbor_plane;
};

struct RegionEdge {
  PolygonEdge edge;
  Matching neighbor;  // optimal just beyond the edge
  CostPlane neighbor_plane;
  const Line& line() const { return edge.h.boundary; }
};

struct Region {
  ConvexPolygon polygon;
  Matching matching;
  CostPlane plane;
  std::vector<RegionEdge> edges;
};

struct Subdivision {
  std::vector<Region> regions;
  std::vector<Point> vertices;  // sorted, distinct
  std::vector<std::pair<std::size_t, std::size_t>> adjacency;  // i < j, sorted
};

struct TraceCell {
  std::optional<Scalar> lo, hi;  // parameter interval, absent = infinite
  Matching matching;
  CostPlane plane;
};

struct LineTrace {
  Line line;  // points are line.at(s)
  std::vector<TraceCell> cells;
  std::vector<Scalar> breakpoints;      // interior cell boundaries
  std::vector<bool> breakpoint_vertex;  // the line passes through a vertex there
  Scalar min_param;
  Scalar min_value;
  std::size_t min_cell = 0;
  bool degenerate_min = false;  // the line minimum value is attained more than once
  Scalar slope_left, slope_right;  // one-sided derivatives across the line at the minimum
  Descent descent = Descent::LocalMin;

  Point min_point() const { return line.at(min_param); }
};

struct LocalMinResult {
  Point t_star;
  Scalar value;
  Matching matching;
  CostPlane plane;
  Point certificate;  // gradient of the plane at t_star
  std::size_t trace_calls = 0;
  std::size_t regions_built = 0;
};

struct BuildOptions {
  std::size_t max_regions = 1000000;
  std::size_t max_m = 8;
};

std::vector<Bisector> potential_bisectors(const Instance& inst, const Matching& pi, const Point& t0);
// Throws OnBoundary if t0 lies on a potential bisector of its optimal matching.
Region region_at(const Instance& inst, const Point& t0);
// Region of `pi`; `witness` must be a point where pi is optimal.
Region region_of(const Instance& inst, const Matching& pi, const Point& witness);

LineTrace trace_line(const Instance& inst, const Line& line);
LocalMinResult local_minimum_pm(const Instance& inst);
Subdivision build_subdivision(const Instance& inst, const BuildOptions& opts = {});
LocalMinResult global_minimum_pm(const Instance& inst, const BuildOptions& opts = {});
LocalMinResult global_minimum_pm(const Instance& inst, const Subdivision& sub);

// Exact test: every matching optimal at t has zero gradient there.
bool is_local_minimum_pm(const Instance& inst, const Point& t);
// Lower envelope value min_pi f(pi, t).
Scalar envelope_value(const Instance& inst, const Point& t);

}  // namespace rmsalign
