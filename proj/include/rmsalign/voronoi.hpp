#pragma once

#include <optional>
#include <vector>

#include "rmsalign/numeric.hpp"

namespace rmsalign {

struct VoronoiEdge {
  Line line;                     // exact bisector of the two sites
  std::optional<Point> from, to;  // absent = unbounded that way
  Point dir;                      // direction from `from` towards `to`
  int site_a = 0, site_b = 0;     // site_a < site_b
};

struct VoronoiDiagram {
  std::vector<Point> sites;
  std::vector<Point> vertices;  // sorted, distinct
  std::vector<VoronoiEdge> edges;
  std::vector<ConvexPolygon> cells;  // one per site
};

// Exact diagram by per-site halfplane intersection. Throws ValidationError on
// an empty input or repeated sites.
VoronoiDiagram voronoi(const std::vector<Point>& sites);

// The same diagram with every site, vertex and edge moved by `offset`.
VoronoiDiagram translated(const VoronoiDiagram& d, const Point& offset);

}  // namespace rmsalign
