#include "rmsalign/voronoi.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rmsalign {

namespace {

Line shift(const Line& l, const Point& o) { return Line(l.normal, l.offset + dot(l.normal, o)); }

Halfplane shift(const Halfplane& h, const Point& o) {
  return Halfplane(h.boundary.normal, h.boundary.offset + dot(h.boundary.normal, o), h.keep);
}

std::optional<Point> shift(const std::optional<Point>& p, const Point& o) {
  if (!p) return std::nullopt;
  return *p + o;
}

}  // namespace

VoronoiDiagram voronoi(const std::vector<Point>& sites) {
  if (sites.empty()) throw ValidationError("Voronoi diagram needs at least one site");
  const std::size_t n = sites.size();
  {
    std::set<Point> seen(sites.begin(), sites.end());
    if (seen.size() != n) throw ValidationError("repeated Voronoi site");
  }
  VoronoiDiagram d;
  d.sites = sites;
  std::set<Point> verts;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Halfplane> hs;
    std::map<Line, int> other;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      // |t - a_i|^2 <= |t - a_j|^2
      Halfplane h(Scalar(2) * (sites[j] - sites[i]), norm2(sites[j]) - norm2(sites[i]), Keep::LE);
      other[h.boundary] = static_cast<int>(j);
      hs.push_back(h);
    }
    ConvexPolygon cell = halfplane_intersection(hs, sites[i]);
    for (const auto& v : cell.vertices) verts.insert(v);
    for (const auto& e : cell.edges) {
      int j = other.at(e.h.boundary);
      if (static_cast<std::size_t>(j) < i) continue;  // reported from the other cell
      d.edges.push_back({e.h.boundary, e.from, e.to, e.h.ccw_direction(), static_cast<int>(i), j});
    }
    d.cells.push_back(std::move(cell));
  }
  d.vertices.assign(verts.begin(), verts.end());
  return d;
}

VoronoiDiagram translated(const VoronoiDiagram& d, const Point& o) {
  VoronoiDiagram r;
  for (const auto& s : d.sites) r.sites.push_back(s + o);
  for (const auto& v : d.vertices) r.vertices.push_back(v + o);
  for (const auto& e : d.edges) r.edges.push_back({shift(e.line, o), shift(e.from, o), shift(e.to, o), e.dir, e.site_a, e.site_b});
  for (const auto& c : d.cells) {
    ConvexPolygon p;
    for (const auto& v : c.vertices) p.vertices.push_back(v + o);
    p.unbounded_rays = c.unbounded_rays;
    for (const auto& h : c.halfplanes) p.halfplanes.push_back(shift(h, o));
    for (const auto& e : c.edges) p.edges.push_back({shift(e.h, o), shift(e.from, o), shift(e.to, o)});
    r.cells.push_back(std::move(p));
  }
  return r;
}

}  // namespace rmsalign
