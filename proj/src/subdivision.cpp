#include "rmsalign/subdivision.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace rmsalign {

namespace {

Point centroid_shift(const Instance& inst) { return centroid(inst.A) - centroid(inst.B); }

Matching perturbed(const Instance& inst, const Point& at, const Point& dir) {
  return optimal_matching_perturbed(inst, SymbolicPoint{at, dir});
}

// Directional derivative of the envelope at t in direction w (one-sided).
Scalar directional_derivative(const Instance& inst, const Point& t, const Point& w) {
  CostPlane pl = cost_plane(inst, perturbed(inst, t, w));
  return dot(plane_gradient(pl, t), w);
}

// f restricted to line.at(s): alpha + beta * s + gamma * s^2.
struct Restriction {
  Scalar alpha, beta, gamma;
};

Restriction restrict_to(const CostPlane& pl, const Line& line) {
  Point p = line.base(), u = line.direction();
  return {pl.c + dot(p, pl.d) + pl.m * norm2(p), dot(u, pl.d) + 2 * pl.m * dot(p, u),
          pl.m * norm2(u)};
}

Scalar eval(const Restriction& r, const Scalar& s) { return r.alpha + s * (r.beta + s * r.gamma); }

// Two or more distinct bisector lines through q means q is a vertex of the region.
bool through_vertex(const std::vector<Bisector>& bis, const Point& q) {
  std::optional<Line> first;
  for (const auto& b : bis) {
    if (!b.line.contains(q)) continue;
    if (!first) first = b.line;
    else if (*first != b.line) return true;
  }
  return false;
}

struct WalkCell {
  Scalar start;
  std::optional<Scalar> end;
  Matching matching;
  CostPlane plane;
  bool end_vertex = false;
  bool start_vertex = false;  // only set for the first cell
};

// Cells met when moving from s0 in direction sgn along the line.
std::vector<WalkCell> walk(const Instance& inst, const Line& line, const Scalar& s0, int sgn) {
  const Point u = line.direction();
  const Point w = sgn > 0 ? u : -u;
  const std::size_t guard = 10 * (inst.m() * (inst.n() - inst.m()) + 1) + 10;
  std::vector<WalkCell> out;
  Scalar s = s0;
  Matching pi = perturbed(inst, line.at(s), w);
  for (;;) {
    if (out.size() > guard) throw InternalError("line trace did not terminate");
    CostPlane pl = cost_plane(inst, pi);
    auto bis = potential_bisectors(inst, pi, line.at(s));
    WalkCell cell{s, std::nullopt, pi, pl};
    if (out.empty()) cell.start_vertex = through_vertex(bis, line.at(s));
    Restriction rp = restrict_to(pl, line);
    std::optional<Scalar> next;
    for (const auto& b : bis) {
      Restriction rq = restrict_to(b.neighbor_plane, line);
      Scalar da = rq.alpha - rp.alpha, db = rq.beta - rp.beta;
      // neighbor minus current: da + db * s, must turn negative ahead
      if (sgn * sign(db) >= 0) continue;
      Scalar root = -da / db;
      if (sgn * cmp(root, s) <= 0) continue;
      if (!next || sgn * cmp(root, *next) < 0) next = root;
    }
    if (!next) {
      out.push_back(std::move(cell));
      break;
    }
    cell.end = *next;
    cell.end_vertex = through_vertex(bis, line.at(*next));
    out.push_back(std::move(cell));
    s = *next;
    pi = perturbed(inst, line.at(s), w);
  }
  return out;
}

}  // namespace

std::vector<Bisector> potential_bisectors(const Instance& inst, const Matching& pi, const Point& t0) {
  (void)t0;  // optimal matchings on a fixed subset do not depend on the translation
  const CostPlane pl = cost_plane(inst, pi);
  std::vector<char> used(inst.n(), 0);
  for (int a : pi.matched_set) used[static_cast<std::size_t>(a)] = 1;
  std::vector<Bisector> out;
  for (int i : pi.matched_set) {
    for (std::size_t j = 0; j < inst.n(); ++j) {
      if (used[j]) continue;
      std::vector<int> cols;
      for (int a : pi.matched_set)
        if (a != i) cols.push_back(a);
      cols.push_back(static_cast<int>(j));
      std::sort(cols.begin(), cols.end());
      Matching sigma = optimal_matching_on(inst, cols, Point{0, 0});
      CostPlane q = cost_plane(inst, sigma);
      Point nd = pl.d - q.d;
      if (nd.is_zero()) continue;  // planes differ only by a constant: never an edge
      Bisector b;
      b.removed = i;
      b.added = static_cast<int>(j);
      b.keep = Halfplane(nd, q.c - pl.c, Keep::LE);
      b.line = b.keep.boundary;
      b.neighbor = std::move(sigma);
      b.neighbor_plane = std::move(q);
      out.push_back(std::move(b));
    }
  }
  return out;
}

Region region_of(const Instance& inst, const Matching& pi, const Point& witness) {
  Region r;
  r.matching = pi;
  r.plane = cost_plane(inst, pi);
  auto bis = potential_bisectors(inst, pi, witness);
  std::vector<Halfplane> hs;
  hs.reserve(bis.size());
  for (const auto& b : bis) hs.push_back(b.keep);
  r.polygon = halfplane_intersection(hs, witness);
  for (const auto& e : r.polygon.edges) {
    RegionEdge re;
    re.edge = e;
    re.neighbor = perturbed(inst, e.midpoint(), e.h.outward_normal());
    re.neighbor_plane = cost_plane(inst, re.neighbor);
    r.edges.push_back(std::move(re));
  }
  return r;
}

Region region_at(const Instance& inst, const Point& t0) {
  Matching pi = optimal_matching(inst, t0);
  for (const auto& b : potential_bisectors(inst, pi, t0))
    if (b.line.contains(t0)) throw OnBoundary("point " + to_string(t0) + " lies on " + to_string(b.line));
  return region_of(inst, pi, t0);
}

Scalar envelope_value(const Instance& inst, const Point& t) {
  return matching_cost(inst, optimal_matching(inst, t), t);
}

bool is_local_minimum_pm(const Instance& inst, const Point& t) {
  if (!plane_gradient(cost_plane(inst, optimal_matching(inst, t)), t).is_zero()) return false;
  const Point dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (const auto& w : dirs)
    if (sign(directional_derivative(inst, t, w)) < 0) return false;
  return true;
}

LineTrace trace_line(const Instance& inst, const Line& line) {
  LineTrace tr;
  tr.line = line;
  const Point u = line.direction();
  const Scalar s0 = dot(centroid_shift(inst) - line.base(), u) / norm2(u);

  auto fwd = walk(inst, line, s0, +1);
  auto bwd = walk(inst, line, s0, -1);

  // backward cells reversed, then forward cells
  for (std::size_t k = bwd.size(); k-- > 0;) {
    TraceCell c;
    c.lo = bwd[k].end;
    c.hi = bwd[k].start;
    c.matching = bwd[k].matching;
    c.plane = bwd[k].plane;
    if (!tr.cells.empty()) {
      tr.breakpoints.push_back(*c.lo);
      tr.breakpoint_vertex.push_back(bwd[k].end_vertex);
    }
    tr.cells.push_back(std::move(c));
  }
  const bool merge = tr.cells.back().plane == fwd.front().plane;
  if (merge) {
    tr.cells.back().hi = fwd.front().end;
  } else {
    tr.breakpoints.push_back(s0);
    tr.breakpoint_vertex.push_back(fwd.front().start_vertex || bwd.front().start_vertex);
  }
  for (std::size_t k = 0; k < fwd.size(); ++k) {
    if (k == 0 && merge) continue;
    TraceCell c;
    c.lo = fwd[k].start;
    c.hi = fwd[k].end;
    c.matching = fwd[k].matching;
    c.plane = fwd[k].plane;
    if (k > 0) {
      tr.breakpoints.push_back(fwd[k].start);
      tr.breakpoint_vertex.push_back(fwd[k - 1].end_vertex);
    }
    tr.cells.push_back(std::move(c));
  }

  // exact minimum of the piecewise quadratic
  bool have = false;
  for (std::size_t k = 0; k < tr.cells.size(); ++k) {
    const auto& c = tr.cells[k];
    Restriction r = restrict_to(c.plane, line);
    Scalar s = -r.beta / (2 * r.gamma);
    if (c.lo && s < *c.lo) s = *c.lo;
    if (c.hi && s > *c.hi) s = *c.hi;
    Scalar v = eval(r, s);
    if (!have || v < tr.min_value) {
      tr.min_value = v;
      tr.min_param = s;
      tr.min_cell = k;
      tr.degenerate_min = false;
      have = true;
    } else if (v == tr.min_value && s != tr.min_param) {
      tr.degenerate_min = true;
      if (s < tr.min_param) {
        tr.min_param = s;
        tr.min_cell = k;
      }
    }
  }

  const Point t = tr.min_point();
  const Point& nv = line.normal;
  tr.slope_left = directional_derivative(inst, t, -nv);
  tr.slope_right = directional_derivative(inst, t, nv);
  if (sign(tr.slope_left) < 0) tr.descent = Descent::Left;
  else if (sign(tr.slope_right) < 0) tr.descent = Descent::Right;
  else tr.descent = Descent::LocalMin;
  return tr;
}

namespace {

LocalMinResult result_at(const Instance& inst, const Point& t, const Matching& pi) {
  LocalMinResult r;
  r.t_star = t;
  r.matching = pi;
  r.plane = cost_plane(inst, pi);
  r.value = cost_at(r.plane, t);
  r.certificate = plane_gradient(r.plane, t);
  return r;
}

struct SlabSearch {
  const Instance& inst;
  VerticalSlab slab;
  std::size_t calls = 0;
  std::optional<LocalMinResult> found;

  // Shrinks the slab with vertical lines through the given abscissae; stops when
  // a vertical trace reports a local minimum.
  void search(std::vector<Scalar> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Scalar> cand;
    for (auto& x : xs)
      if (slab.inside(x)) cand.push_back(x);
    std::size_t lo = 0, hi = cand.size();
    while (lo < hi && !found) {
      std::size_t mid = lo + (hi - lo) / 2;
      LineTrace tr = trace_line(inst, Line::vertical(cand[mid]));
      ++calls;
      if (tr.descent == Descent::LocalMin) {
        found = result_at(inst, tr.min_point(), tr.cells[tr.min_cell].matching);
      } else if (tr.descent == Descent::Right) {
        slab.left = cand[mid];
        lo = mid + 1;
      } else {
        slab.right = cand[mid];
        hi = mid;
      }
    }
  }
};

// Boundary halfplane of the region met first going up (dir = +1) or down at x.
std::optional<std::size_t> crossing_edge(const Region& r, const Scalar& x, int dir) {
  std::optional<std::size_t> best;
  Scalar best_y;
  for (std::size_t k = 0; k < r.edges.size(); ++k) {
    const Halfplane& h = r.edges[k].edge.h;
    if (h.boundary.is_vertical()) continue;
    Point out = h.outward_normal();
    if (sign(out.y) != dir) continue;
    Scalar y = h.boundary.y_at(x);
    if (!best || dir * cmp(y, best_y) < 0) {
      best = k;
      best_y = y;
    }
  }
  return best;
}

}  // namespace

LocalMinResult local_minimum_pm(const Instance& inst) {
  const Point g = centroid_shift(inst);
  const Line lambda = Line::horizontal(g.y);
  LineTrace lt = trace_line(inst, lambda);
  SlabSearch ss{inst, {}, 1, std::nullopt};
  auto finish = [&](LocalMinResult r, std::size_t regions) {
    r.trace_calls = ss.calls;
    r.regions_built = regions;
    return r;
  };
  if (lt.descent == Descent::LocalMin)
    return finish(result_at(inst, lt.min_point(), lt.cells[lt.min_cell].matching), 0);

  // breakpoint parameters on a horizontal line are abscissae
  ss.search(lt.breakpoints);
  if (ss.found) return finish(*ss.found, 0);

  const Point p0{ss.slab.interior_x(), g.y};
  std::vector<Region> stack_up, stack_down;
  std::size_t built = 0;
  auto climb = [&](Region cur, int dir, std::vector<Region>& out) {
    for (;;) {
      std::vector<Scalar> xs;
      for (const auto& v : cur.polygon.vertices) xs.push_back(v.x);
      ss.search(xs);
      if (ss.found) return;
      const Scalar x = ss.slab.interior_x();
      auto k = crossing_edge(cur, x, dir);
      out.push_back(cur);
      if (!k) return;
      const Halfplane& h = cur.edges[*k].edge.h;
      const Point q{x, h.boundary.y_at(x)};
      Matching next = perturbed(inst, q, h.outward_normal());
      cur = region_of(inst, next, q);
      ++built;
    }
  };
  Region sigma0 = region_of(inst, perturbed(inst, p0, {0, 1}), p0);
  ++built;
  climb(sigma0, +1, stack_up);
  if (ss.found) return finish(*ss.found, built);
  // sigma0 is already on the upward stack; start the downward pass below it
  {
    const Scalar x = ss.slab.interior_x();
    auto k = crossing_edge(sigma0, x, -1);
    if (k) {
      const Halfplane& h = sigma0.edges[*k].edge.h;
      const Point q{x, h.boundary.y_at(x)};
      Region below = region_of(inst, perturbed(inst, q, h.outward_normal()), q);
      ++built;
      climb(std::move(below), -1, stack_down);
      if (ss.found) return finish(*ss.found, built);
    }
  }

  std::vector<const Region*> all;
  for (auto it = stack_down.rbegin(); it != stack_down.rend(); ++it) all.push_back(&*it);
  for (const auto& r : stack_up) all.push_back(&r);
  for (const Region* r : all) {
    Point v = plane_vertex(r->plane);
    if (!ss.slab.inside(v.x) || !r->polygon.contains(v)) continue;
    if (!is_local_minimum_pm(inst, v)) continue;
    return finish(result_at(inst, v, r->matching), built);
  }
  throw InternalError("slab scan found no local minimum");
}

Subdivision build_subdivision(const Instance& inst, const BuildOptions& opts) {
  if (inst.m() > opts.max_m)
    throw BudgetExceeded("build_subdivision refuses m = " + std::to_string(inst.m()) + " > " +
                         std::to_string(opts.max_m));
  Subdivision sub;
  std::map<CostPlane, std::size_t> index;
  std::deque<std::size_t> queue;
  const Point start = centroid_shift(inst);
  const Point generic{1, Scalar(1, 4294967296UL)};
  Region r0 = region_of(inst, perturbed(inst, start, generic), start);
  index.emplace(r0.plane, 0);
  sub.regions.push_back(std::move(r0));
  queue.push_back(0);
  std::set<std::pair<std::size_t, std::size_t>> adj;
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < sub.regions[cur].edges.size(); ++k) {
      const RegionEdge& e = sub.regions[cur].edges[k];
      auto it = index.find(e.neighbor_plane);
      std::size_t other;
      if (it == index.end()) {
        if (sub.regions.size() >= opts.max_regions)
          throw BudgetExceeded("subdivision exceeds " + std::to_string(opts.max_regions) + " regions");
        other = sub.regions.size();
        Matching nb = e.neighbor;
        Point q = e.edge.midpoint();
        index.emplace(e.neighbor_plane, other);
        sub.regions.push_back(region_of(inst, nb, q));
        queue.push_back(other);
      } else {
        other = it->second;
      }
      adj.insert({std::min(cur, other), std::max(cur, other)});
    }
  }
  sub.adjacency.assign(adj.begin(), adj.end());
  std::set<Point> verts;
  for (const auto& r : sub.regions)
    for (const auto& v : r.polygon.vertices) verts.insert(v);
  sub.vertices.assign(verts.begin(), verts.end());
  return sub;
}

LocalMinResult global_minimum_pm(const Instance& inst, const Subdivision& sub) {
  struct Cand {
    Point t;
    Scalar v;
    std::size_t region;
  };
  std::optional<Cand> best;
  auto consider = [&](const Point& t, const Scalar& v, std::size_t r) {
    if (!best || v < best->v) {
      best = Cand{t, v, r};
      return;
    }
    if (v > best->v) return;
    // equal value: prefer a stationary point, then the smaller translation
    bool cur_flat = plane_gradient(sub.regions[best->region].plane, best->t).is_zero();
    bool new_flat = plane_gradient(sub.regions[r].plane, t).is_zero();
    if ((new_flat && !cur_flat) || (new_flat == cur_flat && t < best->t)) best = Cand{t, v, r};
  };
  for (std::size_t i = 0; i < sub.regions.size(); ++i) {
    const Region& r = sub.regions[i];
    Point v = plane_vertex(r.plane);
    if (r.polygon.contains(v)) {
      consider(v, cost_at(r.plane, v), i);
      continue;
    }
    for (const auto& e : r.polygon.edges) {
      const Line& l = e.h.boundary;
      Point u = l.direction();
      Scalar s = dot(v - l.base(), u) / norm2(u);
      // the edge runs from `from` to `to` along its ccw direction
      const bool along = sign(dot(e.h.ccw_direction(), u)) > 0;
      const auto& lo_pt = along ? e.from : e.to;
      const auto& hi_pt = along ? e.to : e.from;
      std::optional<Scalar> lo, hi;
      if (lo_pt) lo = l.param_of(*lo_pt);
      if (hi_pt) hi = l.param_of(*hi_pt);
      if (lo && s < *lo) s = *lo;
      if (hi && s > *hi) s = *hi;
      Point t = l.at(s);
      consider(t, cost_at(r.plane, t), i);
    }
  }
  if (!best) throw InternalError("empty subdivision");
  return result_at(inst, best->t, sub.regions[best->region].matching);
}

LocalMinResult global_minimum_pm(const Instance& inst, const BuildOptions& opts) {
  Subdivision sub = build_subdivision(inst, opts);
  LocalMinResult r = global_minimum_pm(inst, sub);
  r.regions_built = sub.regions.size();
  return r;
}

}  // namespace rmsalign
