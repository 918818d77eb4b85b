#include "rmsalign/hausdorff2d.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rmsalign {

namespace {

// One summand: squared distance from t to the nearest of `centers`.
// Group 0 sums over b (centers a - b), group 1 over a (centers a - b_k).
struct Term {
  std::vector<Point> centers;
  int group = 0;
};

QuadAlg sqd(const AlgPoint& t, const Point& c) {
  QuadAlg dx = t.x - QuadAlg(c.x), dy = t.y - QuadAlg(c.y);
  return dx * dx + dy * dy;
}

struct Model {
  Variant variant;
  std::vector<Term> terms;
  long size[2] = {0, 0};

  Model(const Instance& inst, Variant v) : variant(v) {
    for (const auto& b : inst.B) {
      Term t;
      for (const auto& a : inst.A) t.centers.push_back(a - b);
      terms.push_back(std::move(t));
    }
    size[0] = static_cast<long>(inst.m());
    if (v != Variant::Uni) {
      for (const auto& a : inst.A) {
        Term t;
        t.group = 1;
        for (const auto& b : inst.B) t.centers.push_back(a - b);
        terms.push_back(std::move(t));
      }
      size[1] = static_cast<long>(inst.n());
    }
  }

  // nearest centers of term k at t, ascending index
  std::vector<int> active(std::size_t k, const AlgPoint& t, QuadAlg* value = nullptr) const {
    std::vector<int> out;
    QuadAlg best;
    const auto& cs = terms[k].centers;
    for (std::size_t s = 0; s < cs.size(); ++s) {
      QuadAlg v = sqd(t, cs[s]);
      int c = out.empty() ? -1 : compare(v, best);
      if (c < 0) {
        out.assign(1, static_cast<int>(s));
        best = v;
      } else if (c == 0) {
        out.push_back(static_cast<int>(s));
      }
    }
    if (value) *value = best;
    return out;
  }

  std::pair<QuadAlg, QuadAlg> group_values(const AlgPoint& t) const {
    QuadAlg v[2] = {0, 0};
    for (std::size_t k = 0; k < terms.size(); ++k) {
      QuadAlg x;
      active(k, t, &x);
      v[terms[k].group] = v[terms[k].group] + x;
    }
    return {v[0], v[1]};
  }

  QuadAlg value(const AlgPoint& t) const {
    auto [v0, v1] = group_values(t);
    switch (variant) {
      case Variant::Uni: return v0;
      case Variant::L1: return v0 + v1;
      case Variant::Linf: return v0 < v1 ? v1 : v0;
    }
    return v0;
  }

  // one-sided derivative at t in direction w
  QuadAlg derivative(const AlgPoint& t, const Point& w) const {
    QuadAlg d[2] = {0, 0};
    for (std::size_t k = 0; k < terms.size(); ++k) {
      std::optional<QuadAlg> lo;
      for (int s : active(k, t)) {
        const Point& c = terms[k].centers[static_cast<std::size_t>(s)];
        QuadAlg g = QuadAlg(2 * w.x) * (t.x - QuadAlg(c.x)) + QuadAlg(2 * w.y) * (t.y - QuadAlg(c.y));
        if (!lo || g < *lo) lo = g;
      }
      d[terms[k].group] = d[terms[k].group] + *lo;
    }
    if (variant == Variant::Uni) return d[0];
    if (variant == Variant::L1) return d[0] + d[1];
    auto [v0, v1] = group_values(t);
    int c = compare(v0, v1);
    if (c > 0) return d[0];
    if (c < 0) return d[1];
    return d[0] < d[1] ? d[1] : d[0];
  }

  // Gradients of every active smooth piece of the chosen groups' sum.
  std::vector<AlgPoint> piece_gradients(const AlgPoint& t, bool g0, bool g1) const {
    std::vector<AlgPoint> acc{AlgPoint(QuadAlg(0), QuadAlg(0))};
    for (std::size_t k = 0; k < terms.size(); ++k) {
      if ((terms[k].group == 0 && !g0) || (terms[k].group == 1 && !g1)) continue;
      std::vector<AlgPoint> next;
      for (const auto& base : acc)
        for (int s : active(k, t)) {
          const Point& c = terms[k].centers[static_cast<std::size_t>(s)];
          next.push_back({base.x + QuadAlg(2) * (t.x - QuadAlg(c.x)),
                          base.y + QuadAlg(2) * (t.y - QuadAlg(c.y))});
        }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      if (next.size() > 65536) throw InternalError("too many tied pieces at one point");
      acc = std::move(next);
    }
    return acc;
  }

  // A descent direction at t (any positive multiple), or nothing at a local minimum.
  std::optional<AlgPoint> descent(const AlgPoint& t) const {
    auto first_nonzero = [](const std::vector<AlgPoint>& gs) -> std::optional<AlgPoint> {
      for (const auto& g : gs)
        if (sign(g.x) != 0 || sign(g.y) != 0) return AlgPoint(-g.x, -g.y);
      return std::nullopt;
    };
    if (variant == Variant::Uni) return first_nonzero(piece_gradients(t, true, false));
    if (variant == Variant::L1) return first_nonzero(piece_gradients(t, true, true));
    auto [v0, v1] = group_values(t);
    int c = compare(v0, v1);
    if (c > 0) return first_nonzero(piece_gradients(t, true, false));
    if (c < 0) return first_nonzero(piece_gradients(t, false, true));
    auto G0 = piece_gradients(t, true, false), G1 = piece_gradients(t, false, true);
    for (const auto& p : G0)
      for (const auto& q : G1) {
        QuadAlg cr = p.x * q.y - p.y * q.x, dt = p.x * q.x + p.y * q.y;
        if (sign(cr) == 0 && sign(dt) <= 0) continue;  // origin on the segment
        // minus the (scaled) nearest point of the segment to the origin
        QuadAlg ux = q.x - p.x, uy = q.y - p.y;
        QuadAlg uu = ux * ux + uy * uy;
        QuadAlg s = -(p.x * ux + p.y * uy);
        if (sign(s) < 0) s = 0;
        if (s > uu) s = uu;
        return AlgPoint(-(p.x * uu + s * ux), -(p.y * uu + s * uy));
      }
    return std::nullopt;
  }
};

// Along x = x0 every term is y^2 + x0^2 + (slope * y + icpt) for its nearest center.
struct Profile {
  std::vector<Scalar> ys;  // distinct breakpoints, increasing
  // per interval (ys.size() + 1 of them), the center index of every term
  std::vector<std::vector<int>> centers;
};

Profile line_profile(const Model& md, const Scalar& x0) {
  struct Change {
    Scalar y;
    std::size_t term;
    int center;
  };
  std::vector<Change> changes;
  std::vector<int> initial(md.terms.size());
  for (std::size_t k = 0; k < md.terms.size(); ++k) {
    const auto& cs = md.terms[k].centers;
    std::vector<int> idx(cs.size());
    for (std::size_t s = 0; s < cs.size(); ++s) idx[s] = static_cast<int>(s);
    auto slope = [&](int s) -> Scalar { return Scalar(-2) * cs[static_cast<std::size_t>(s)].y; };
    auto icpt = [&](int s) -> Scalar {
      const Point& c = cs[static_cast<std::size_t>(s)];
      return norm2(c) - 2 * x0 * c.x;
    };
    // lower envelope as y grows: slopes decreasing
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      int c = cmp(slope(b), slope(a));
      if (c != 0) return c < 0;
      c = cmp(icpt(a), icpt(b));
      if (c != 0) return c < 0;
      return a < b;
    });
    std::vector<int> hull;
    auto meet = [&](int a, int b) -> Scalar { return (icpt(b) - icpt(a)) / (slope(a) - slope(b)); };
    for (int s : idx) {
      if (!hull.empty() && slope(hull.back()) == slope(s)) continue;
      while (hull.size() >= 2 && meet(hull[hull.size() - 2], s) <= meet(hull[hull.size() - 2], hull.back()))
        hull.pop_back();
      hull.push_back(s);
    }
    initial[k] = hull[0];
    for (std::size_t h = 1; h < hull.size(); ++h) changes.push_back({meet(hull[h - 1], hull[h]), k, hull[h]});
  }
  std::sort(changes.begin(), changes.end(), [](const Change& a, const Change& b) { return a.y < b.y; });
  Profile p;
  p.centers.push_back(initial);
  for (std::size_t i = 0; i < changes.size();) {
    std::size_t j = i;
    std::vector<int> cur = p.centers.back();
    while (j < changes.size() && changes[j].y == changes[i].y) {
      cur[changes[j].term] = changes[j].center;
      ++j;
    }
    p.ys.push_back(changes[i].y);
    p.centers.push_back(std::move(cur));
    i = j;
  }
  return p;
}

// Per group: sum over the terms of |t - c|^2 = M |t|^2 - 2 <S, t> + Q.
struct GroupSums {
  Point S[2];
  Scalar Q[2];
};

GroupSums sums_for(const Model& md, const std::vector<int>& centers) {
  GroupSums g{{Point{0, 0}, Point{0, 0}}, {0, 0}};
  for (std::size_t k = 0; k < md.terms.size(); ++k) {
    const Point& c = md.terms[k].centers[static_cast<std::size_t>(centers[k])];
    int grp = md.terms[k].group;
    g.S[grp] += c;
    g.Q[grp] += norm2(c);
  }
  return g;
}

// Quadratic in y of group g along x = x0.
Quadratic along(const Model& md, const GroupSums& s, int g, const Scalar& x0) {
  const Scalar M(md.size[g]);
  return {M, -2 * s.S[g].y, M * x0 * x0 - 2 * s.S[g].x * x0 + s.Q[g]};
}

Scalar qeval(const Quadratic& q, const Scalar& y) { return q.a0 + y * (q.a1 + y * q.a2); }

struct LineMin {
  QuadAlg y, value;
  bool degenerate = false;
  bool at_breakpoint = false;
};

LineMin minimize_on_line(const Model& md, const Profile& pr, const Scalar& x0) {
  std::optional<LineMin> best;
  auto offer = [&](const QuadAlg& y, const QuadAlg& v) {
    if (!best) {
      best = LineMin{y, v};
      return;
    }
    int c = compare(v, best->value);
    if (c < 0) {
      best = LineMin{y, v};
    } else if (c == 0 && y != best->y) {
      bool lower = y < best->y;
      best->degenerate = true;
      if (lower) best->y = y;
    }
  };
  for (std::size_t i = 0; i < pr.centers.size(); ++i) {
    GroupSums s = sums_for(md, pr.centers[i]);
    std::optional<Scalar> lo, hi;
    if (i > 0) lo = pr.ys[i - 1];
    if (i < pr.ys.size()) hi = pr.ys[i];
    auto inside = [&](const QuadAlg& y) {
      return (!lo || QuadAlg(*lo) <= y) && (!hi || y <= QuadAlg(*hi));
    };
    Quadratic q0 = along(md, s, 0, x0);
    if (md.variant != Variant::Linf) {
      Quadratic q = q0;
      if (md.variant == Variant::L1) {
        Quadratic q1 = along(md, s, 1, x0);
        q = {q0.a2 + q1.a2, q0.a1 + q1.a1, q0.a0 + q1.a0};
      }
      Scalar y = -q.a1 / (2 * q.a2);
      if (lo && y < *lo) y = *lo;
      if (hi && y > *hi) y = *hi;
      offer(y, qeval(q, y));
      continue;
    }
    Quadratic q1 = along(md, s, 1, x0);
    std::vector<QuadAlg> cand;
    if (lo) cand.emplace_back(*lo);
    if (hi) cand.emplace_back(*hi);
    cand.emplace_back(-q0.a1 / (2 * q0.a2));
    cand.emplace_back(-q1.a1 / (2 * q1.a2));
    Scalar c2 = q0.a2 - q1.a2, c1 = q0.a1 - q1.a1, c0 = q0.a0 - q1.a0;
    if (sgn(c2) != 0 || sgn(c1) != 0)
      for (auto& r : quadratic_roots(c2, c1, c0)) cand.push_back(r);
    for (const auto& y : cand) {
      if (!inside(y)) continue;
      QuadAlg v0 = eval_quadratic(q0.a2, q0.a1, q0.a0, y), v1 = eval_quadratic(q1.a2, q1.a1, q1.a0, y);
      offer(y, v0 < v1 ? v1 : v0);
    }
  }
  if (!best) throw InternalError("empty line profile");
  for (const auto& y : pr.ys)
    if (QuadAlg(y) == best->y) best->at_breakpoint = true;
  return *best;
}

LineDecision decide(const Model& md, const Scalar& x0) {
  Profile pr = line_profile(md, x0);
  LineMin lm = minimize_on_line(md, pr, x0);
  LineDecision d;
  d.x0 = x0;
  d.y_bar = lm.y;
  d.value = lm.value;
  d.breakpoint_count = pr.ys.size();
  d.at_breakpoint = lm.at_breakpoint;
  d.degenerate_min = lm.degenerate;
  const AlgPoint t = d.t_bar();
  d.slope_left = md.derivative(t, {-1, 0});
  d.slope_right = md.derivative(t, {1, 0});
  if (sign(d.slope_left) < 0) {
    d.direction = Descent::Left;
  } else if (sign(d.slope_right) < 0) {
    d.direction = Descent::Right;
  } else if (auto w = md.descent(t)) {
    // stationary across the line but not a minimum: follow a descent direction
    d.direction = sign(w->x) > 0 ? Descent::Right : Descent::Left;
  } else {
    d.direction = Descent::LocalMin;
  }
  return d;
}

std::vector<int> nearest_assignment(const std::vector<Point>& from, const std::vector<Point>& to,
                                    const AlgPoint& t, int sgn_t) {
  std::vector<int> out;
  for (const auto& p : from) {
    AlgPoint q{QuadAlg(p.x) + QuadAlg(sgn_t) * t.x, QuadAlg(p.y) + QuadAlg(sgn_t) * t.y};
    int best = -1;
    QuadAlg bv;
    for (std::size_t j = 0; j < to.size(); ++j) {
      QuadAlg v = sqd(q, to[j]);
      if (best < 0 || v < bv) {
        best = static_cast<int>(j);
        bv = v;
      }
    }
    out.push_back(best);
  }
  return out;
}

// Supporting line and x-extent of a shifted Voronoi edge.
struct ShiftedEdge {
  Line line;
  std::optional<Scalar> xlo, xhi;
};

std::vector<ShiftedEdge> shifted_edges(const VoronoiDiagram& d, const Point& o) {
  std::vector<ShiftedEdge> out;
  for (const auto& e : d.edges) {
    ShiftedEdge s;
    s.line = Line(e.line.normal, e.line.offset + dot(e.line.normal, o));
    std::vector<Scalar> xs;
    if (e.from) xs.push_back(e.from->x + o.x);
    if (e.to) xs.push_back(e.to->x + o.x);
    int dx = sign(e.dir.x);
    if (xs.size() == 2) {
      s.xlo = std::min(xs[0], xs[1]);
      s.xhi = std::max(xs[0], xs[1]);
    } else if (xs.size() == 1) {
      // a ray leaving `from` along dir, or arriving at `to` along dir
      bool leaves = e.from.has_value();
      int towards = leaves ? dx : -dx;
      if (towards >= 0) s.xlo = xs[0];
      if (towards <= 0) s.xhi = xs[0];
    } else if (dx == 0) {
      s.xlo = s.xhi = s.line.offset / s.line.normal.x;
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool crosses(const ShiftedEdge& e, const VerticalSlab& slab) {
  if (slab.right && e.xlo && !(*e.xlo < *slab.right)) return false;
  if (slab.left && e.xhi && !(*slab.left < *e.xhi)) return false;
  return true;
}

}  // namespace

Scalar rms2d(const Instance& inst, const Point& t, Variant variant) {
  return rms2d(inst, AlgPoint(t), variant).rational();
}

QuadAlg rms2d(const Instance& inst, const AlgPoint& t, Variant variant) {
  return Model(inst, variant).value(t);
}

LineDecision gamma1(const Instance& inst, const Scalar& x0, Variant variant) {
  return decide(Model(inst, variant), x0);
}

bool is_local_minimum_h2(const Instance& inst, const AlgPoint& t, Variant variant) {
  return !Model(inst, variant).descent(t).has_value();
}

ParaboloidPiece paraboloid_at(const Instance& inst, const Point& t, Variant variant) {
  Model md(inst, variant);
  ParaboloidPiece p{0, Point{0, 0}, 0};
  auto [v0, v1] = md.group_values(AlgPoint(t));
  for (std::size_t k = 0; k < md.terms.size(); ++k) {
    int g = md.terms[k].group;
    if (variant == Variant::Linf && (g == 0) != !(v0 < v1)) continue;
    const Point& c = md.terms[k].centers[static_cast<std::size_t>(md.active(k, AlgPoint(t))[0])];
    p.m += 1;
    p.d -= Scalar(2) * c;
    p.c += norm2(c);
  }
  return p;
}

LocalMin2D local_min_h2(const Instance& inst, Variant variant) {
  inst.validate();
  const Model md(inst, variant);
  LocalMin2D out;
  out.variant = variant;
  VerticalSlab slab;
  std::size_t* counter = &out.stage1_calls;
  std::optional<AlgPoint> found;
  auto probe = [&](const Scalar& x) {
    LineDecision d = decide(md, x);
    ++*counter;
    if (d.direction == Descent::LocalMin) found = d.t_bar();
    else if (d.direction == Descent::Right) slab.left = x;
    else slab.right = x;
  };
  auto finish = [&](const AlgPoint& t) {
    out.t_star = t;
    out.value = md.value(t);
    out.assignment = nearest_assignment(inst.B, inst.A, t, +1);
    if (variant != Variant::Uni) out.reverse_assignment = nearest_assignment(inst.A, inst.B, t, -1);
    return out;
  };

  // shifted diagrams: VD(A) - b for every b, and VD(-B) + a for the reverse sums
  VoronoiDiagram vda = voronoi(inst.A);
  std::vector<Point> negb;
  for (const auto& b : inst.B) negb.push_back(-b);
  std::optional<VoronoiDiagram> vdb;
  if (variant != Variant::Uni) vdb = voronoi(negb);
  std::vector<std::pair<const VoronoiDiagram*, Point>> shifts;
  for (const auto& b : inst.B) shifts.emplace_back(&vda, -b);
  if (vdb)
    for (const auto& a : inst.A) shifts.emplace_back(&*vdb, a);

  // stage 1: abscissae of all shifted vertices and of vertical full-line edges
  std::vector<ShiftedEdge> edges;
  std::vector<Scalar> xs;
  for (const auto& [d, o] : shifts) {
    for (const auto& v : d->vertices) xs.push_back(v.x + o.x);
    for (auto& e : shifted_edges(*d, o)) {
      if (e.line.is_vertical() && e.xlo) xs.push_back(*e.xlo);
      edges.push_back(std::move(e));
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  out.stage1_candidates = xs.size();
  {
    std::size_t lo = 0, hi = xs.size();
    while (lo < hi && !found) {
      std::size_t mid = lo + (hi - lo) / 2;
      probe(xs[mid]);
      if (found) break;
      if (slab.left && *slab.left == xs[mid]) lo = mid + 1;
      else hi = mid;
    }
  }
  if (found) return finish(*found);

  // stage 2: intersections of the edge lines crossing the slab
  counter = &out.stage2_calls;
  {
    std::set<Line> uniq;
    for (const auto& e : edges)
      if (!e.line.is_vertical() && crosses(e, slab)) uniq.insert(e.line);
    std::vector<Line> lines(uniq.begin(), uniq.end());
    std::size_t k = count_intersections_in_slab(lines, slab);
    out.stage2_intersections = k;
    while (k > 0 && !found) {
      Point p = kth_intersection_in_slab(lines, slab, (k + 1) / 2);
      probe(p.x);
      k = count_intersections_in_slab(lines, slab);
    }
  }
  if (found) return finish(*found);

  // final slab: slices between consecutive crossing edges, bottom to top
  counter = &out.final_calls;
  const Scalar xm = slab.interior_x();
  Profile pr = line_profile(md, xm);
  auto bisector = [&](std::size_t slice_from, std::size_t slice_to) {
    // line where some term switches between the two slices
    for (std::size_t k = 0; k < md.terms.size(); ++k) {
      int c0 = pr.centers[slice_from][k], c1 = pr.centers[slice_to][k];
      if (c0 == c1) continue;
      const Point& p = md.terms[k].centers[static_cast<std::size_t>(c0)];
      const Point& q = md.terms[k].centers[static_cast<std::size_t>(c1)];
      return Line(Scalar(2) * (q - p), norm2(q) - norm2(p));
    }
    throw InternalError("slice boundary without a switching term");
  };
  auto in_slice = [&](const AlgPoint& t, std::size_t i) {
    if (!(slab.left ? QuadAlg(*slab.left) < t.x : true)) return false;
    if (!(slab.right ? t.x < QuadAlg(*slab.right) : true)) return false;
    auto side = [&](const Line& l) {  // sign of y - line(x)
      QuadAlg yl = (QuadAlg(l.offset) - QuadAlg(l.normal.x) * t.x) * QuadAlg(1 / l.normal.y);
      return compare(t.y, yl);
    };
    if (i > 0 && side(bisector(i - 1, i)) < 0) return false;
    if (i + 1 < pr.centers.size() && side(bisector(i, i + 1)) > 0) return false;
    return true;
  };
  for (std::size_t i = 0; i < pr.centers.size(); ++i) {
    GroupSums s = sums_for(md, pr.centers[i]);
    std::vector<AlgPoint> cand;
    if (variant == Variant::Uni) {
      cand.emplace_back(s.S[0] / Scalar(md.size[0]));
    } else if (variant == Variant::L1) {
      cand.emplace_back((s.S[0] + s.S[1]) / Scalar(md.size[0] + md.size[1]));
    } else {
      const Scalar M0(md.size[0]), M1(md.size[1]);
      const Point v0 = s.S[0] / M0, v1 = s.S[1] / M1;
      cand.emplace_back(v0);
      cand.emplace_back(v1);
      // points of the equality locus closest to the first vertex
      const Scalar dm = M0 - M1;
      const Point dS = s.S[0] - s.S[1];
      const Scalar dQ = s.Q[0] - s.Q[1];
      if (sgn(dm) != 0) {
        Point c = dS / dm;
        Scalar rho2 = norm2(c) - dQ / dm;
        Scalar far = sq_dist(v0, c);
        if (sgn(rho2) >= 0 && sgn(far) > 0) {
          QuadAlg k = QuadAlg::sqrt_of(rho2 / far);
          Point u = v0 - c;
          cand.emplace_back(QuadAlg(c.x) + k * QuadAlg(u.x), QuadAlg(c.y) + k * QuadAlg(u.y));
        }
      } else if (!dS.is_zero()) {
        // the locus is the line <2 dS, t> = dQ
        Point n = Scalar(2) * dS;
        Point p = v0 - ((dot(n, v0) - dQ) / norm2(n)) * n;
        cand.emplace_back(p);
      }
    }
    for (const auto& t : cand) {
      if (!in_slice(t, i)) continue;
      if (md.descent(t)) continue;
      return finish(t);
    }
  }
  if (variant != Variant::Linf) throw InternalError("final slab holds no certified minimum");

  // isolate the minimum by bisection on vertical lines
  {
    Scalar step = 1;
    while ((!slab.left || !slab.right) && !found) {
      Scalar x = !slab.left ? (slab.right ? *slab.right - step : Scalar(0)) : *slab.left + step;
      probe(x);
      step *= 2;
    }
    const Scalar width(1, 1);
    Scalar eps = width;
    for (int i = 0; i < 64; ++i) eps /= 2;
    while (!found && *slab.right - *slab.left > eps) probe((*slab.left + *slab.right) / 2);
  }
  if (found) return finish(*found);
  LineDecision d = decide(md, (*slab.left + *slab.right) / 2);
  out.exact = false;
  out.interval_lo = slab.left;
  out.interval_hi = slab.right;
  return finish(d.t_bar());
}

IcpResult icp(const Instance& inst, const Point& t0, int dim) {
  inst.validate();
  if (dim != 1 && dim != 2) throw ValidationError("icp dim must be 1 or 2");
  if (dim == 1) {
    for (const auto& p : inst.A)
      if (sgn(p.y) != 0) throw ValidationError("icp --dim 1 needs points on the x-axis");
    for (const auto& p : inst.B)
      if (sgn(p.y) != 0) throw ValidationError("icp --dim 1 needs points on the x-axis");
    if (sgn(t0.y) != 0) throw ValidationError("icp --dim 1 needs a horizontal start");
  }
  IcpResult r;
  r.t = t0;
  const Point mb = centroid(inst.B);
  const std::size_t guard = 10 * inst.n() * inst.m() + 10;
  for (;;) {
    r.assignment = nearest_assignment(inst.B, inst.A, AlgPoint(r.t), +1);
    Point sum{0, 0};
    for (int j : r.assignment) sum += inst.A[static_cast<std::size_t>(j)];
    Point next = sum / Scalar(static_cast<long>(inst.m())) - mb;
    if (next == r.t) break;
    r.t = next;
    if (++r.recenterings >= guard) {
      r.converged = false;
      r.assignment = nearest_assignment(inst.B, inst.A, AlgPoint(r.t), +1);
      break;
    }
  }
  r.value = rms2d(inst, r.t, Variant::Uni);
  return r;
}

}  // namespace rmsalign
