#include "rmsalign/oracles.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rmsalign {

bool MinimaSet::contains(const AlgPoint& t, const QuadAlg& value) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const MinimumEntry& e) { return e.t == t && e.value == value; });
}

namespace {

void check_limits(const Instance& inst, const OracleLimits& lim) {
  if (inst.n() > lim.max_n || inst.m() > lim.max_m)
    throw BudgetExceeded("oracle limited to n <= " + std::to_string(lim.max_n) + ", m <= " +
                         std::to_string(lim.max_m));
}

using CostMatrix = std::vector<std::vector<Scalar>>;

CostMatrix costs_at(const Instance& inst, const Point& t) {
  CostMatrix c(inst.m(), std::vector<Scalar>(inst.n()));
  for (std::size_t i = 0; i < inst.m(); ++i)
    for (std::size_t j = 0; j < inst.n(); ++j) c[i][j] = sq_dist(inst.B[i] + t, inst.A[j]);
  return c;
}

// Calls fn(assign) for every injection in lexicographic order.
template <class Fn>
void for_each_injection(std::size_t m, std::size_t n, Fn fn) {
  std::vector<int> assign(m, -1);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == m) {
      fn(assign);
      return;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      assign[i] = static_cast<int>(j);
      self(self, i + 1);
      used[j] = 0;
    }
  };
  rec(rec, 0);
}

struct Plane {
  Scalar c;
  Point d;
};

Plane plane_of(const Instance& inst, const std::vector<int>& assign) {
  Plane p{0, Point{0, 0}};
  for (std::size_t i = 0; i < assign.size(); ++i) {
    Point diff = inst.B[i] - inst.A[static_cast<std::size_t>(assign[i])];
    p.c += norm2(diff);
    p.d += Scalar(2) * diff;
  }
  return p;
}

Scalar plane_value(const Plane& p, long m, const Point& t) { return p.c + dot(p.d, t) + m * norm2(t); }

// Is some injection strictly cheaper than `cost` at t, or equally cheap with a
// different sum of matched A-points?
bool beaten(const Instance& inst, const CostMatrix& C, const Scalar& cost, const Point& a_sum) {
  const std::size_t m = inst.m(), n = inst.n();
  std::vector<std::vector<int>> order(m);
  std::vector<Scalar> tail(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) order[i].push_back(static_cast<int>(j));
    std::sort(order[i].begin(), order[i].end(), [&](int x, int y) {
      return C[i][static_cast<std::size_t>(x)] < C[i][static_cast<std::size_t>(y)];
    });
  }
  for (std::size_t i = m; i-- > 0;) tail[i] = tail[i + 1] + C[i][static_cast<std::size_t>(order[i][0])];
  std::vector<char> used(n, 0);
  bool found = false;
  auto rec = [&](auto&& self, std::size_t i, const Scalar& partial, const Point& sum) -> void {
    if (found) return;
    if (i == m) {
      if (partial < cost || sum != a_sum) found = true;
      return;
    }
    for (int j : order[i]) {
      auto ju = static_cast<std::size_t>(j);
      if (used[ju]) continue;
      Scalar next = partial + C[i][ju];
      if (next + tail[i + 1] > cost) break;  // later entries are no cheaper
      used[ju] = 1;
      self(self, i + 1, next, sum + inst.A[ju]);
      used[ju] = 0;
      if (found) return;
    }
  };
  rec(rec, 0, Scalar(0), Point{0, 0});
  return found;
}

}  // namespace

Matching brute_matching(const Instance& inst, const Point& t, const OracleLimits& lim) {
  check_limits(inst, lim);
  CostMatrix C = costs_at(inst, t);
  std::optional<Scalar> best;
  std::vector<int> best_assign;
  for_each_injection(inst.m(), inst.n(), [&](const std::vector<int>& a) {
    Scalar s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += C[i][static_cast<std::size_t>(a[i])];
    if (!best || s < *best) {
      best = s;
      best_assign = a;
    }
  });
  return Matching(best_assign);
}

MinimaSet enumerate_pm_minima(const Instance& inst, const OracleLimits& lim) {
  check_limits(inst, lim);
  const long m = static_cast<long>(inst.m());
  const Point mb = centroid(inst.B);
  std::map<std::pair<Point, Scalar>, bool> decided;
  MinimaSet out;
  for_each_injection(inst.m(), inst.n(), [&](const std::vector<int>& a) {
    Point sum{0, 0};
    for (int j : a) sum += inst.A[static_cast<std::size_t>(j)];
    const Point t = sum / Scalar(m) - mb;
    const Plane pl = plane_of(inst, a);
    const Scalar f = plane_value(pl, m, t);
    auto key = std::make_pair(t, f);
    if (decided.count(key)) return;
    CostMatrix C = costs_at(inst, t);
    bool keep = !beaten(inst, C, f, sum);
    decided[key] = keep;
    if (!keep) return;
    MinimumEntry e;
    e.t = AlgPoint(t);
    e.value = f;
    e.assignment = a;
    Point g = pl.d + Scalar(2 * m) * t;
    e.certificate = {g.x, g.y};
    out.entries.push_back(std::move(e));
  });
  std::sort(out.entries.begin(), out.entries.end(), [](const MinimumEntry& x, const MinimumEntry& y) {
    if (x.value != y.value) return x.value < y.value;
    return x.t < y.t;
  });
  return out;
}

LineTrace brute_line_trace(const Instance& inst, const Line& line, const OracleLimits& lim) {
  check_limits(inst, lim);
  const long m = static_cast<long>(inst.m());
  const Point base = line.base(), u = line.direction();
  struct Piece {
    Scalar slope, icpt;
  };
  std::vector<std::vector<int>> all;
  std::vector<Plane> planes;
  std::vector<Piece> pieces;
  for_each_injection(inst.m(), inst.n(), [&](const std::vector<int>& a) {
    Plane p = plane_of(inst, a);
    pieces.push_back({dot(u, p.d), p.c + dot(base, p.d)});
    planes.push_back(p);
    all.push_back(a);
  });
  // lower envelope of the affine parts (the quadratic part is common)
  std::vector<std::size_t> idx(pieces.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    if (pieces[x].slope != pieces[y].slope) return pieces[x].slope > pieces[y].slope;
    return pieces[x].icpt < pieces[y].icpt;
  });
  auto meet = [&](std::size_t x, std::size_t y) -> Scalar {
    return (pieces[y].icpt - pieces[x].icpt) / (pieces[x].slope - pieces[y].slope);
  };
  std::vector<std::size_t> hull;
  for (std::size_t i : idx) {
    if (!hull.empty() && pieces[hull.back()].slope == pieces[i].slope) continue;
    while (hull.size() >= 2 && meet(hull[hull.size() - 2], i) <= meet(hull[hull.size() - 2], hull.back()))
      hull.pop_back();
    hull.push_back(i);
  }
  LineTrace tr;
  tr.line = line;
  std::vector<Scalar> bps;
  for (std::size_t h = 1; h < hull.size(); ++h) bps.push_back(meet(hull[h - 1], hull[h]));

  auto optimal_at = [&](const Point& t) {
    std::vector<std::size_t> opt;
    Scalar best;
    for (std::size_t i = 0; i < planes.size(); ++i) {
      Scalar v = plane_value(planes[i], m, t);
      if (opt.empty() || v < best) {
        opt.assign(1, i);
        best = v;
      } else if (v == best) {
        opt.push_back(i);
      }
    }
    return opt;
  };
  auto to_plane = [&](std::size_t i) { return CostPlane{planes[i].c, planes[i].d, static_cast<int>(m)}; };

  for (std::size_t k = 0; k <= bps.size(); ++k) {
    TraceCell c;
    if (k > 0) c.lo = bps[k - 1];
    if (k < bps.size()) c.hi = bps[k];
    Scalar s = c.lo && c.hi ? (*c.lo + *c.hi) / 2 : c.lo ? *c.lo + 1 : c.hi ? *c.hi - 1 : Scalar(0);
    std::size_t i = optimal_at(line.at(s)).front();  // enumeration order is lexicographic
    c.matching = Matching(all[i]);
    c.plane = to_plane(i);
    tr.cells.push_back(std::move(c));
  }
  for (const auto& s : bps) {
    tr.breakpoints.push_back(s);
    auto opt = optimal_at(line.at(s));
    std::optional<Line> first;
    bool vertex = false;
    for (std::size_t q = 1; q < opt.size() && !vertex; ++q) {
      Point dd = planes[opt[0]].d - planes[opt[q]].d;
      if (dd.is_zero()) continue;
      Line l(dd, planes[opt[q]].c - planes[opt[0]].c);
      if (!first) first = l;
      else if (*first != l) vertex = true;
    }
    tr.breakpoint_vertex.push_back(vertex);
  }

  bool have = false;
  for (std::size_t k = 0; k < tr.cells.size(); ++k) {
    const auto& c = tr.cells[k];
    const Scalar g = m * norm2(u), b = pieces[hull[k]].slope + 2 * m * dot(base, u);
    const Scalar a0 = pieces[hull[k]].icpt + m * norm2(base);
    Scalar s = -b / (2 * g);
    if (c.lo && s < *c.lo) s = *c.lo;
    if (c.hi && s > *c.hi) s = *c.hi;
    Scalar v = a0 + s * (b + s * g);
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
  auto slope = [&](const Point& w) {
    std::optional<Scalar> lo;
    for (std::size_t i : optimal_at(t)) {
      Scalar d = dot(planes[i].d + Scalar(2 * m) * t, w);
      if (!lo || d < *lo) lo = d;
    }
    return *lo;
  };
  tr.slope_left = slope(-line.normal);
  tr.slope_right = slope(line.normal);
  tr.descent = sgn(tr.slope_left) < 0    ? Descent::Left
               : sgn(tr.slope_right) < 0 ? Descent::Right
                                         : Descent::LocalMin;
  return tr;
}

namespace {

struct Quad {
  Scalar a2, a1, a0;
  Scalar at(const Scalar& x) const { return a0 + x * (a1 + x * a2); }
  Scalar slope(const Scalar& x) const { return 2 * a2 * x + a1; }
};

// sites sorted; ties go to the smaller site
int nearest_index(const std::vector<Scalar>& sites, const Scalar& x) {
  auto hi = std::lower_bound(sites.begin(), sites.end(), x);
  if (hi == sites.begin()) return 0;
  if (hi == sites.end()) return static_cast<int>(sites.size()) - 1;
  auto lo = hi - 1;
  return static_cast<int>((*hi - x < x - *lo ? hi : lo) - sites.begin());
}

}  // namespace

MinimaSet enumerate_h1_minima(const std::vector<Scalar>& A_in, const std::vector<Scalar>& B_in, Variant variant) {
  std::vector<Scalar> A = A_in, B = B_in;
  std::sort(A.begin(), A.end());
  std::sort(B.begin(), B.end());
  if (A.empty() || B.empty()) throw ValidationError("both sets must be nonempty");
  if (A.size() * B.size() > 1000000) throw BudgetExceeded("1D oracle limited to nm <= 10^6");
  const bool two = variant != Variant::Uni;

  std::vector<Scalar> bps;
  for (std::size_t j = 1; j < A.size(); ++j)
    for (const auto& b : B) bps.push_back((A[j - 1] + A[j]) / 2 - b);
  if (two)
    for (std::size_t j = 1; j < B.size(); ++j)
      for (const auto& a : A) bps.push_back(a - (B[j - 1] + B[j]) / 2);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  auto quads = [&](const Scalar& s) {
    Quad q1{Scalar(static_cast<long>(B.size())), 0, 0}, q2{0, 0, 0};
    for (const auto& b : B) {
      Scalar e = b - A[static_cast<std::size_t>(nearest_index(A, b + s))];
      q1.a1 += 2 * e;
      q1.a0 += e * e;
    }
    if (two) {
      q2.a2 = Scalar(static_cast<long>(A.size()));
      for (const auto& a : A) {
        Scalar e = a - B[static_cast<std::size_t>(nearest_index(B, a - s))];
        q2.a1 -= 2 * e;
        q2.a0 += e * e;
      }
    }
    return std::make_pair(q1, q2);
  };
  auto assignment_at = [&](const QuadAlg& t) {
    std::vector<int> out;
    for (const auto& b : B) {
      int best = -1;
      QuadAlg bd;
      for (std::size_t j = 0; j < A.size(); ++j) {
        QuadAlg d = QuadAlg(b - A[j]) + t;
        d = d * d;
        if (best < 0 || d < bd) {
          best = static_cast<int>(j);
          bd = d;
        }
      }
      out.push_back(best);
    }
    return out;
  };

  MinimaSet out;
  auto add = [&](const QuadAlg& t, const QuadAlg& v, QuadAlg left, QuadAlg right) {
    for (const auto& e : out.entries)
      if (e.t.x == t) return;
    MinimumEntry e;
    e.t = AlgPoint(t, QuadAlg(0));
    e.value = v;
    e.assignment = assignment_at(t);
    e.certificate = {std::move(left), std::move(right)};
    out.entries.push_back(std::move(e));
  };

  // local minima inside every open piece
  for (std::size_t k = 0; k <= bps.size(); ++k) {
    std::optional<Scalar> lo, hi;
    if (k > 0) lo = bps[k - 1];
    if (k < bps.size()) hi = bps[k];
    Scalar s = lo && hi ? (*lo + *hi) / 2 : lo ? *lo + 1 : hi ? *hi - 1 : Scalar(0);
    auto [q1, q2] = quads(s);
    auto inside = [&](const QuadAlg& x) {
      return (!lo || QuadAlg(*lo) < x) && (!hi || x < QuadAlg(*hi));
    };
    if (variant != Variant::Linf) {
      Quad q = q1;
      if (two) q = {q1.a2 + q2.a2, q1.a1 + q2.a1, q1.a0 + q2.a0};
      Scalar v = -q.a1 / (2 * q.a2);
      if (inside(v)) add(v, q.at(v), 0, 0);
      continue;
    }
    for (const Quad* q : {&q1, &q2}) {
      const Quad* o = q == &q1 ? &q2 : &q1;
      Scalar v = -q->a1 / (2 * q->a2);
      if (inside(v) && q->at(v) >= o->at(v)) add(v, q->at(v), 0, 0);
    }
    Scalar c2 = q1.a2 - q2.a2, c1 = q1.a1 - q2.a1, c0 = q1.a0 - q2.a0;
    if (sgn(c2) == 0 && sgn(c1) == 0) continue;
    for (const auto& r : quadratic_roots(c2, c1, c0)) {
      if (!inside(r)) continue;
      QuadAlg s1 = QuadAlg(2 * q1.a2) * r + QuadAlg(q1.a1), s2 = QuadAlg(2 * q2.a2) * r + QuadAlg(q2.a1);
      QuadAlg left = s1 < s2 ? s1 : s2, right = s1 < s2 ? s2 : s1;
      if (sign(left) <= 0 && sign(right) >= 0) add(r, eval_quadratic(q1.a2, q1.a1, q1.a0, r), left, right);
    }
  }
  // kinks at the breakpoints
  for (std::size_t k = 0; k < bps.size(); ++k) {
    const Scalar& tau = bps[k];
    Scalar sl = k > 0 ? Scalar((bps[k - 1] + tau) / 2) : Scalar(tau - 1);
    Scalar sr = k + 1 < bps.size() ? Scalar((tau + bps[k + 1]) / 2) : Scalar(tau + 1);
    auto one_side = [&](const Scalar& sample, bool from_left) -> std::pair<Scalar, Scalar> {
      auto [q1, q2] = quads(sample);
      if (variant == Variant::Uni) return std::make_pair(q1.at(tau), q1.slope(tau));
      if (variant == Variant::L1) return {q1.at(tau) + q2.at(tau), q1.slope(tau) + q2.slope(tau)};
      Scalar v1 = q1.at(tau), v2 = q2.at(tau), d1 = q1.slope(tau), d2 = q2.slope(tau);
      if (v1 > v2) return std::make_pair(v1, d1);
      if (v2 > v1) return std::make_pair(v2, d2);
      return std::make_pair(v1, from_left ? std::min(d1, d2) : std::max(d1, d2));
    };
    auto [vl, dl] = one_side(sl, true);
    auto [vr, dr] = one_side(sr, false);
    if (vl != vr) throw InternalError("1D oracle: discontinuity at a breakpoint");
    if (sgn(dl) <= 0 && sgn(dr) >= 0) add(tau, vl, dl, dr);
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const MinimumEntry& x, const MinimumEntry& y) {
    if (x.value != y.value) return x.value < y.value;
    return x.t < y.t;
  });
  return out;
}

MinimaSet enumerate_h2_minima(const Instance& inst, Variant variant) {
  if (variant == Variant::Linf) throw ValidationError("2D oracle covers uni and l1 only");
  // terms: per b the centers a - b, then (l1) per a the centers a - b_k
  std::vector<std::vector<Point>> terms;
  for (const auto& b : inst.B) {
    std::vector<Point> cs;
    for (const auto& a : inst.A) cs.push_back(a - b);
    terms.push_back(std::move(cs));
  }
  if (variant == Variant::L1)
    for (const auto& a : inst.A) {
      std::vector<Point> cs;
      for (const auto& b : inst.B) cs.push_back(a - b);
      terms.push_back(std::move(cs));
    }
  std::set<Line> line_set;
  for (const auto& cs : terms)
    for (std::size_t i = 0; i < cs.size(); ++i)
      for (std::size_t j = i + 1; j < cs.size(); ++j)
        line_set.insert(Line(Scalar(2) * (cs[j] - cs[i]), norm2(cs[j]) - norm2(cs[i])));
  std::vector<Line> lines(line_set.begin(), line_set.end());
  if (static_cast<double>(lines.size()) * static_cast<double>(lines.size()) > 1e7)
    throw BudgetExceeded("2D oracle arrangement too large (" + std::to_string(lines.size()) + " lines)");

  std::set<std::vector<int>> cells;
  // nearest centers at v + eps * w, ties broken by the perturbation, then index
  auto perturbed = [&](const Point& v, const std::vector<std::vector<int>>& tied, const Point& w) {
    std::vector<int> asg;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      int best = tied[k][0];
      Scalar bd = dot(v - terms[k][static_cast<std::size_t>(best)], w);
      for (std::size_t q = 1; q < tied[k].size(); ++q) {
        Scalar d = dot(v - terms[k][static_cast<std::size_t>(tied[k][q])], w);
        if (d < bd) {
          best = tied[k][q];
          bd = d;
        }
      }
      asg.push_back(best);
    }
    return asg;
  };
  auto tied_at = [&](const Point& v) {
    std::vector<std::vector<int>> tied(terms.size());
    for (std::size_t k = 0; k < terms.size(); ++k) {
      Scalar best;
      for (std::size_t s = 0; s < terms[k].size(); ++s) {
        Scalar d = sq_dist(v, terms[k][s]);
        if (tied[k].empty() || d < best) {
          tied[k].assign(1, static_cast<int>(s));
          best = d;
        } else if (d == best) {
          tied[k].push_back(static_cast<int>(s));
        }
      }
    }
    return tied;
  };

  std::map<Point, std::set<std::size_t>> vertices;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (auto p = intersect(lines[i], lines[j])) {
        auto& s = vertices[*p];
        s.insert(i);
        s.insert(j);
      }
  for (const auto& [v, through] : vertices) {
    std::vector<Point> dirs;
    for (std::size_t i : through) {
      dirs.push_back(lines[i].direction());
      dirs.push_back(-lines[i].direction());
    }
    std::sort(dirs.begin(), dirs.end(), angle_less);
    auto tied = tied_at(v);
    for (std::size_t k = 0; k < dirs.size(); ++k)
      cells.insert(perturbed(v, tied, dirs[k] + dirs[(k + 1) % dirs.size()]));
  }
  // far-away representatives in eight directions
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy) {
      if (dx == 0 && dy == 0) continue;
      const Point w{dx, dy};
      std::vector<int> asg;
      for (const auto& cs : terms) {
        std::size_t best = 0;
        for (std::size_t s = 1; s < cs.size(); ++s) {
          int c = cmp(dot(w, cs[s]), dot(w, cs[best]));
          if (c > 0 || (c == 0 && norm2(cs[s]) < norm2(cs[best]))) best = s;
        }
        asg.push_back(static_cast<int>(best));
      }
      cells.insert(asg);
    }
  // no vertices: the lines are parallel (or absent), sample every strip
  if (vertices.empty()) {
    std::vector<Point> samples;
    if (lines.empty()) {
      samples.push_back({0, 0});
    } else {
      const Point n0 = lines[0].normal;
      std::vector<Scalar> pos;
      for (const auto& l : lines) pos.push_back(dot(l.base(), n0));
      std::sort(pos.begin(), pos.end());
      pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
      std::vector<Scalar> at{pos.front() - 1, pos.back() + 1};
      for (std::size_t k = 1; k < pos.size(); ++k) at.push_back((pos[k - 1] + pos[k]) / 2);
      for (const auto& s : at) samples.push_back((s / norm2(n0)) * n0);
    }
    for (const auto& p : samples) {
      auto tied = tied_at(p);
      cells.insert(perturbed(p, tied, {0, 0}));
    }
  }

  MinimaSet out;
  const Scalar M(static_cast<long>(terms.size()));
  for (const auto& asg : cells) {
    Point sum{0, 0};
    for (std::size_t k = 0; k < terms.size(); ++k) sum += terms[k][static_cast<std::size_t>(asg[k])];
    const Point t = sum / M;
    auto tied = tied_at(t);
    bool ok = true;
    for (std::size_t k = 0; k < terms.size() && ok; ++k)
      ok = tied[k].size() == 1 && tied[k][0] == asg[k];
    if (!ok) continue;
    Scalar value = 0;
    for (std::size_t k = 0; k < terms.size(); ++k) value += sq_dist(t, terms[k][static_cast<std::size_t>(asg[k])]);
    MinimumEntry e;
    e.t = AlgPoint(t);
    e.value = value;
    e.assignment = asg;
    Point g = Scalar(2) * (M * t - sum);
    e.certificate = {g.x, g.y};
    out.entries.push_back(std::move(e));
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const MinimumEntry& x, const MinimumEntry& y) {
    if (x.value != y.value) return x.value < y.value;
    return x.t < y.t;
  });
  return out;
}

}  // namespace rmsalign
