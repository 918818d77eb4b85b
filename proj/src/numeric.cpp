#include "rmsalign/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace rmsalign {

int sign(const Scalar& v) { return sgn(v); }

Scalar parse_scalar(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty number");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      Integer num(s.substr(0, slash), 10), den(s.substr(slash + 1), 10);
      if (sgn(den) == 0) throw ParseError("zero denominator in '" + text + "'");
      Scalar r(num, den);
      r.canonicalize();
      return r;
    }
    // decimal with optional exponent
    std::size_t pos = 0;
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
    std::string digits;
    long frac = 0;
    bool seen_dot = false, any = false;
    for (; pos < s.size(); ++pos) {
      char c = s[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits.push_back(c);
        any = true;
        if (seen_dot) ++frac;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else {
        break;
      }
    }
    if (!any) throw ParseError("not a number: '" + text + "'");
    long exp10 = 0;
    if (pos < s.size()) {
      if (s[pos] != 'e' && s[pos] != 'E') throw ParseError("not a number: '" + text + "'");
      std::size_t used = 0;
      exp10 = std::stol(s.substr(pos + 1), &used);
      if (pos + 1 + used != s.size()) throw ParseError("not a number: '" + text + "'");
    }
    Integer mant(digits, 10);
    long e = exp10 - frac;
    Integer p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    Scalar r = e >= 0 ? Scalar(mant * p10) : Scalar(mant, p10);
    r.canonicalize();
    return neg ? Scalar(-r) : r;
  } catch (const std::invalid_argument&) {
    throw ParseError("not a number: '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("exponent out of range: '" + text + "'");
  }
}

std::string to_string(const Scalar& v) { return v.get_str(); }

namespace {

std::string format_mpf(const mpf_class& f, int digits) {
  if (sgn(f) == 0) return "0";
  mp_exp_t e = 0;
  std::string m = f.get_str(e, 10, static_cast<std::size_t>(digits));
  std::string sign_str;
  if (!m.empty() && m[0] == '-') {
    sign_str = "-";
    m.erase(0, 1);
  }
  std::string out;
  if (e > 0 && e <= 40) {
    if (static_cast<long>(m.size()) <= e) {
      out = m + std::string(static_cast<std::size_t>(e) - m.size(), '0');
    } else {
      out = m.substr(0, static_cast<std::size_t>(e)) + "." + m.substr(static_cast<std::size_t>(e));
    }
  } else if (e <= 0 && e > -20) {
    out = "0." + std::string(static_cast<std::size_t>(-e), '0') + m;
  } else {
    out = m.substr(0, 1);
    if (m.size() > 1) out += "." + m.substr(1);
    out += "e" + std::to_string(static_cast<long>(e) - 1);
  }
  return sign_str + out;
}

}  // namespace

std::string to_decimal(const Scalar& v, int digits) {
  mpf_class f(v, 512);
  return format_mpf(f, digits);
}

double to_double(const Scalar& v) { return v.get_d(); }

Scalar dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
Scalar cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
Scalar norm2(const Point& a) { return a.x * a.x + a.y * a.y; }
Scalar sq_dist(const Point& p, const Point& q) {
  Scalar dx = p.x - q.x, dy = p.y - q.y;
  return dx * dx + dy * dy;
}
std::string to_string(const Point& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

Point centroid(const std::vector<Point>& pts) {
  Point s{0, 0};
  for (const auto& p : pts) s += p;
  return s / Scalar(static_cast<long>(pts.size()));
}

namespace {

// Scale (a, b, c) to coprime integers with the first nonzero of (a, b) positive.
// Returns the sign of the factor applied.
int canonicalize(Scalar& a, Scalar& b, Scalar& c) {
  Integer l = 1;
  for (const Scalar* v : {&a, &b, &c}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v->get_den_mpz_t());
  Integer ia = a.get_num() * (l / a.get_den());
  Integer ib = b.get_num() * (l / b.get_den());
  Integer ic = c.get_num() * (l / c.get_den());
  Integer g = 0;
  for (const Integer* v : {&ia, &ib, &ic}) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v->get_mpz_t());
  ia /= g;
  ib /= g;
  ic /= g;
  int s = sgn(ia) != 0 ? sgn(ia) : sgn(ib);
  if (s < 0) {
    ia = -ia;
    ib = -ib;
    ic = -ic;
  }
  a = Scalar(ia);
  b = Scalar(ib);
  c = Scalar(ic);
  return s;
}

}  // namespace

Line::Line(const Point& n, const Scalar& off) : normal(n), offset(off) {
  if (normal.is_zero()) throw std::invalid_argument("line normal must be nonzero");
  canonicalize(normal.x, normal.y, offset);
}

Line Line::through(const Point& p, const Point& q) {
  Point n{-(q.y - p.y), q.x - p.x};
  return Line(n, dot(n, p));
}

Point Line::direction() const {
  Point d{normal.y, -normal.x};
  if (sgn(d.x) < 0 || (sgn(d.x) == 0 && sgn(d.y) < 0)) d = -d;
  return d;
}

Point Line::base() const { return normal * (offset / norm2(normal)); }

Scalar Line::param_of(const Point& t) const {
  Point d = direction();
  return dot(t - base(), d) / norm2(d);
}

bool parallel(const Line& a, const Line& b) { return sgn(cross(a.normal, b.normal)) == 0; }

std::optional<Point> intersect(const Line& a, const Line& b) {
  Scalar det = cross(a.normal, b.normal);
  if (sgn(det) == 0) return std::nullopt;
  Scalar x = (a.offset * b.normal.y - b.offset * a.normal.y) / det;
  Scalar y = (a.normal.x * b.offset - b.normal.x * a.offset) / det;
  return Point{x, y};
}

std::string to_string(const Line& l) {
  return to_string(l.normal.x) + "*x + " + to_string(l.normal.y) + "*y = " + to_string(l.offset);
}

Halfplane::Halfplane(const Point& normal, const Scalar& offset, Keep k) : keep(k) {
  if (normal.is_zero()) throw std::invalid_argument("halfplane normal must be nonzero");
  Scalar a = normal.x, b = normal.y, c = offset;
  if (canonicalize(a, b, c) < 0) keep = keep == Keep::LE ? Keep::GE : Keep::LE;
  boundary.normal = Point{a, b};
  boundary.offset = c;
}

Point Halfplane::ccw_direction() const {
  const Point& n = boundary.normal;
  return keep == Keep::LE ? Point{-n.y, n.x} : Point{n.y, -n.x};
}

Point PolygonEdge::midpoint() const {
  if (from && to) return (*from + *to) / Scalar(2);
  if (from) return *from + h.ccw_direction();
  if (to) return *to - h.ccw_direction();
  return h.boundary.base();
}

bool ConvexPolygon::contains(const Point& t) const {
  for (const auto& h : halfplanes)
    if (!h.contains(t)) return false;
  return true;
}

bool ConvexPolygon::strictly_contains(const Point& t) const {
  for (const auto& h : halfplanes)
    if (!h.strictly_contains(t)) return false;
  return true;
}

namespace {

int half_of(const Point& u) { return (sgn(u.y) < 0 || (sgn(u.y) == 0 && sgn(u.x) < 0)) ? 1 : 0; }

}  // namespace

bool angle_less(const Point& u, const Point& v) {
  int hu = half_of(u), hv = half_of(v);
  if (hu != hv) return hu < hv;
  return sgn(cross(u, v)) > 0;
}

ConvexPolygon halfplane_intersection(const std::vector<Halfplane>& hs, const Point& witness,
                                     std::vector<std::size_t>* redundant) {
  const std::size_t h = hs.size();
  std::vector<bool> dup(h, false);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < i && !dup[i]; ++j)
      if (!dup[j] && hs[i] == hs[j]) dup[i] = true;
  for (std::size_t i = 0; i < h; ++i)
    if (!hs[i].contains(witness))
      throw EmptyIntersection("witness " + to_string(witness) + " violates halfplane " +
                              to_string(hs[i].boundary));

  // constraint form <a, t> <= b
  std::vector<Point> a(h);
  std::vector<Scalar> b(h);
  for (std::size_t i = 0; i < h; ++i) {
    bool le = hs[i].keep == Keep::LE;
    a[i] = le ? hs[i].boundary.normal : -hs[i].boundary.normal;
    b[i] = le ? hs[i].boundary.offset : Scalar(-hs[i].boundary.offset);
  }

  struct Cand {
    std::size_t idx;
    Point base, dir;
    std::optional<Scalar> lo, hi;
  };
  std::vector<Cand> alive;
  for (std::size_t i = 0; i < h; ++i) {
    if (dup[i]) {
      if (redundant) redundant->push_back(i);
      continue;
    }
    Cand c{i, hs[i].boundary.base(), hs[i].ccw_direction(), std::nullopt, std::nullopt};
    bool dead = false;
    for (std::size_t j = 0; j < h && !dead; ++j) {
      if (j == i || dup[j]) continue;
      Scalar den = dot(a[j], c.dir);
      Scalar val = dot(a[j], c.base);
      if (sgn(den) == 0) {
        if (val > b[j]) dead = true;
        continue;
      }
      Scalar bound = (b[j] - val) / den;
      if (sgn(den) > 0) {
        if (!c.hi || bound < *c.hi) c.hi = bound;
      } else {
        if (!c.lo || bound > *c.lo) c.lo = bound;
      }
    }
    if (!dead && c.lo && c.hi && !(*c.lo < *c.hi)) dead = true;
    if (dead) {
      if (redundant) redundant->push_back(i);
      continue;
    }
    alive.push_back(std::move(c));
  }
  if (redundant) std::sort(redundant->begin(), redundant->end());

  ConvexPolygon poly;
  if (alive.empty()) {
    if (h > 0) throw EmptyIntersection("halfplanes have an empty interior");
    return poly;  // whole plane
  }
  std::sort(alive.begin(), alive.end(),
            [](const Cand& x, const Cand& y) { return angle_less(x.dir, y.dir); });

  bool all_full = std::all_of(alive.begin(), alive.end(),
                              [](const Cand& c) { return !c.lo && !c.hi; });
  if (all_full) {
    for (const auto& c : alive) {
      poly.halfplanes.push_back(hs[c.idx]);
      poly.edges.push_back({hs[c.idx], std::nullopt, std::nullopt});
    }
    if (alive.size() == 1) {
      poly.unbounded_rays = {-alive[0].dir, alive[0].dir};
    } else {
      for (const auto& c : alive) poly.unbounded_rays.push_back(c.dir);
    }
    return poly;
  }

  std::size_t start = 0;
  bool chain = false;
  for (std::size_t k = 0; k < alive.size(); ++k) {
    if (!alive[k].lo) {
      start = k;
      chain = true;
      break;
    }
  }
  std::rotate(alive.begin(), alive.begin() + static_cast<std::ptrdiff_t>(start), alive.end());
  for (const auto& c : alive) {
    PolygonEdge e{hs[c.idx], std::nullopt, std::nullopt};
    if (c.lo) e.from = c.base + *c.lo * c.dir;
    if (c.hi) e.to = c.base + *c.hi * c.dir;
    if (e.from) poly.vertices.push_back(*e.from);
    poly.halfplanes.push_back(hs[c.idx]);
    poly.edges.push_back(std::move(e));
  }
  if (chain) poly.unbounded_rays = {-alive.front().dir, alive.back().dir};
  return poly;
}

Scalar VerticalSlab::interior_x() const {
  if (left && right) return (*left + *right) / 2;
  if (left) return *left + 1;
  if (right) return *right - 1;
  return 0;
}

namespace {

std::vector<Point> slab_points(const std::vector<Line>& lines, const VerticalSlab& slab) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (auto p = intersect(lines[i], lines[j]); p && slab.inside(p->x)) pts.push_back(*p);
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

Point kth_intersection_in_slab(const std::vector<Line>& lines, const VerticalSlab& slab,
                               std::size_t k) {
  auto pts = slab_points(lines, slab);
  if (k == 0 || k > pts.size())
    throw OutOfRange("k = " + std::to_string(k) + " but the slab holds " +
                     std::to_string(pts.size()) + " intersections");
  return pts[k - 1];
}

std::size_t count_intersections_in_slab(const std::vector<Line>& lines, const VerticalSlab& slab) {
  return slab_points(lines, slab).size();
}

Scalar weighted_median(std::vector<std::pair<Scalar, Scalar>> items) {
  if (items.empty()) throw std::invalid_argument("weighted_median of an empty list");
  std::sort(items.begin(), items.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Scalar total = 0;
  for (const auto& it : items) total += it.second;
  Scalar cum = 0;
  for (const auto& it : items) {
    cum += it.second;
    if (2 * cum >= total) return it.first;
  }
  return items.back().first;
}

// ---- QuadAlg ----

namespace {

// sign(a + b sqrt(u))
int sign1(const Scalar& a, const Scalar& b, const Integer& u) {
  int sa = sgn(a);
  int sb = sgn(u) == 0 ? 0 : sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  return sa * sgn(a * a - b * b * Scalar(u));
}

// sign(a + b sqrt(u) + c sqrt(v))
int sign2(const Scalar& a, const Scalar& b, const Integer& u, const Scalar& c, const Integer& v) {
  if (sgn(c) == 0 || sgn(v) == 0) return sign1(a, b, u);
  if (sgn(b) == 0 || sgn(u) == 0) return sign1(a, c, v);
  if (u == v) return sign1(a, b + c, u);
  int sx = sign1(a, b, u);
  int sz = sgn(c);
  if (sx == 0) return sz;
  if (sx == sz) return sx;
  return sx * sign1(a * a + b * b * Scalar(u) - c * c * Scalar(v), 2 * a * b, u);
}

}  // namespace

QuadAlg QuadAlg::make(const Scalar& p, const Scalar& q, const Integer& d) {
  QuadAlg r;
  r.p_ = p;
  if (sgn(q) == 0 || sgn(d) == 0) return r;
  if (sgn(d) < 0) throw std::invalid_argument("negative radicand");
  Integer dd = d;
  Scalar qq = q;
  for (unsigned long k = 2; k <= 1000; ++k) {
    Integer k2 = k * k;
    if (k2 > dd) break;
    while (mpz_divisible_p(dd.get_mpz_t(), k2.get_mpz_t())) {
      dd /= k2;
      qq *= k;
    }
  }
  if (mpz_perfect_square_p(dd.get_mpz_t())) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), dd.get_mpz_t());
    r.p_ += qq * Scalar(root);
    return r;
  }
  r.q_ = qq;
  r.d_ = dd;
  return r;
}

QuadAlg QuadAlg::sqrt_of(const Scalar& r) {
  if (sgn(r) < 0) throw std::invalid_argument("sqrt of a negative rational");
  // sqrt(n/d) = sqrt(n*d)/d
  Integer nd = r.get_num() * r.get_den();
  return make(0, Scalar(1, 1) / Scalar(r.get_den()), nd);
}

QuadAlg QuadAlg::reduced(const Scalar& p, const Scalar& q, const Integer& d) {
  QuadAlg r;
  r.p_ = p;
  if (sgn(q) == 0) return r;
  r.q_ = q;
  r.d_ = d;
  return r;
}

QuadAlg operator+(const QuadAlg& a, const QuadAlg& b) {
  if (a.is_rational()) return QuadAlg::reduced(a.p_ + b.p_, b.q_, b.d_);
  if (b.is_rational()) return QuadAlg::reduced(a.p_ + b.p_, a.q_, a.d_);
  if (a.d_ != b.d_) throw InternalError("adding algebraic numbers with different radicands");
  return QuadAlg::reduced(a.p_ + b.p_, a.q_ + b.q_, a.d_);
}

QuadAlg operator*(const QuadAlg& a, const QuadAlg& b) {
  if (a.is_rational()) return QuadAlg::reduced(a.p_ * b.p_, a.p_ * b.q_, b.d_);
  if (b.is_rational()) return QuadAlg::reduced(a.p_ * b.p_, a.q_ * b.p_, a.d_);
  if (a.d_ != b.d_) throw InternalError("multiplying algebraic numbers with different radicands");
  return QuadAlg::reduced(a.p_ * b.p_ + a.q_ * b.q_ * Scalar(a.d_), a.p_ * b.q_ + a.q_ * b.p_, a.d_);
}

int sign(const QuadAlg& v) { return sign1(v.p(), v.q(), v.d()); }

int compare(const QuadAlg& a, const QuadAlg& b) {
  return sign2(a.p() - b.p(), a.q(), a.d(), -b.q(), b.d());
}

bool operator==(const QuadAlg& a, const QuadAlg& b) { return compare(a, b) == 0; }
bool operator<(const QuadAlg& a, const QuadAlg& b) { return compare(a, b) < 0; }

double QuadAlg::to_double() const {
  return p_.get_d() + q_.get_d() * std::sqrt(d_.get_d());
}

std::string QuadAlg::to_decimal(int digits) const {
  mpf_class v(p_, 512), root(Scalar(d_), 512), q(q_, 512);
  root = sqrt(root);
  v += q * root;
  return format_mpf(v, digits);
}

Scalar QuadAlg::approx(unsigned bits) const {
  if (is_rational()) return p_;
  mpf_class root(Scalar(d_), bits + 128);
  root = sqrt(root);
  Scalar r(root);
  // truncate to a dyadic rational with `bits` fractional bits
  Integer scale = 1;
  scale <<= bits;
  Scalar scaled = (p_ + q_ * r) * Scalar(scale);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Scalar out(fl, scale);
  out.canonicalize();
  return out;
}

std::vector<QuadAlg> quadratic_roots(const Scalar& a2, const Scalar& a1, const Scalar& a0) {
  if (sgn(a2) == 0) {
    if (sgn(a1) == 0) return {};
    return {QuadAlg(Scalar(-a0 / a1))};
  }
  Scalar disc = a1 * a1 - 4 * a2 * a0;
  if (sgn(disc) < 0) return {};
  Scalar inv = 1 / (2 * a2);
  if (sgn(disc) == 0) return {QuadAlg(Scalar(-a1 * inv))};
  QuadAlg s = QuadAlg::sqrt_of(disc);
  QuadAlg r1 = (QuadAlg(Scalar(-a1)) - s) * QuadAlg(inv);
  QuadAlg r2 = (QuadAlg(Scalar(-a1)) + s) * QuadAlg(inv);
  if (r2 < r1) std::swap(r1, r2);
  return {r1, r2};
}

QuadAlg eval_quadratic(const Scalar& a2, const Scalar& a1, const Scalar& a0, const QuadAlg& x) {
  return QuadAlg(a2) * x * x + QuadAlg(a1) * x + QuadAlg(a0);
}

Scalar ln_upper_bound(unsigned m) {
  if (m <= 1) return 0;
  // ln m = 2 artanh(z), z = (m-1)/(m+1); tail after term K bounded geometrically
  Scalar z(m - 1, m + 1);
  z.canonicalize();
  Scalar z2 = z * z;
  Scalar term = z;  // z^(2k+1)
  Scalar sum = 0;
  Scalar eps(1, 1000000000000000L);
  for (unsigned long k = 0;; ++k) {
    sum += term / Scalar(static_cast<long>(2 * k + 1));
    term *= z2;
    Scalar tail = term / (Scalar(static_cast<long>(2 * k + 3)) * (1 - z2));
    if (2 * tail < eps) return 2 * (sum + tail);
  }
}

std::string to_string(const AlgPoint& p) {
  auto one = [](const QuadAlg& v) {
    if (v.is_rational()) return to_string(v.rational());
    return to_string(v.p()) + "+" + to_string(v.q()) + "*sqrt(" + v.d().get_str() + ")";
  };
  return "(" + one(p.x) + ", " + one(p.y) + ")";
}

}  // namespace rmsalign
