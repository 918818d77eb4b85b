#include "rmsalign/hausdorff1d.hpp"

#include <algorithm>

namespace rmsalign {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Uni: return "uni";
    case Variant::L1: return "l1";
    case Variant::Linf: return "linf";
  }
  return "uni";
}

Variant parse_variant(const std::string& s) {
  if (s == "uni") return Variant::Uni;
  if (s == "l1") return Variant::L1;
  if (s == "linf") return Variant::Linf;
  throw ParseError("unknown variant '" + s + "' (expected uni, l1 or linf)");
}

StepFunction step_function(std::vector<Scalar> sites) {
  if (sites.empty()) throw ValidationError("step function needs at least one site");
  for (std::size_t i = 1; i < sites.size(); ++i)
    if (!(sites[i - 1] < sites[i])) throw ValidationError("step function sites must be strictly increasing");
  StepFunction f;
  for (std::size_t i = 1; i < sites.size(); ++i) f.breakpoints.push_back((sites[i - 1] + sites[i]) / 2);
  f.sites = std::move(sites);
  return f;
}

Scalar StepFunction::evaluate(const Scalar& x) const {
  auto k = std::upper_bound(breakpoints.begin(), breakpoints.end(), x) - breakpoints.begin();
  return sites[static_cast<std::size_t>(k)];
}

Scalar StepFunction::evaluate_left(const Scalar& x) const {
  auto k = std::lower_bound(breakpoints.begin(), breakpoints.end(), x) - breakpoints.begin();
  return sites[static_cast<std::size_t>(k)];
}

namespace {

// One directed sum with its one-sided derivatives.
struct Directed {
  Scalar value, left, right;
};

// sum over b of (b + t - N_A(b + t))^2
Directed forward_sum(const StepFunction& na, const std::vector<Scalar>& B, const Scalar& t) {
  Directed d{0, 0, 0};
  for (const auto& b : B) {
    Scalar x = b + t;
    Scalar r = x - na.evaluate(x);
    d.value += r * r;
    d.right += 2 * r;
    d.left += 2 * (x - na.evaluate_left(x));
  }
  return d;
}

// sum over a of (a - t - N_B(a - t))^2; the argument moves left as t grows
Directed reverse_sum(const StepFunction& nb, const std::vector<Scalar>& A, const Scalar& t) {
  Directed d{0, 0, 0};
  for (const auto& a : A) {
    Scalar x = a - t;
    Scalar r = x - nb.evaluate(x);
    d.value += r * r;
    d.left += -2 * r;
    d.right += -2 * (x - nb.evaluate_left(x));
  }
  return d;
}

RmsValue combine(const Directed& f1, const std::optional<Directed>& f2, Variant v) {
  if (v == Variant::Uni) return {f1.value, f1.left, f1.right};
  if (v == Variant::L1) return {f1.value + f2->value, f1.left + f2->left, f1.right + f2->right};
  if (f1.value > f2->value) return {f1.value, f1.left, f1.right};
  if (f2->value > f1.value) return {f2->value, f2->left, f2->right};
  return {f1.value, std::min(f1.left, f2->left), std::max(f1.right, f2->right)};
}

struct Problem {
  std::vector<Scalar> A, B;
  StepFunction na;
  std::optional<StepFunction> nb;
  Variant variant;

  RmsValue at(const Scalar& t) const {
    Directed f1 = forward_sum(na, B, t);
    std::optional<Directed> f2;
    if (nb) f2 = reverse_sum(*nb, A, t);
    return combine(f1, f2, variant);
  }

  // the two directed sums as quadratics on the piece containing t (t not a breakpoint)
  std::pair<Quadratic, Quadratic> pieces(const Scalar& t) const {
    Quadratic q1{Scalar(static_cast<long>(B.size())), 0, 0}, q2{0, 0, 0};
    for (const auto& b : B) {
      Scalar e = b - na.evaluate(b + t);
      q1.a1 += 2 * e;
      q1.a0 += e * e;
    }
    if (nb) {
      q2.a2 = Scalar(static_cast<long>(A.size()));
      for (const auto& a : A) {
        Scalar e = a - nb->evaluate(a - t);
        q2.a1 -= 2 * e;
        q2.a0 += e * e;
      }
    }
    return {q1, q2};
  }
};

struct Candidate {
  QuadAlg t, value;
};

Scalar eval(const Quadratic& q, const Scalar& x) { return q.a0 + x * (q.a1 + x * q.a2); }

// Minimizer over the whole line of the convex piece function built from q1, q2.
Candidate piece_argmin(const Quadratic& q1, const Quadratic& q2, Variant v) {
  if (v != Variant::Linf) {
    Quadratic q = q1;
    if (v == Variant::L1) q = {q1.a2 + q2.a2, q1.a1 + q2.a1, q1.a0 + q2.a0};
    Scalar x = -q.a1 / (2 * q.a2);
    return {x, eval(q, x)};
  }
  std::optional<Candidate> best;
  auto offer = [&](const QuadAlg& x, const QuadAlg& val) {
    if (!best || val < best->value || (val == best->value && x < best->t)) best = Candidate{x, val};
  };
  const Scalar v1 = -q1.a1 / (2 * q1.a2), v2 = -q2.a1 / (2 * q2.a2);
  if (eval(q1, v1) >= eval(q2, v1)) offer(v1, eval(q1, v1));
  if (eval(q2, v2) >= eval(q1, v2)) offer(v2, eval(q2, v2));
  Scalar c2 = q1.a2 - q2.a2, c1 = q1.a1 - q2.a1, c0 = q1.a0 - q2.a0;
  if (sgn(c2) != 0 || sgn(c1) != 0) {
    for (const auto& x : quadratic_roots(c2, c1, c0)) {
      // a kink minimum needs the slopes of the two sides to straddle zero
      QuadAlg s1 = QuadAlg(2 * q1.a2) * x + QuadAlg(q1.a1);
      QuadAlg s2 = QuadAlg(2 * q2.a2) * x + QuadAlg(q2.a1);
      if (sign(s1) * sign(s2) <= 0) offer(x, eval_quadratic(q1.a2, q1.a1, q1.a0, x));
    }
  }
  if (!best) throw InternalError("max of two quadratics has no minimizer");
  return *best;
}

}  // namespace

RmsValue rms1d(const std::vector<Scalar>& A, const std::vector<Scalar>& B, const Scalar& t,
               Variant variant) {
  std::vector<Scalar> a = A, b = B;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  Problem p{a, b, step_function(a), std::nullopt, variant};
  if (variant != Variant::Uni) p.nb = step_function(b);
  return p.at(t);
}

LocalMin1D local_min_h1(std::vector<Scalar> A, std::vector<Scalar> B, Variant variant,
                        const H1Options& opts) {
  if (B.empty()) throw ValidationError("B must be nonempty");
  std::sort(A.begin(), A.end());
  std::sort(B.begin(), B.end());
  for (std::size_t i = 1; i < B.size(); ++i)
    if (B[i] == B[i - 1]) throw ValidationError("duplicate point in B");
  Problem p{A, B, step_function(A), std::nullopt, variant};
  if (variant != Variant::Uni) p.nb = step_function(B);

  // sorted breakpoint lists: one per b, and one per a for the two-sided variants
  std::vector<std::vector<Scalar>> lists;
  for (const auto& b : B) {
    std::vector<Scalar> l;
    for (const auto& mu : p.na.breakpoints) l.push_back(mu - b);
    if (!l.empty()) lists.push_back(std::move(l));
  }
  if (p.nb)
    for (const auto& a : A) {
      std::vector<Scalar> l;
      for (auto it = p.nb->breakpoints.rbegin(); it != p.nb->breakpoints.rend(); ++it) l.push_back(a - *it);
      if (!l.empty()) lists.push_back(std::move(l));
    }

  LocalMin1D out;
  out.variant = variant;
  for (const auto& l : lists) out.total_breakpoints += l.size();
  auto done = [&](const Candidate& c) {
    out.t_star = c.t;
    out.value = c.value;
    return out;
  };
  auto at_point = [&](const Scalar& t) { return done({t, p.at(t).value}); };

  if (lists.empty()) {
    auto [q1, q2] = p.pieces(0);
    return done(piece_argmin(q1, q2, variant));
  }
  Scalar tmin = lists[0].front(), tmax = lists[0].back();
  for (const auto& l : lists) {
    tmin = std::min(tmin, l.front());
    tmax = std::max(tmax, l.back());
  }
  // the outer pieces may hold the minimum themselves
  {
    auto [q1, q2] = p.pieces(tmin - 1);
    Candidate c = piece_argmin(q1, q2, variant);
    if (c.t < QuadAlg(tmin)) return done(c);
  }
  {
    auto [q1, q2] = p.pieces(tmax + 1);
    Candidate c = piece_argmin(q1, q2, variant);
    if (c.t > QuadAlg(tmax)) return done(c);
  }
  Scalar t1 = tmin, t2 = tmax;
  {
    RmsValue d = p.at(tmin);
    if (sign(d.left) <= 0 && sign(d.right) >= 0) return at_point(tmin);
    d = p.at(tmax);
    if (sign(d.left) <= 0 && sign(d.right) >= 0) return at_point(tmax);
  }

  // per-list index ranges of breakpoints strictly inside (t1, t2)
  std::vector<std::size_t> lo(lists.size()), hi(lists.size());
  auto clip = [&]() {
    std::size_t total = 0;
    for (std::size_t i = 0; i < lists.size(); ++i) {
      const auto& l = lists[i];
      lo[i] = static_cast<std::size_t>(std::upper_bound(l.begin(), l.end(), t1) - l.begin());
      hi[i] = static_cast<std::size_t>(std::lower_bound(l.begin(), l.end(), t2) - l.begin());
      if (hi[i] < lo[i]) hi[i] = lo[i];
      total += hi[i] - lo[i];
    }
    return total;
  };
  for (std::size_t total = clip(); total > 0; total = clip()) {
    Scalar xi;
    if (opts.weighted_median) {
      std::vector<std::pair<Scalar, Scalar>> items;
      for (std::size_t i = 0; i < lists.size(); ++i) {
        std::size_t c = hi[i] - lo[i];
        if (c == 0) continue;
        items.emplace_back(lists[i][lo[i] + (c - 1) / 2], Scalar(static_cast<long>(c)));
      }
      xi = weighted_median(std::move(items));
    } else {
      std::vector<Scalar> all;
      for (std::size_t i = 0; i < lists.size(); ++i)
        all.insert(all.end(), lists[i].begin() + static_cast<long>(lo[i]),
                   lists[i].begin() + static_cast<long>(hi[i]));
      auto mid = all.begin() + static_cast<long>((all.size() - 1) / 2);
      std::nth_element(all.begin(), mid, all.end());
      xi = *mid;
    }
    ++out.iteration_count;
    RmsValue d = p.at(xi);
    if (sign(d.left) > 0) t2 = xi;
    else if (sign(d.right) < 0) t1 = xi;
    else return at_point(xi);
  }
  auto [q1, q2] = p.pieces((t1 + t2) / 2);
  return done(piece_argmin(q1, q2, variant));
}

}  // namespace rmsalign
