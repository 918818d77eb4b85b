#include "rmsalign/assignment.hpp"

#include <array>
#include <map>

namespace rmsalign {

namespace {

// Cost with K polynomial coefficients (in eps) followed by an integer tie key;
// compared lexicographically, which is an ordered group, so the Hungarian
// potentials stay exact.
template <int K>
struct LexCost {
  std::array<Scalar, K> c{};
  Integer tie = 0;

  LexCost& operator+=(const LexCost& o) {
    for (int i = 0; i < K; ++i) c[i] += o.c[i];
    tie += o.tie;
    return *this;
  }
  LexCost& operator-=(const LexCost& o) {
    for (int i = 0; i < K; ++i) c[i] -= o.c[i];
    tie -= o.tie;
    return *this;
  }
  friend LexCost operator-(LexCost a, const LexCost& b) { return a -= b; }
  friend bool operator<(const LexCost& a, const LexCost& b) {
    for (int i = 0; i < K; ++i) {
      int s = cmp(a.c[i], b.c[i]);
      if (s != 0) return s < 0;
    }
    return a.tie < b.tie;
  }
};

// Shortest-augmenting-path Hungarian with potentials on an m x k matrix, m <= k.
// Returns the column of each row.
template <class W>
std::vector<int> hungarian(const std::vector<std::vector<W>>& a) {
  const int m = static_cast<int>(a.size());
  const int k = m == 0 ? 0 : static_cast<int>(a[0].size());
  std::vector<W> u(m + 1), v(k + 1);
  std::vector<int> p(k + 1, 0), way(k + 1, 0);
  for (int i = 1; i <= m; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<W> minv(k + 1);
    std::vector<char> has(k + 1, 0), used(k + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      W delta;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        W cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (!has[j] || cur < minv[j]) {
          minv[j] = cur;
          has[j] = 1;
          way[j] = j0;
        }
        if (j1 < 0 || minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(m, -1);
  for (int j = 1; j <= k; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

// Tie keys make the lexicographically smallest column array the unique optimum.
std::vector<std::vector<Integer>> tie_keys(std::size_t m, std::size_t k) {
  std::vector<std::vector<Integer>> keys(m, std::vector<Integer>(k));
  Integer w = 1;
  for (std::size_t i = m; i-- > 0;) {
    for (std::size_t j = 0; j < k; ++j) keys[i][j] = w * static_cast<unsigned long>(j);
    w *= static_cast<unsigned long>(k);
  }
  return keys;
}

template <int K, class CostFn>
Matching solve(const Instance& inst, const std::vector<int>& cols, CostFn cost) {
  const std::size_t m = inst.m(), k = cols.size();
  auto keys = tie_keys(m, k);
  std::vector<std::vector<LexCost<K>>> a(m, std::vector<LexCost<K>>(k));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      a[i][j].c = cost(inst.B[i], inst.A[static_cast<std::size_t>(cols[j])]);
      a[i][j].tie = keys[i][j];
    }
  auto rc = hungarian(a);
  std::vector<int> assign(m);
  for (std::size_t i = 0; i < m; ++i) assign[i] = cols[static_cast<std::size_t>(rc[i])];
  return Matching(std::move(assign));
}

std::vector<int> all_columns(const Instance& inst) {
  std::vector<int> cols(inst.n());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = static_cast<int>(j);
  return cols;
}

}  // namespace

CostPlane cost_plane(const Instance& inst, const Matching& pi) {
  CostPlane pl;
  pl.c = 0;
  pl.d = Point{0, 0};
  pl.m = static_cast<int>(inst.m());
  for (std::size_t i = 0; i < inst.m(); ++i) {
    Point diff = inst.B[i] - inst.A[static_cast<std::size_t>(pi.assign[i])];
    pl.c += norm2(diff);
    pl.d += diff;
  }
  pl.d = Scalar(2) * pl.d;
  return pl;
}

Scalar matching_cost(const Instance& inst, const Matching& pi, const Point& t) {
  Scalar s = 0;
  for (std::size_t i = 0; i < inst.m(); ++i)
    s += sq_dist(inst.B[i] + t, inst.A[static_cast<std::size_t>(pi.assign[i])]);
  return s;
}

Matching optimal_matching(const Instance& inst, const Point& t) {
  return optimal_matching_on(inst, all_columns(inst), t);
}

Matching optimal_matching_on(const Instance& inst, const std::vector<int>& cols, const Point& t) {
  return solve<1>(inst, cols, [&](const Point& b, const Point& a) {
    return std::array<Scalar, 1>{sq_dist(b + t, a)};
  });
}

Matching optimal_matching_perturbed(const Instance& inst, const SymbolicPoint& at) {
  const Scalar s2 = norm2(at.dir);
  return solve<3>(inst, all_columns(inst), [&](const Point& b, const Point& a) {
    Point v = b + at.base - a;
    return std::array<Scalar, 3>{norm2(v), 2 * dot(v, at.dir), s2};
  });
}

std::vector<AlternatingPath> symmetric_difference_paths(const Instance& inst, const Matching& pi,
                                                        const Matching& sigma) {
  const std::size_t m = pi.assign.size();
  std::map<int, int> by_pi, by_sigma;  // a-index -> b-index, differing pairs only
  for (std::size_t i = 0; i < m; ++i) {
    if (pi.assign[i] == sigma.assign[i]) continue;
    by_pi[pi.assign[i]] = static_cast<int>(i);
    by_sigma[sigma.assign[i]] = static_cast<int>(i);
  }
  std::vector<char> seen(m, 0);
  std::vector<AlternatingPath> out;

  auto add_b = [&](AlternatingPath& g, int b) {
    const Point& bp = inst.B[static_cast<std::size_t>(b)];
    const Point& ap = inst.A[static_cast<std::size_t>(pi.assign[static_cast<std::size_t>(b)])];
    const Point& as = inst.A[static_cast<std::size_t>(sigma.assign[static_cast<std::size_t>(b)])];
    g.c_gamma += sq_dist(bp, ap) - sq_dist(bp, as);
    g.d_gamma += Scalar(2) * (as - ap);
    seen[static_cast<std::size_t>(b)] = 1;
  };

  // paths start at an a used only by pi
  for (const auto& [a, b0] : by_pi) {
    if (by_sigma.count(a)) continue;
    AlternatingPath g;
    g.d_gamma = Point{0, 0};
    g.c_gamma = 0;
    int cur_a = a;
    g.vertices.push_back({false, cur_a});
    for (;;) {
      auto it = by_pi.find(cur_a);
      if (it == by_pi.end()) break;
      int b = it->second;
      add_b(g, b);
      g.vertices.push_back({true, b});
      cur_a = sigma.assign[static_cast<std::size_t>(b)];
      g.vertices.push_back({false, cur_a});
    }
    out.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (seen[i] || pi.assign[i] == sigma.assign[i]) continue;
    AlternatingPath g;
    g.cycle = true;
    g.d_gamma = Point{0, 0};
    g.c_gamma = 0;
    const int start_a = pi.assign[i];
    int cur_a = start_a;
    g.vertices.push_back({false, cur_a});
    do {
      int b = by_pi.at(cur_a);
      add_b(g, b);
      g.vertices.push_back({true, b});
      cur_a = sigma.assign[static_cast<std::size_t>(b)];
      g.vertices.push_back({false, cur_a});
    } while (cur_a != start_a);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace rmsalign
