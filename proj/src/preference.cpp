#include "rmsalign/preference.hpp"

#include <algorithm>
#include <numeric>

namespace rmsalign {

namespace {

// Kuhn's augmenting paths: does every row get a distinct allowed column?
bool has_perfect_matching(const std::vector<std::vector<int>>& allowed, std::size_t cols) {
  std::vector<int> owner(cols, -1);
  std::vector<char> seen;
  auto augment = [&](auto&& self, int r) -> bool {
    for (int c : allowed[static_cast<std::size_t>(r)]) {
      auto cu = static_cast<std::size_t>(c);
      if (seen[cu]) continue;
      seen[cu] = 1;
      if (owner[cu] < 0 || self(self, owner[cu])) {
        owner[cu] = r;
        return true;
      }
    }
    return false;
  };
  for (std::size_t r = 0; r < allowed.size(); ++r) {
    seen.assign(cols, 0);
    if (!augment(augment, static_cast<int>(r))) return false;
  }
  return true;
}

}  // namespace

PreferenceLists preference_lists(const Instance& inst, const Point& t) {
  PreferenceLists p;
  p.n = inst.n();
  const std::size_t len = std::min(inst.m(), inst.n());
  for (const auto& b : inst.B) {
    std::vector<std::pair<Scalar, int>> d;
    for (std::size_t j = 0; j < inst.n(); ++j) d.emplace_back(sq_dist(b + t, inst.A[j]), static_cast<int>(j));
    std::sort(d.begin(), d.end());
    // ties inside the prefix or at its cut
    const std::size_t upto = std::min(len + 1, d.size());
    for (std::size_t k = 1; k < upto; ++k)
      if (d[k].first == d[k - 1].first) p.degenerate = true;
    std::vector<int> l;
    for (std::size_t k = 0; k < len; ++k) l.push_back(d[k].second);
    p.lists.push_back(std::move(l));
  }
  return p;
}

Matching serial_dictatorship(const PreferenceLists& prefs, const Ordering& order) {
  std::vector<int> assign(prefs.m(), -1);
  std::vector<int> claimed;
  for (int i : order) {
    const auto& l = prefs.lists.at(static_cast<std::size_t>(i));
    auto it = std::find_if(l.begin(), l.end(), [&](int a) {
      return std::find(claimed.begin(), claimed.end(), a) == claimed.end();
    });
    if (it == l.end()) throw ListExhausted("list of b" + std::to_string(i + 1) + " exhausted");
    assign[static_cast<std::size_t>(i)] = *it;
    claimed.push_back(*it);
  }
  return Matching(std::move(assign));
}

bool is_efficient(const PreferenceLists& prefs, const Matching& pi) {
  const std::size_t m = prefs.m();
  std::size_t cols = prefs.n;
  for (const auto& l : prefs.lists)
    for (int a : l) cols = std::max(cols, static_cast<std::size_t>(a) + 1);
  std::vector<std::size_t> rank(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& l = prefs.lists[i];
    auto it = std::find(l.begin(), l.end(), pi.assign[i]);
    if (it == l.end()) throw ValidationError("matching uses an entry outside the lists");
    rank[i] = static_cast<std::size_t>(it - l.begin());
  }
  for (std::size_t strict = 0; strict < m; ++strict) {
    std::vector<std::vector<int>> allowed(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t upto = i == strict ? rank[i] : rank[i] + 1;
      allowed[i].assign(prefs.lists[i].begin(), prefs.lists[i].begin() + static_cast<long>(upto));
    }
    if (has_perfect_matching(allowed, cols)) return false;
  }
  return true;
}

std::set<std::vector<int>> efficient_images(const PreferenceLists& prefs) {
  const std::size_t m = prefs.m();
  if (m > 9) throw BudgetExceeded("efficient_images enumerates m! orders; m = " + std::to_string(m) + " > 9");
  Ordering order(m);
  std::iota(order.begin(), order.end(), 0);
  std::set<std::vector<int>> out;
  do {
    out.insert(serial_dictatorship(prefs, order).matched_set);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

Instance gen_lower_bound(int l, int k, int dim) {
  if (l < 2 || k <= l) throw ValidationError("gen_lower_bound needs 2 <= l < k");
  if (dim != 1 && dim != 2) throw ValidationError("gen_lower_bound dim must be 1 or 2");
  const long K = k - 1;
  if (dim == 1) {
    std::vector<Point> a, b;
    for (long x = (l - 1) * K; x <= l * K; ++x) a.push_back({Scalar(x), 0});
    for (long i = 0; i < l; ++i) b.push_back({Scalar(i * K), 0});
    return Instance::make(std::move(a), std::move(b));
  }
  // worst case of the separation is the largest horizontal shift t1 = l (k - 1)
  const Integer t1 = Integer(l) * K;
  const Integer far = Integer(3 * l - 1) * K - t1;
  const Integer dx = Integer(2 * l) * K - t1, dy = Integer(l) * K;
  if (sgn(far) <= 0 || far * far <= dx * dx + dy * dy)
    throw SeparationViolated("block separation fails for l = " + std::to_string(l) +
                             ", k = " + std::to_string(k));
  const long base = static_cast<long>(l) * k - l - k;
  const long drop = 2L * l * K;
  std::vector<Point> a, b;
  for (long t = 1; t <= k; ++t) a.push_back({Scalar(base + t), 0});
  for (long t = 1; t <= k; ++t) a.push_back({0, Scalar(base + t)});
  for (long t = 1; t <= l; ++t) b.push_back({Scalar((t - 1) * K), Scalar(-drop)});
  for (long t = 1; t <= l; ++t) b.push_back({Scalar(-drop), Scalar((t - 1) * K)});
  return Instance::make(std::move(a), std::move(b));
}

PreferenceLists gen_proposition_lists(int m, int n) {
  if (m < 2 || m % 2 != 0) throw ValidationError("gen_proposition_lists needs an even m >= 2");
  const int half = m / 2;
  if (n < half + m) throw ValidationError("gen_proposition_lists needs n >= m/2 + m");
  PreferenceLists p;
  p.n = static_cast<std::size_t>(n);
  for (int i = 0; i < m; ++i) {
    std::vector<int> l;
    for (int s = 0; s < half; ++s) l.push_back(s);
    l.push_back(half + i);
    for (int a = 0; static_cast<int>(l.size()) < m; ++a)
      if (std::find(l.begin(), l.end(), a) == l.end()) l.push_back(a);
    p.lists.push_back(std::move(l));
  }
  return p;
}

Scalar union_bound(unsigned m) { return Scalar(m) * (ln_upper_bound(m) + 1); }

}  // namespace rmsalign
