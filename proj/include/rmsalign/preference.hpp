#pragma once

#include <set>
#include <vector>

#include "rmsalign/instance.hpp"

namespace rmsalign {

// lists[i] holds A-indices in decreasing preference of b_i.
struct PreferenceLists {
  std::size_t n = 0;
  std::vector<std::vector<int>> lists;
  bool degenerate = false;  // a distance tie was broken by index

  std::size_t m() const { return lists.size(); }
};

// Permutation of 0..m-1: the order in which B picks.
using Ordering = std::vector<int>;

PreferenceLists preference_lists(const Instance& inst, const Point& t);
// Throws ListExhausted when some list has no unclaimed entry left.
Matching serial_dictatorship(const PreferenceLists& prefs, const Ordering& order);
bool is_efficient(const PreferenceLists& prefs, const Matching& pi);
// Matched sets over all m! serial dictatorships; BudgetExceeded for m > 9.
std::set<std::vector<int>> efficient_images(const PreferenceLists& prefs);

// Points of the quadratic-size lower-bound construction; dim 1 lies on the x-axis.
// Throws ValidationError on bad parameters, SeparationViolated when the
// two-block separation fails.
Instance gen_lower_bound(int l, int k, int dim);
// Lists whose efficient matchings have C(m, m/2) images.
PreferenceLists gen_proposition_lists(int m, int n);

// Rational upper bound on m (ln m + 1).
Scalar union_bound(unsigned m);

}  // namespace rmsalign
