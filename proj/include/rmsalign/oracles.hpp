#pragma once

#include <vector>

#include "rmsalign/hausdorff1d.hpp"
#include "rmsalign/instance.hpp"
#include "rmsalign/subdivision.hpp"

// Exhaustive reference computations. Only the data types of the algorithm
// headers are used here; the implementations rely on the numeric core alone.
namespace rmsalign {

struct MinimumEntry {
  AlgPoint t;  // 1D minima lie on the x-axis
  QuadAlg value;
  std::vector<int> assignment;  // matching, or per-b nearest A-index
  // smooth minima: the gradient (zero); 1D kinks: left and right derivative
  std::vector<QuadAlg> certificate;
};

// Sorted by value, then t; t values pairwise distinct.
struct MinimaSet {
  std::vector<MinimumEntry> entries;

  bool contains(const AlgPoint& t, const QuadAlg& value) const;
  const MinimumEntry& minimum() const { return entries.front(); }
};

struct OracleLimits {
  std::size_t max_n = 9, max_m = 6;
};

Matching brute_matching(const Instance& inst, const Point& t, const OracleLimits& lim = {});
MinimaSet enumerate_pm_minima(const Instance& inst, const OracleLimits& lim = {});
LineTrace brute_line_trace(const Instance& inst, const Line& line, const OracleLimits& lim = {});
MinimaSet enumerate_h1_minima(const std::vector<Scalar>& A, const std::vector<Scalar>& B, Variant variant);
// uni and l1 only; BudgetExceeded when the bisector arrangement is too large
MinimaSet enumerate_h2_minima(const Instance& inst, Variant variant);

}  // namespace rmsalign
