#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmsalign/numeric.hpp"

namespace rmsalign {

enum class Variant { Uni, L1, Linf };

std::string to_string(Variant v);
Variant parse_variant(const std::string& s);  // "uni" | "l1" | "linf"; throws ParseError

// Nearest-site map of a sorted set; ties at a midpoint go to the larger site.
struct StepFunction {
  std::vector<Scalar> sites;
  std::vector<Scalar> breakpoints;  // consecutive midpoints

  Scalar evaluate(const Scalar& x) const;
  // limit from the left, i.e. ties go to the smaller site
  Scalar evaluate_left(const Scalar& x) const;
};

// Throws ValidationError on an empty or non-increasing list.
StepFunction step_function(std::vector<Scalar> sites);

struct RmsValue {
  Scalar value, left, right;  // value and one-sided derivatives
};

RmsValue rms1d(const std::vector<Scalar>& A, const std::vector<Scalar>& B, const Scalar& t,
               Variant variant);

struct Quadratic {
  Scalar a2, a1, a0;
};

struct LocalMin1D {
  QuadAlg t_star, value;
  Variant variant = Variant::Uni;
  std::size_t iteration_count = 0;
  std::size_t total_breakpoints = 0;
};

struct H1Options {
  bool weighted_median = true;  // false: plain median of the remaining breakpoints
};

// Inputs are sorted on entry; duplicates in either set are rejected.
LocalMin1D local_min_h1(std::vector<Scalar> A, std::vector<Scalar> B, Variant variant,
                        const H1Options& opts = {});

}  // namespace rmsalign
