#include "rmsalign/instance.hpp"

#include <algorithm>
#include <set>

namespace rmsalign {

void Instance::validate() const {
  if (A.empty()) throw ValidationError("point set A is empty");
  if (B.empty()) throw ValidationError("point set B is empty");
  if (B.size() > A.size())
    throw ValidationError("|B| = " + std::to_string(B.size()) + " exceeds |A| = " +
                          std::to_string(A.size()));
  for (const auto* set : {&A, &B}) {
    std::set<Point> seen(set->begin(), set->end());
    if (seen.size() != set->size())
      throw ValidationError(std::string("duplicate point in ") + (set == &A ? "A" : "B"));
  }
}

Instance Instance::make(std::vector<Point> a, std::vector<Point> b) {
  Instance inst{std::move(a), std::move(b)};
  inst.validate();
  return inst;
}

Matching::Matching(std::vector<int> a) : assign(std::move(a)), matched_set(assign) {
  std::sort(matched_set.begin(), matched_set.end());
}

std::string to_string(const Matching& pi) {
  std::string s = "[";
  for (std::size_t i = 0; i < pi.assign.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(pi.assign[i]);
  }
  return s + "]";
}

std::string to_string(Descent d) {
  switch (d) {
    case Descent::Left: return "left";
    case Descent::Right: return "right";
    case Descent::LocalMin: return "local-min-found";
  }
  return "local-min-found";
}

Scalar cost_at(const CostPlane& plane, const Point& t) {
  return plane.c + dot(t, plane.d) + Scalar(plane.m) * norm2(t);
}

Point plane_vertex(const CostPlane& plane) { return plane.d / Scalar(-2 * plane.m); }

Point plane_gradient(const CostPlane& plane, const Point& t) {
  return plane.d + Scalar(2 * plane.m) * t;
}

}  // namespace rmsalign
