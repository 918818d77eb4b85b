#pragma once

#include <string>

#include <json.hpp>

#include "rmsalign/hausdorff1d.hpp"
#include "rmsalign/hausdorff2d.hpp"
#include "rmsalign/instance.hpp"
#include "rmsalign/oracles.hpp"
#include "rmsalign/preference.hpp"
#include "rmsalign/subdivision.hpp"

namespace rmsalign {

using Json = nlohmann::ordered_json;

// {"A": [[x, y], ...], "B": [...]}; coordinates are integers, JSON numbers
// (read through their shortest decimal text), decimal strings or "p/q".
Instance parse_pointset(const std::string& text);
Instance pointset_from_json(const Json& doc);

// Scalars are written as {"q": "p/q", "approx": "..."}; irrational QuadAlg values
// as {"p": ..., "q": ..., "d": "...", "approx": "..."}.
Json to_json(const Scalar& v);
Json to_json(const QuadAlg& v);
Json to_json(const Point& p);
Json to_json(const AlgPoint& p);
Json to_json(const Line& l);
Json to_json(const Halfplane& h);
Json to_json(const Matching& pi);
Json to_json(const CostPlane& plane);
Json to_json(const ConvexPolygon& poly);
Json to_json(const Instance& inst);
Json to_json(const Subdivision& sub);
Json to_json(const LineTrace& tr);
Json to_json(const MinimaSet& set);
Json to_json(const LocalMinResult& r);
Json to_json(const LocalMin1D& r);
Json to_json(const LocalMin2D& r);
Json to_json(const IcpResult& r);
Json to_json(const PreferenceLists& p);

// Inverses; throw ParseError on malformed documents.
Scalar scalar_from_json(const Json& j);
QuadAlg quadalg_from_json(const Json& j);
Point point_from_json(const Json& j);
Subdivision subdivision_from_json(const Json& j);
LineTrace line_trace_from_json(const Json& j);
MinimaSet minima_from_json(const Json& j);

// "a,b,c" for a x + b y = c, "x=c" or "y=c"
Line parse_line(const std::string& text);
Point parse_point(const std::string& text);  // "x,y"

// cell_index,param_start,param_end,matched_set,c,d_x,d_y
std::string trace_csv(const LineTrace& tr);
std::string minima_csv(const MinimaSet& set);
std::string subdivision_csv(const Subdivision& sub);

std::string dump(const Json& j);  // two-space indent, trailing newline

}  // namespace rmsalign
