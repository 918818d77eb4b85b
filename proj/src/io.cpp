#include "rmsalign/io.hpp"

#include <sstream>

namespace rmsalign {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

Json opt_point(const std::optional<Point>& p) { return p ? to_json(*p) : Json(nullptr); }
Json opt_scalar(const std::optional<Scalar>& s) { return s ? to_json(*s) : Json(nullptr); }

std::optional<Point> opt_point_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return point_from_json(j);
}
std::optional<Scalar> opt_scalar_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return scalar_from_json(j);
}

std::vector<int> ints_from(const Json& j) {
  if (!j.is_array()) bad("expected an integer array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) bad("expected an integer");
    out.push_back(v.get<int>());
  }
  return out;
}

template <class T, class F>
Json array_of(const std::vector<T>& xs, F f) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(f(x));
  return a;
}

Halfplane halfplane_from(const Json& j) {
  const auto& k = field(j, "keep");
  if (!k.is_string() || (k != "le" && k != "ge")) bad("keep must be \"le\" or \"ge\"");
  return Halfplane(point_from_json(field(j, "normal")), scalar_from_json(field(j, "offset")),
                   k == "le" ? Keep::LE : Keep::GE);
}

Line line_from(const Json& j) {
  return Line(point_from_json(field(j, "normal")), scalar_from_json(field(j, "offset")));
}

Json edge_json(const PolygonEdge& e) {
  return Json{{"halfplane", to_json(e.h)}, {"from", opt_point(e.from)}, {"to", opt_point(e.to)}};
}

PolygonEdge edge_from(const Json& j) {
  return {halfplane_from(field(j, "halfplane")), opt_point_from(field(j, "from")), opt_point_from(field(j, "to"))};
}

ConvexPolygon polygon_from(const Json& j) {
  ConvexPolygon p;
  for (const auto& v : field(j, "vertices")) p.vertices.push_back(point_from_json(v));
  for (const auto& v : field(j, "unbounded_rays")) p.unbounded_rays.push_back(point_from_json(v));
  for (const auto& h : field(j, "halfplanes")) p.halfplanes.push_back(halfplane_from(h));
  for (const auto& e : field(j, "edges")) p.edges.push_back(edge_from(e));
  return p;
}

CostPlane plane_from(const Json& j) {
  const auto& m = field(j, "m");
  if (!m.is_number_integer()) bad("plane m must be an integer");
  return {scalar_from_json(field(j, "c")), point_from_json(field(j, "d")), m.get<int>()};
}

Json point_list(const std::vector<Point>& ps) {
  return array_of(ps, [](const Point& p) { return to_json(p); });
}

std::string csv_scalar(const std::optional<Scalar>& s, const char* inf) { return s ? to_string(*s) : inf; }

std::string joined(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ";" : "") + std::to_string(xs[i]);
  return out;
}

std::vector<Point> points_from(const Json& j, const char* which) {
  if (!j.is_array()) bad(std::string("'") + which + "' must be an array of coordinate pairs");
  std::vector<Point> pts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) bad(std::string("entries of '") + which + "' must be [x, y] pairs");
    pts.push_back({scalar_from_json(p[0]), scalar_from_json(p[1])});
  }
  return pts;
}

}  // namespace

Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Scalar(j.dump());
  if (j.is_number_float()) return parse_scalar(j.dump());
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_object() && j.contains("q") && !j.contains("d")) return scalar_from_json(j.at("q"));
  bad("expected a number, got " + j.dump());
}

QuadAlg quadalg_from_json(const Json& j) {
  if (j.is_object() && j.contains("d")) {
    const auto& d = j.at("d");
    Integer dv;
    if (d.is_number_integer()) dv = Integer(d.dump());
    else if (d.is_string()) {
      if (dv.set_str(d.get<std::string>(), 10) != 0) bad("bad radicand " + d.dump());
    } else bad("bad radicand " + d.dump());
    if (sgn(dv) < 0) bad("negative radicand");
    return QuadAlg::make(scalar_from_json(field(j, "p")), scalar_from_json(field(j, "q")), dv);
  }
  return QuadAlg(scalar_from_json(j));
}

Point point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected an [x, y] pair");
  return {scalar_from_json(j[0]), scalar_from_json(j[1])};
}

Instance pointset_from_json(const Json& doc) {
  if (!doc.is_object()) bad("point-set document must be an object with keys A and B");
  return Instance::make(points_from(field(doc, "A"), "A"), points_from(field(doc, "B"), "B"));
}

Instance parse_pointset(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  return pointset_from_json(doc);
}


Json to_json(const Scalar& v) { return Json{{"q", to_string(v)}, {"approx", to_decimal(v)}}; }

Json to_json(const QuadAlg& v) {
  if (v.is_rational()) return to_json(v.rational());
  return Json{{"p", to_string(v.p())}, {"q", to_string(v.q())}, {"d", v.d().get_str()}, {"approx", v.to_decimal()}};
}

Json to_json(const Point& p) { return Json::array({to_json(p.x), to_json(p.y)}); }
Json to_json(const AlgPoint& p) { return Json::array({to_json(p.x), to_json(p.y)}); }

Json to_json(const Line& l) { return Json{{"normal", to_json(l.normal)}, {"offset", to_json(l.offset)}}; }

Json to_json(const Halfplane& h) {
  return Json{{"normal", to_json(h.boundary.normal)},
              {"offset", to_json(h.boundary.offset)},
              {"keep", h.keep == Keep::LE ? "le" : "ge"}};
}

Json to_json(const Matching& pi) { return Json(pi.assign); }

Json to_json(const CostPlane& plane) {
  return Json{{"c", to_json(plane.c)}, {"d", to_json(plane.d)}, {"m", plane.m}};
}

Json to_json(const ConvexPolygon& poly) {
  return Json{{"vertices", point_list(poly.vertices)},
              {"unbounded_rays", point_list(poly.unbounded_rays)},
              {"halfplanes", array_of(poly.halfplanes, [](const Halfplane& h) { return to_json(h); })},
              {"edges", array_of(poly.edges, edge_json)}};
}

Json to_json(const Instance& inst) {
  auto coords = [](const std::vector<Point>& ps) {
    return array_of(ps, [](const Point& p) { return Json::array({to_string(p.x), to_string(p.y)}); });
  };
  return Json{{"A", coords(inst.A)}, {"B", coords(inst.B)}};
}

Json to_json(const Subdivision& sub) {
  Json regions = Json::array();
  for (const auto& r : sub.regions) {
    Json edges = Json::array();
    for (const auto& e : r.edges)
      edges.push_back(Json{{"edge", edge_json(e.edge)},
                           {"neighbor", to_json(e.neighbor)},
                           {"neighbor_plane", to_json(e.neighbor_plane)}});
    regions.push_back(Json{{"matching", to_json(r.matching)},
                           {"matched_set", r.matching.matched_set},
                           {"plane", to_json(r.plane)},
                           {"polygon", to_json(r.polygon)},
                           {"edges", edges}});
  }
  Json adj = Json::array();
  for (const auto& [i, j] : sub.adjacency) adj.push_back(Json::array({i, j}));
  return Json{{"region_count", sub.regions.size()},
              {"regions", regions},
              {"vertices", point_list(sub.vertices)},
              {"adjacency", adj}};
}

Subdivision subdivision_from_json(const Json& j) {
  Subdivision sub;
  for (const auto& r : field(j, "regions")) {
    Region reg;
    reg.matching = Matching(ints_from(field(r, "matching")));
    reg.plane = plane_from(field(r, "plane"));
    reg.polygon = polygon_from(field(r, "polygon"));
    for (const auto& e : field(r, "edges"))
      reg.edges.push_back({edge_from(field(e, "edge")), Matching(ints_from(field(e, "neighbor"))),
                           plane_from(field(e, "neighbor_plane"))});
    sub.regions.push_back(std::move(reg));
  }
  for (const auto& v : field(j, "vertices")) sub.vertices.push_back(point_from_json(v));
  for (const auto& a : field(j, "adjacency")) {
    auto p = ints_from(a);
    if (p.size() != 2 || p[0] < 0 || p[1] < 0) bad("adjacency entries are index pairs");
    sub.adjacency.emplace_back(static_cast<std::size_t>(p[0]), static_cast<std::size_t>(p[1]));
  }
  return sub;
}

Json to_json(const LineTrace& tr) {
  Json cells = Json::array();
  for (const auto& c : tr.cells)
    cells.push_back(Json{{"lo", opt_scalar(c.lo)},
                         {"hi", opt_scalar(c.hi)},
                         {"matching", to_json(c.matching)},
                         {"matched_set", c.matching.matched_set},
                         {"plane", to_json(c.plane)}});
  Json vertex = Json::array();
  for (bool b : tr.breakpoint_vertex) vertex.push_back(b);
  return Json{{"line", to_json(tr.line)},
              {"cells", cells},
              {"breakpoints", array_of(tr.breakpoints, [](const Scalar& s) { return to_json(s); })},
              {"breakpoint_vertex", vertex},
              {"min_param", to_json(tr.min_param)},
              {"min_point", to_json(tr.min_point())},
              {"min_value", to_json(tr.min_value)},
              {"min_cell", tr.min_cell},
              {"degenerate_min", tr.degenerate_min},
              {"slope_left", to_json(tr.slope_left)},
              {"slope_right", to_json(tr.slope_right)},
              {"descent", to_string(tr.descent)}};
}

LineTrace line_trace_from_json(const Json& j) {
  LineTrace tr;
  tr.line = line_from(field(j, "line"));
  for (const auto& c : field(j, "cells"))
    tr.cells.push_back({opt_scalar_from(field(c, "lo")), opt_scalar_from(field(c, "hi")),
                        Matching(ints_from(field(c, "matching"))), plane_from(field(c, "plane"))});
  for (const auto& s : field(j, "breakpoints")) tr.breakpoints.push_back(scalar_from_json(s));
  for (const auto& b : field(j, "breakpoint_vertex")) {
    if (!b.is_boolean()) bad("breakpoint_vertex entries are booleans");
    tr.breakpoint_vertex.push_back(b.get<bool>());
  }
  tr.min_param = scalar_from_json(field(j, "min_param"));
  tr.min_value = scalar_from_json(field(j, "min_value"));
  const auto& mc = field(j, "min_cell");
  if (!mc.is_number_unsigned()) bad("min_cell must be a non-negative integer");
  tr.min_cell = mc.get<std::size_t>();
  const auto& dm = field(j, "degenerate_min");
  if (!dm.is_boolean()) bad("degenerate_min must be a boolean");
  tr.degenerate_min = dm.get<bool>();
  tr.slope_left = scalar_from_json(field(j, "slope_left"));
  tr.slope_right = scalar_from_json(field(j, "slope_right"));
  const auto& d = field(j, "descent");
  if (d == "left") tr.descent = Descent::Left;
  else if (d == "right") tr.descent = Descent::Right;
  else if (d == "local-min-found") tr.descent = Descent::LocalMin;
  else bad("unknown descent " + d.dump());
  return tr;
}

Json to_json(const MinimaSet& set) {
  Json entries = Json::array();
  for (const auto& e : set.entries)
    entries.push_back(Json{{"t", to_json(e.t)},
                           {"value", to_json(e.value)},
                           {"assignment", e.assignment},
                           {"certificate", array_of(e.certificate, [](const QuadAlg& q) { return to_json(q); })}});
  return Json{{"count", set.entries.size()}, {"entries", entries}};
}

MinimaSet minima_from_json(const Json& j) {
  MinimaSet set;
  for (const auto& e : field(j, "entries")) {
    MinimumEntry m;
    const auto& t = field(e, "t");
    if (!t.is_array() || t.size() != 2) bad("t must be a coordinate pair");
    m.t = AlgPoint(quadalg_from_json(t[0]), quadalg_from_json(t[1]));
    m.value = quadalg_from_json(field(e, "value"));
    m.assignment = ints_from(field(e, "assignment"));
    for (const auto& c : field(e, "certificate")) m.certificate.push_back(quadalg_from_json(c));
    set.entries.push_back(std::move(m));
  }
  return set;
}

Json to_json(const LocalMinResult& r) {
  return Json{{"t_star", to_json(r.t_star)},
              {"value", to_json(r.value)},
              {"matching", to_json(r.matching)},
              {"matched_set", r.matching.matched_set},
              {"plane", to_json(r.plane)},
              {"certificate", to_json(r.certificate)},
              {"trace_calls", r.trace_calls},
              {"regions_built", r.regions_built}};
}

Json to_json(const LocalMin1D& r) {
  return Json{{"t_star", to_json(r.t_star)},
              {"value", to_json(r.value)},
              {"variant", to_string(r.variant)},
              {"iteration_count", r.iteration_count},
              {"total_breakpoints", r.total_breakpoints}};
}

Json to_json(const LocalMin2D& r) {
  Json j{{"t_star", to_json(r.t_star)},
         {"value", to_json(r.value)},
         {"variant", to_string(r.variant)},
         {"exact", r.exact},
         {"assignment", r.assignment},
         {"reverse_assignment", r.reverse_assignment}};
  if (!r.exact) j["interval"] = Json::array({opt_scalar(r.interval_lo), opt_scalar(r.interval_hi)});
  j["calls"] = Json{{"stage1", r.stage1_calls}, {"stage2", r.stage2_calls}, {"final", r.final_calls}};
  j["stage1_candidates"] = r.stage1_candidates;
  j["stage2_intersections"] = r.stage2_intersections;
  return j;
}

Json to_json(const IcpResult& r) {
  return Json{{"t", to_json(r.t)},
              {"value", to_json(r.value)},
              {"assignment", r.assignment},
              {"recenterings", r.recenterings},
              {"converged", r.converged}};
}

Json to_json(const PreferenceLists& p) {
  return Json{{"n", p.n}, {"lists", p.lists}, {"degenerate", p.degenerate}};
}

Line parse_line(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  try {
    if (s.size() > 2 && (s[0] == 'x' || s[0] == 'y') && s[1] == '=') {
      Scalar c = parse_scalar(s.substr(2));
      return s[0] == 'x' ? Line::vertical(c) : Line::horizontal(c);
    }
    std::vector<std::string> parts;
    std::stringstream in(s);
    for (std::string p; std::getline(in, p, ',');) parts.push_back(p);
    if (parts.size() != 3) bad("line must be 'a,b,c', 'x=c' or 'y=c'");
    Point n{parse_scalar(parts[0]), parse_scalar(parts[1])};
    if (n.is_zero()) throw ValidationError("line normal must be nonzero");
    return Line(n, parse_scalar(parts[2]));
  } catch (const ParseError&) {
    bad("bad line '" + text + "': expected 'a,b,c', 'x=c' or 'y=c'");
  }
}

Point parse_point(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) bad("point must be 'x,y'");
  return {parse_scalar(text.substr(0, comma)), parse_scalar(text.substr(comma + 1))};
}

std::string trace_csv(const LineTrace& tr) {
  std::string out = "cell_index,param_start,param_end,matched_set,c,d_x,d_y\n";
  for (std::size_t i = 0; i < tr.cells.size(); ++i) {
    const auto& c = tr.cells[i];
    out += std::to_string(i) + "," + csv_scalar(c.lo, "-inf") + "," + csv_scalar(c.hi, "inf") + "," +
           joined(c.matching.matched_set) + "," + to_string(c.plane.c) + "," + to_string(c.plane.d.x) + "," +
           to_string(c.plane.d.y) + "\n";
  }
  return out;
}

std::string minima_csv(const MinimaSet& set) {
  std::string out = "index,t_x,t_y,value,t_x_approx,t_y_approx,value_approx\n";
  for (std::size_t i = 0; i < set.entries.size(); ++i) {
    const auto& e = set.entries[i];
    auto exact = [](const QuadAlg& q) {
      return q.is_rational() ? to_string(q.rational())
                             : to_string(q.p()) + "+" + to_string(q.q()) + "*sqrt(" + q.d().get_str() + ")";
    };
    out += std::to_string(i) + "," + exact(e.t.x) + "," + exact(e.t.y) + "," + exact(e.value) + "," +
           e.t.x.to_decimal() + "," + e.t.y.to_decimal() + "," + e.value.to_decimal() + "\n";
  }
  return out;
}

std::string subdivision_csv(const Subdivision& sub) {
  std::string out = "region_index,matched_set,c,d_x,d_y,edge_count,bounded\n";
  for (std::size_t i = 0; i < sub.regions.size(); ++i) {
    const auto& r = sub.regions[i];
    out += std::to_string(i) + "," + joined(r.matching.matched_set) + "," + to_string(r.plane.c) + "," +
           to_string(r.plane.d.x) + "," + to_string(r.plane.d.y) + "," + std::to_string(r.edges.size()) + "," +
           (r.polygon.bounded() ? "1" : "0") + "\n";
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace rmsalign
