#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "rmsalign/errors.hpp"
#include "rmsalign/io.hpp"

using namespace rmsalign;

namespace {

struct Common {
  std::string input, output, format = "json";
  std::size_t budget = 0;
  unsigned threads = 1;
};

std::string read_all(const std::string& path) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_all(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open output file " + path);
  out << text;
}

Instance load(const Common& c) { return parse_pointset(read_all(c.input)); }

void emit(const Common& c, const Json& j, const std::string& csv = {}) {
  if (c.format == "csv") {
    if (csv.empty()) throw ParseError("csv output is not available for this command");
    write_all(c.output, csv);
  } else {
    write_all(c.output, dump(j));
  }
}

BuildOptions build_opts(const Common& c) {
  BuildOptions o;
  if (c.budget > 0) o.max_regions = c.budget;
  return o;
}

// x-coordinates of a set that lies on the x-axis
std::vector<Scalar> on_axis(const std::vector<Point>& ps, const char* name) {
  std::vector<Scalar> xs;
  for (const auto& p : ps) {
    if (sgn(p.y) != 0) throw ValidationError(std::string("--dim 1 needs every point of ") + name + " on the x-axis");
    xs.push_back(p.x);
  }
  return xs;
}

Point parse_start(const std::string& s, int dim) {
  if (dim == 1 && s.find(',') == std::string::npos) return {parse_scalar(s), 0};
  return parse_point(s);
}

// Deterministic draws independent of the standard library's distributions.
long draw(std::mt19937_64& rng, long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

Instance random_instance(std::uint64_t seed, int n, int m, long range, int dim) {
  if (n < 1 || m < 1 || m > n) throw ValidationError("need 1 <= m <= n");
  std::uint64_t cells = static_cast<std::uint64_t>(2 * range + 1);
  if (dim == 2) cells *= cells;
  if (static_cast<std::uint64_t>(n) > cells) throw ValidationError("range too small for n distinct points");
  std::mt19937_64 rng(seed);
  auto pick = [&](int count) {
    std::vector<Point> out;
    while (static_cast<int>(out.size()) < count) {
      Point p{draw(rng, -range, range), dim == 2 ? draw(rng, -range, range) : 0};
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    return out;
  };
  auto A = pick(n);
  auto B = pick(m);
  return Instance::make(std::move(A), std::move(B));
}

void add_common(CLI::App* app, Common& c, bool with_input = true) {
  if (with_input) app->add_option("--input", c.input, "point set document (default stdin)");
  app->add_option("--output", c.output, "output file (default stdout)");
  app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--budget", c.budget, "region budget for subdivision builds");
  app->add_option("--threads", c.threads, "worker threads (output is identical for any value)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact RMS alignment of planar point sets under translation"};
  app.require_subcommand(1);
  Common c;
  std::string line_text, start_text, variant_text = "uni";
  int dim = 2, l = 0, k = 0, gm = 0, gn = 0;
  long range = 10;
  std::uint64_t seed = 0;

  auto* pm = app.add_subcommand("pm", "partial matching")->require_subcommand(1);
  auto* pm_local = pm->add_subcommand("local-min", "local minimum by slab shrinking");
  auto* pm_global = pm->add_subcommand("global-min", "global minimum over the subdivision");
  auto* pm_trace = pm->add_subcommand("trace", "optimal matchings along a line");
  auto* pm_sub = pm->add_subcommand("subdivision", "full subdivision of translation space");
  pm_trace->add_option("--line", line_text, "a,b,c | x=c | y=c")->required();
  for (auto* s : {pm_local, pm_global, pm_trace, pm_sub}) add_common(s, c);

  auto* haus = app.add_subcommand("haus", "nearest-neighbour (Hausdorff) RMS")->require_subcommand(1);
  auto* h_local = haus->add_subcommand("local-min", "local minimum");
  auto* h_icp = haus->add_subcommand("icp", "iterated closest point");
  for (auto* s : {h_local, h_icp}) {
    add_common(s, c);
    s->add_option("--dim", dim)->check(CLI::IsMember({1, 2}));
  }
  h_local->add_option("--variant", variant_text)->check(CLI::IsMember({"uni", "l1", "linf"}));
  h_icp->add_option("--start", start_text, "x,y")->required();

  auto* gen = app.add_subcommand("gen", "instance generators")->require_subcommand(1);
  auto* g_lower = gen->add_subcommand("lower-bound", "quadratic-size lower-bound construction");
  g_lower->add_option("--l", l)->required();
  g_lower->add_option("--k", k)->required();
  g_lower->add_option("--dim", dim)->check(CLI::IsMember({1, 2}));
  auto* g_prop = gen->add_subcommand("proposition", "preference lists with many efficient images");
  g_prop->add_option("--m", gm)->required();
  g_prop->add_option("--n", gn)->required();
  auto* g_rand = gen->add_subcommand("random", "random integer instance");
  g_rand->add_option("--n", gn)->required();
  g_rand->add_option("--m", gm)->required();
  g_rand->add_option("--range", range, "coordinates in [-range, range]");
  g_rand->add_option("--dim", dim)->check(CLI::IsMember({1, 2}));
  g_rand->add_option("--seed", seed);
  for (auto* s : {g_lower, g_prop, g_rand}) add_common(s, c, false);

  auto* oracle = app.add_subcommand("oracle", "exhaustive references")->require_subcommand(1);
  auto* o_pm = oracle->add_subcommand("pm-minima", "all partial-matching local minima");
  auto* o_h1 = oracle->add_subcommand("h1-minima", "all 1D Hausdorff local minima");
  auto* o_h2 = oracle->add_subcommand("h2-minima", "all 2D Hausdorff local minima (uni, l1)");
  auto* o_trace = oracle->add_subcommand("line-trace", "line trace by enumeration");
  o_h1->add_option("--variant", variant_text)->check(CLI::IsMember({"uni", "l1", "linf"}));
  o_h2->add_option("--variant", variant_text)->check(CLI::IsMember({"uni", "l1"}));
  o_trace->add_option("--line", line_text, "a,b,c | x=c | y=c")->required();
  for (auto* s : {o_pm, o_h1, o_h2, o_trace}) add_common(s, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (pm_local->parsed()) {
      emit(c, to_json(local_minimum_pm(load(c))));
    } else if (pm_global->parsed()) {
      emit(c, to_json(global_minimum_pm(load(c), build_opts(c))));
    } else if (pm_trace->parsed()) {
      auto tr = trace_line(load(c), parse_line(line_text));
      emit(c, to_json(tr), trace_csv(tr));
    } else if (pm_sub->parsed()) {
      auto sub = build_subdivision(load(c), build_opts(c));
      emit(c, to_json(sub), subdivision_csv(sub));
    } else if (h_local->parsed()) {
      auto inst = load(c);
      Variant v = parse_variant(variant_text);
      if (dim == 1)
        emit(c, to_json(local_min_h1(on_axis(inst.A, "A"), on_axis(inst.B, "B"), v)));
      else
        emit(c, to_json(local_min_h2(inst, v)));
    } else if (h_icp->parsed()) {
      emit(c, to_json(icp(load(c), parse_start(start_text, dim), dim)));
    } else if (g_lower->parsed()) {
      emit(c, to_json(gen_lower_bound(l, k, dim)));
    } else if (g_prop->parsed()) {
      emit(c, to_json(gen_proposition_lists(gm, gn)));
    } else if (g_rand->parsed()) {
      emit(c, to_json(random_instance(seed, gn, gm, range, dim)));
    } else if (o_pm->parsed()) {
      auto set = enumerate_pm_minima(load(c));
      emit(c, to_json(set), minima_csv(set));
    } else if (o_h1->parsed()) {
      auto inst = load(c);
      auto set = enumerate_h1_minima(on_axis(inst.A, "A"), on_axis(inst.B, "B"), parse_variant(variant_text));
      emit(c, to_json(set), minima_csv(set));
    } else if (o_h2->parsed()) {
      auto set = enumerate_h2_minima(load(c), parse_variant(variant_text));
      emit(c, to_json(set), minima_csv(set));
    } else if (o_trace->parsed()) {
      auto tr = brute_line_trace(load(c), parse_line(line_text));
      emit(c, to_json(tr), trace_csv(tr));
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
