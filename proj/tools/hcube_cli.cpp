#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcube/census.hpp"
#include "hcube/containers.hpp"
#include "hcube/graph_io.hpp"
#include "hcube/isoperimetry.hpp"
#include "hcube/verify.hpp"

using json = nlohmann::ordered_json;
using namespace hcube;

namespace {

constexpr int kSchemaVersion = 1;

struct OutputOptions {
  std::string format = "json";
  std::string out_path;
  bool no_timing = false;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opt) {
  cmd->add_option("--format", opt.format, "json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--out", opt.out_path, "write output to a file instead of stdout");
  cmd->add_flag("--no-timing", opt.no_timing, "omit timing fields (stable output)");
}

class Emitter {
 public:
  explicit Emitter(const OutputOptions& opt) : opt_(opt) {
    if (!opt.out_path.empty()) {
      file_.open(opt.out_path);
      if (!file_) throw std::runtime_error("cannot open " + opt.out_path);
    }
    start_ = std::chrono::steady_clock::now();
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  void record(json rec) {
    if (!opt_.no_timing) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start_)
                    .count();
      rec["timing_ms"] = ms;
    }
    if (opt_.format == "text") {
      for (auto& [k, v] : rec.items())
        stream() << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else {
      stream() << rec.dump() << "\n";
    }
  }

 private:
  const OutputOptions& opt_;
  std::ofstream file_;
  std::chrono::steady_clock::time_point start_;
};

json base_record(const std::string& subcommand) {
  json rec;
  rec["schema_version"] = kSchemaVersion;
  rec["subcommand"] = subcommand;
  return rec;
}

json vertex_list(const VertexSet& s) {
  json arr = json::array();
  s.for_each([&](Vertex v) { arr.push_back(v); });
  return arr;
}

struct ParamFlags {
  ContainerParams params;
  void attach(CLI::App* cmd) {
    cmd->add_option("--phi", params.phi, "first-stage degree threshold");
    cmd->add_option("--psi", params.psi, "second-stage degree slack");
    cmd->add_option("--gamma", params.gamma, "reconstruction branch threshold");
    cmd->add_option("--c", params.c, "gamma scale constant");
    cmd->add_option("--cprime", params.c_prime, "psi scale constant");
    cmd->add_option("--seed", params.seed, "random seed");
    cmd->add_option("--max-retries", params.max_retries, "sampling retry cap");
  }
};

int run_count(int d, const std::string& method, bool extended, const OutputOptions& opt) {
  if (d == 6 && !extended) throw std::domain_error("d = 6 needs --extended");
  CountMethod m = method == "pairs" ? CountMethod::disjoint_pairs : CountMethod::branching;
  Emitter em(opt);
  json rec = base_record("count");
  rec["inputs"] = {{"d", d}, {"method", method}};
  rec["outputs"] = {{"count", count_independent_sets(d, m).str()}};
  em.record(std::move(rec));
  return 0;
}

int run_sum(int d, const OutputOptions& opt) {
  Emitter em(opt);
  json rec = base_record("sum");
  rec["inputs"] = {{"d", d}};
  rec["outputs"] = {{"sum", sum_small_sets(d).str()}};
  em.record(std::move(rec));
  return 0;
}

int run_bounds(int d, bool table, bool extended, const OutputOptions& opt) {
  Emitter em(opt);
  if (table) {
    auto rows = ratio_table(d, extended);
    if (opt.format == "csv") {
      em.stream() << "d,ratio\n";
      for (auto [dim, r] : rows) em.stream() << dim << "," << r << "\n";
      return 0;
    }
    json rec = base_record("bounds");
    rec["inputs"] = {{"d", d}, {"table", true}};
    json arr = json::array();
    for (auto [dim, r] : rows) arr.push_back({{"d", dim}, {"ratio", r}});
    rec["outputs"] = {{"ratio_table", arr}};
    em.record(std::move(rec));
    return 0;
  }
  json rec = base_record("bounds");
  rec["inputs"] = {{"d", d}};
  json out;
  if (d <= 5 && d >= 2) {
    out["count"] = count_independent_sets(d).str();
    out["sum"] = sum_small_sets(d).str();
    out["upper_bound_holds"] = upper_bound_check(d);
  }
  auto asm_bound = lower_bound_assembly(d);
  out["lower_bound_negative"] = asm_bound.negative;
  out["lower_bound_log2_abs"] = asm_bound.log2_abs.convert_to<double>();
  if (asm_bound.negative) out["note"] = "correction dominates";
  out["asymptote_log2"] = asymptotic_estimate_log2(d).convert_to<double>();
  rec["outputs"] = std::move(out);
  em.record(std::move(rec));
  return 0;
}

int run_containers(int d, std::uint64_t a, std::uint64_t g_size, Vertex v, ParamFlags& pf,
                   const OutputOptions& opt) {
  auto graph = RegularBipartiteGraph::hypercube(d);
  ContainerParams params = pf.params;
  params.resolve(d);
  auto members = enumerate_G_agv(graph, a, g_size, v);

  Emitter em(opt);
  std::uint64_t covered = 0, index = 0;
  for (const auto& A : members) {
    ContainerParams local = params;
    local.seed = params.seed * 0x9e3779b97f4a7c15ULL + (++index);
    SetStats st = set_stats(graph, A);
    auto [approx, cert] = build_phi_approx(graph, A, local, 2, v);
    auto pa = psi_refine(graph, A, approx, local.psi);
    auto check = verify_psi_approx(graph, A, pa.f, pa.s, local.psi);
    ReconstructTargets targets{st.a, st.g, st.t, v};
    bool recovered = reconstruct_recovers(graph, pa.f, pa.s, targets, local, A);
    covered += recovered && check.valid;

    json rec = base_record("containers");
    rec["inputs"] = {{"d", d}, {"a", a}, {"g", g_size}, {"v", v}, {"seed", local.seed},
                     {"phi", local.phi}, {"psi", local.psi}, {"gamma", local.gamma}};
    rec["outputs"] = {{"A", vertex_list(A)},
                      {"f_prime", vertex_list(approx.f_prime)},
                      {"f", vertex_list(pa.f)},
                      {"s", vertex_list(pa.s)},
                      {"t0_size", cert.t0.count()},
                      {"t0_prime_size", cert.t0_prime.count()},
                      {"t1_size", cert.t1.count()},
                      {"omega_size", cert.omega.size()},
                      {"retries", cert.retries},
                      {"phi_valid", verify_phi_approx(graph, A, approx.f_prime, local.phi)},
                      {"psi_valid", check.valid},
                      {"size_bound", check.size_bound},
                      {"recovered", recovered}};
    em.record(std::move(rec));
  }
  json summary = base_record("containers-summary");
  summary["inputs"] = {{"d", d}, {"a", a}, {"g", g_size}, {"v", v}, {"seed", params.seed}};
  summary["outputs"] = {{"class_size", members.size()}, {"covered", covered}};
  em.record(std::move(summary));
  return covered == members.size() ? 0 : 1;
}

int run_iso(int d, std::size_t max_size, std::uint64_t seed, const OutputOptions& opt) {
  Emitter em(opt);
  json rec = base_record("iso");
  rec["inputs"] = {{"d", d}, {"max_size", max_size}, {"seed", seed}};
  json out;
  if (d <= 5) {
    json table = json::array();
    for (std::size_t s = 1; s <= max_size; ++s) {
      auto [n, arg] = min_neighborhood(d, Parity::even, s);
      table.push_back({{"size", s}, {"min_neighborhood", n}, {"argmin", vertex_list(arg)}});
    }
    out["min_neighborhood"] = std::move(table);
  }
  auto er = check_small_set_expansion(d, max_size, seed);
  out["expansion"] = {{"max_ratio", er.max_ratio.str()},
                      {"argmax", vertex_list(er.argmax)},
                      {"bound", er.bound.str()},
                      {"within_bound", er.within_bound},
                      {"exhaustive", er.exhaustive}};
  rec["outputs"] = std::move(out);
  em.record(std::move(rec));
  return 0;
}

int run_cover(int d, const std::string& graph_path, const OutputOptions& opt) {
  RegularBipartiteGraph g =
      graph_path.empty() ? RegularBipartiteGraph::hypercube(d) : load_graph(graph_path);
  VertexSet cover = greedy_cover_in_graph(g, g.class_x(), g.class_y());
  double bound = (double(g.class_y().count()) / g.degree()) * (1.0 + std::log(double(g.degree())));
  Emitter em(opt);
  json rec = base_record("cover");
  rec["inputs"] = graph_path.empty() ? json{{"d", d}} : json{{"graph", graph_path}};
  rec["outputs"] = {{"cover", vertex_list(cover)},
                    {"size", cover.count()},
                    {"bound", bound}};
  em.record(std::move(rec));
  return 0;
}

int run_verify(const std::string& suite, int d, std::uint64_t seed, const OutputOptions& opt) {
  auto reports = verify_suite(suite, d, seed);
  Emitter em(opt);
  bool all_ok = true;
  for (const auto& rep : reports) {
    json rec = base_record("verify");
    rec["inputs"] = {{"suite", rep.suite}, {"d", rep.d}, {"seed", seed}};
    json checks = json::array();
    for (const auto& c : rep.checks) {
      json item = {{"name", c.name}, {"passed", c.passed}};
      if (!c.detail.empty()) item["detail"] = c.detail;
      checks.push_back(std::move(item));
      all_ok &= c.passed;
    }
    rec["outputs"] = {{"checks", std::move(checks)}, {"passed", rep.passed()}};
    em.record(std::move(rec));
  }
  return all_ok ? 0 : 1;
}

int run_graph_check(const std::string& path, const OutputOptions& opt) {
  Emitter em(opt);
  json rec = base_record("graph-check");
  rec["inputs"] = {{"graph", path}};
  try {
    auto g = load_graph(path);
    rec["outputs"] = {{"valid", true},
                      {"degree", g.degree()},
                      {"class_x_size", g.class_x().count()},
                      {"class_y_size", g.class_y().count()}};
    em.record(std::move(rec));
    return 0;
  } catch (const parse_error& e) {
    rec["outputs"] = {{"valid", false}, {"line", e.line}, {"message", e.what()}};
    em.record(std::move(rec));
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypercube independent-set census and container toolkit"};
  app.require_subcommand(1);

  OutputOptions opt;
  int d = 3;
  std::string method = "branching";
  bool extended = false, table = false;
  std::uint64_t a = 0, g_size = 0;
  Vertex v = 0;
  std::size_t max_size = 0;
  std::uint64_t seed = 1;
  std::string suite = "all", graph_path;
  int parallelism = 1;
  ParamFlags pf;

  auto* count_cmd = app.add_subcommand("count", "exact independent-set count");
  count_cmd->add_option("--d", d, "cube dimension")->required();
  count_cmd->add_option("--method", method, "branching|pairs|exact")
      ->check(CLI::IsMember({"branching", "pairs", "exact"}));
  count_cmd->add_flag("--extended", extended, "allow d = 6");
  add_output_flags(count_cmd, opt);

  auto* sum_cmd = app.add_subcommand("sum", "exact small-set sum");
  sum_cmd->add_option("--d", d)->required();
  add_output_flags(sum_cmd, opt);

  auto* bounds_cmd = app.add_subcommand("bounds", "bound assembly and ratio table");
  bounds_cmd->add_option("--d", d)->required();
  bounds_cmd->add_flag("--table", table, "emit the count/asymptote ratio table");
  bounds_cmd->add_flag("--extended", extended, "allow d = 6 in the table");
  add_output_flags(bounds_cmd, opt);

  auto* cont_cmd = app.add_subcommand("containers", "approximation pipeline over one class");
  cont_cmd->add_option("--d", d)->required();
  cont_cmd->add_option("--a", a, "target closure size")->required();
  cont_cmd->add_option("--g", g_size, "target neighborhood size")->required();
  cont_cmd->add_option("--v", v, "anchor vertex")->required();
  cont_cmd->add_option("--parallelism", parallelism, "sweep partition count")
      ->check(CLI::PositiveNumber);
  pf.attach(cont_cmd);
  add_output_flags(cont_cmd, opt);

  auto* iso_cmd = app.add_subcommand("iso", "isoperimetry sweeps");
  iso_cmd->add_option("--d", d)->required();
  iso_cmd->add_option("--max-size", max_size, "largest set size to explore");
  iso_cmd->add_option("--seed", seed);
  add_output_flags(iso_cmd, opt);

  auto* cover_cmd = app.add_subcommand("cover", "greedy side cover");
  cover_cmd->add_option("--d", d);
  cover_cmd->add_option("--graph", graph_path, "bipartite graph file");
  add_output_flags(cover_cmd, opt);

  auto* verify_cmd = app.add_subcommand("verify", "module invariant suites");
  verify_cmd->add_option("--suite", suite, "structure|combinatorics|iso|containers|census|all");
  verify_cmd->add_option("--d", d);
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--parallelism", parallelism)->check(CLI::PositiveNumber);
  add_output_flags(verify_cmd, opt);

  auto* gc_cmd = app.add_subcommand("graph-check", "validate a bipartite graph file");
  gc_cmd->add_option("--graph", graph_path)->required();
  add_output_flags(gc_cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit cleanly, usage errors -> 2
  }

  try {
    if (count_cmd->parsed()) return run_count(d, method, extended, opt);
    if (sum_cmd->parsed()) return run_sum(d, opt);
    if (bounds_cmd->parsed()) return run_bounds(d, table, extended, opt);
    if (cont_cmd->parsed()) return run_containers(d, a, g_size, v, pf, opt);
    if (iso_cmd->parsed()) return run_iso(d, max_size ? max_size : std::size_t(d), seed, opt);
    if (cover_cmd->parsed()) return run_cover(d, graph_path, opt);
    if (verify_cmd->parsed()) return run_verify(suite, d, seed, opt);
    if (gc_cmd->parsed()) return run_graph_check(graph_path, opt);
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const size_limit_error& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
