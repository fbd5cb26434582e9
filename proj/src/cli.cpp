#include "freeflow/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "freeflow/decompose.hpp"
#include "freeflow/io.hpp"
#include "freeflow/recursion.hpp"
#include "freeflow/skew_decompose.hpp"
#include "freeflow/verify.hpp"

namespace freeflow {

namespace {

struct NetworkArgs {
  std::string path;
  std::string format;
  bool paired = false;

  void attach(CLI::App* app) {
    app->add_option("network", path, "Network file")->required();
    app->add_option("--format", format, "Expected kind: skew, bidir, undir or digraph")
        ->check(CLI::IsMember({"skew", "bidir", "undir", "digraph"}));
    app->add_flag("--paired", paired, "Skew file lists both arcs of every mate pair");
  }

  NetworkFile read() const {
    std::optional<FileFormat> expected;
    if (!format.empty()) expected = format_from_name(format);
    return read_network_file(path, expected, paired);
  }
};

// Writes through `out` or into `path` when one is given.
template <class F>
void emit(const std::string& path, std::ostream& out, F&& body) {
  if (path.empty()) {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidInput("cannot write " + path);
  body(file);
  if (!file) throw InvalidInput("write to " + path + " failed");
}

void print_summary(std::ostream& out, const Solution& s) {
  out << "v " << s.value << "\nl";
  for (Cap l : s.lambdas) out << ' ' << l;
  out << "\nk " << (s.certified ? "ok" : "fail") << '\n';
}

std::string file_arc(const LoadedNetwork& net, ArcId a) { return std::to_string(net.arc_origin[a] + 1); }

int cmd_solve(const NetworkArgs& na, const std::string& emit_mode, bool parallel, const std::string& output,
              std::ostream& out) {
  const auto net = load_network(na.read());
  const EmitMode mode = emit_mode.empty() ? (net.file.format == FileFormat::skew ? EmitMode::flows : EmitMode::walks)
                        : emit_mode == "flows" ? EmitMode::flows
                                               : EmitMode::walks;
  auto result = solve(net.skew, {parallel});
  Solution sol;
  if (mode == EmitMode::walks) {
    const auto walks = extract_paths(*result.tree, net.image, result.multiflow);
    sol = make_solution(net, result.multiflow, mode, &walks);
  } else {
    sol = make_solution(net, result.multiflow, mode);
  }
  emit(output, out, [&](std::ostream& o) { write_solution(o, net, sol); });
  if (!output.empty()) {
    print_summary(out, sol);
    out << "c max_flow_calls " << result.stats.max_flow_calls << "\nc tree_nodes " << result.stats.tree_nodes
        << "\nc height " << result.stats.height << '\n';
  }
  return sol.certified ? kExitOk : kExitInternal;
}

int cmd_verify(const NetworkArgs& na, const std::string& solution_path, std::ostream& out) {
  const auto net = load_network(na.read());
  std::ifstream in(solution_path);
  if (!in) throw InvalidInput("cannot open " + solution_path);
  const Solution claimed = read_solution(in, net);
  std::vector<std::string> problems;
  ValidationReport report;
  Cap value = 0;
  if (claimed.mode == EmitMode::flows) {
    report = check_multiflow(net.skew, claimed.flows);
    value = multiflow_value(net.skew, claimed.flows);
  } else {
    const auto family = walks_on_image(net, claimed.walks);
    report = check_walk_packing(net.image.h, family);
    value = 2 * family.value();
  }
  if (!report.ok()) problems.push_back("infeasible: " + report.summary());
  const auto lambdas = bidirected_lambdas(net.skew);
  const Cap lambda_sum = std::accumulate(lambdas.begin(), lambdas.end(), Cap{0});
  if (claimed.value != value)
    problems.push_back("declared value " + std::to_string(claimed.value) + " but the solution carries " +
                       std::to_string(value));
  if (claimed.lambdas != lambdas) problems.push_back("declared lambda values differ from the minimum cuts");
  if (value != lambda_sum)
    problems.push_back("value " + std::to_string(value) + " differs from the cut sum " + std::to_string(lambda_sum));
  if (!claimed.certified) problems.push_back("solution is marked uncertified");
  if (problems.empty()) {
    out << "ok value " << value << '\n';
    return kExitOk;
  }
  for (const auto& p : problems) out << "fail " << p << '\n';
  return kExitInvalid;
}

void print_decompose_stats(std::ostream& out, const DecomposeStats& st) {
  out << "c nodes " << st.num_nodes << "\nc arcs " << st.num_arcs << "\nc terminals " << st.num_terminals
      << "\nc splits " << st.splits << "\nc merges " << st.merges << "\nc loops_dropped " << st.loops_dropped
      << "\nc deg_star_sum " << st.deg_star_sum << "\nc deg_star_bound "
      << static_cast<std::int64_t>(analytic_degree_bound(st.num_nodes, st.num_arcs, st.num_terminals))
      << "\nc degree_bounds " << (st.degree_bounds_hold() ? "ok" : "fail") << '\n';
}

int cmd_decompose(const NetworkArgs& na, const std::string& output, std::ostream& out) {
  const auto file = na.read();
  require(file.format == FileFormat::digraph, "decompose reads a digraph file whose capacities are the flow");
  DirectedNetwork d;
  d.num_nodes = file.num_nodes;
  ArcFlow flow;
  for (const auto& rec : file.records) {
    d.add_arc(rec.u, rec.v, rec.cap);
    flow.push_back(rec.cap);
  }
  const auto div = divergence(d, flow);
  std::vector<NodeId> sources, sinks;
  for (NodeId s : file.terminals) (div[s] < 0 ? sinks : sources).push_back(s);
  require(!sources.empty() && !sinks.empty(), "flow needs a source and a sink terminal");
  DecomposeStats stats;
  const auto dec = decompose_few_terminals(d, flow, sources, sinks, {}, &stats);
  emit(output, out, [&](std::ostream& o) {
    print_decompose_stats(o, stats);
    for (std::size_t i = 0; i < sources.size(); ++i)
      for (std::size_t j = 0; j < sinks.size(); ++j)
        for (ArcId a = 0; a < d.num_arcs(); ++a)
          if (const Cap v = dec.at(static_cast<int>(i), static_cast<int>(j))[a]; v != 0)
            o << "f " << sources[i] + 1 << ' ' << sinks[j] + 1 << ' ' << a + 1 << ' ' << v << '\n';
  });
  return kExitOk;
}

int cmd_ds_decompose(const NetworkArgs& na, const std::string& output, std::ostream& out) {
  const auto file = na.read();
  require(file.format == FileFormat::skew, "ds-decompose reads a skew file whose capacities are the flow");
  const auto net = load_network(file);
  ArcFlow f(net.skew.num_arcs());
  for (ArcId a = 0; a < net.skew.num_arcs(); ++a) f[a] = net.skew.arc(a).cap;
  const auto dec = decompose_symmetric_pairs(net.skew, f);
  const auto& terms = net.file.terminals;
  const int k = static_cast<int>(terms.size());
  emit(output, out, [&](std::ostream& o) {
    for (int i = 0; i < k; ++i)
      for (ArcId a = 0; a < net.skew.num_arcs(); ++a)
        if (const Cap v = dec.diagonal[i][a]; v != 0) o << "d " << terms[i] + 1 << ' ' << file_arc(net, a) << ' ' << v << '\n';
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        for (ArcId a = 0; a < net.skew.num_arcs(); ++a)
          if (const Cap v = dec.off_diagonal.at(i, j)[a]; v != 0)
            o << "f " << terms[i] + 1 << ' ' << terms[j] + 1 << ' ' << file_arc(net, a) << ' ' << v << '\n';
  });
  return kExitOk;
}

int cmd_lambda(const NetworkArgs& na, bool brute, std::ostream& out) {
  const auto net = load_network(na.read());
  const auto lambdas = bidirected_lambdas(net.skew);
  out << 'l';
  for (Cap l : lambdas) out << ' ' << l;
  out << "\nv " << std::accumulate(lambdas.begin(), lambdas.end(), Cap{0}) << '\n';
  if (brute) {
    out << 'b';
    for (NodeId s : net.skew.terminals) out << ' ' << brute_lambda_tiny(net.skew, s);
    out << '\n';
  }
  return kExitOk;
}

int cmd_convert(const NetworkArgs& na, const std::string& to, const std::string& output, std::ostream& out) {
  const auto file = na.read();
  NetworkFile result = file;
  if (to == "skew" || to == "bidir") {
    const auto net = load_network(file);
    result = to == "skew" ? skew_file(net.skew) : bidirected_file(net.image.h);
  } else if (!to.empty() && format_from_name(to) != file.format) {
    throw Unsupported("conversion to " + to + " is only possible from a " + to + " file");
  }
  emit(output, out, [&](std::ostream& o) { write_network_file(o, result); });
  return kExitOk;
}

int cmd_gen(const InstanceParams& p, const std::string& output, std::ostream& out) {
  const auto file = skew_file(generate_instance(p));
  emit(output, out, [&](std::ostream& o) {
    o << "c generated seed " << p.seed << " pairs " << p.inner_pairs << " terminals " << p.terminals << '\n';
    write_network_file(o, file);
  });
  return kExitOk;
}

int cmd_bench(const FlowParams& fp, const InstanceParams& ip, std::ostream& out) {
  using Clock = std::chrono::steady_clock;
  const auto flow = generate_flow(fp);
  DecomposeStats stats;
  auto t0 = Clock::now();
  decompose_few_terminals(flow.network, flow.flow, flow.sources, flow.sinks, {}, &stats);
  const auto decompose_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  out << "decompose seed " << fp.seed << '\n';
  print_decompose_stats(out, stats);
  out << "c time_ms " << decompose_ms << '\n';

  const auto g = generate_instance(ip);
  t0 = Clock::now();
  const auto r = solve(g);
  const auto solve_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  out << "solve seed " << ip.seed << "\nc nodes " << g.num_nodes() << "\nc arcs " << g.num_arcs()
      << "\nc terminals " << g.terminals.size() << "\nc value " << multiflow_value(g, r.multiflow)
      << "\nc max_flow_calls " << r.stats.max_flow_calls << "\nc tree_nodes " << r.stats.tree_nodes
      << "\nc height " << r.stats.height << "\nc height_bound " << height_bound(2 * static_cast<int>(g.terminals.size()))
      << "\nc time_ms " << solve_ms << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximum integer free multiflows in inner-Eulerian networks"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  std::string output;

  NetworkArgs solve_net, verify_net, dec_net, ds_net, lambda_net, convert_net;
  std::string emit_mode, solution_path, to;
  bool parallel = false, brute = false;

  auto* solve_cmd = app.add_subcommand("solve", "Maximum multiflow with its certificate");
  solve_net.attach(solve_cmd);
  solve_cmd->add_option("--emit", emit_mode, "flows or walks")->check(CLI::IsMember({"flows", "walks"}));
  solve_cmd->add_flag("--parallel", parallel, "Solve recursion children concurrently");
  solve_cmd->add_option("-o,--output", output, "Solution file (stdout when absent)");
  solve_cmd->add_option("--seed", seed, "Accepted for symmetry; solving is deterministic");

  auto* verify_cmd = app.add_subcommand("verify", "Check a solution file against its network");
  verify_net.attach(verify_cmd);
  verify_cmd->add_option("solution", solution_path, "Solution file")->required();

  auto* dec_cmd = app.add_subcommand("decompose", "Split a digraph flow into source-sink flows");
  dec_net.attach(dec_cmd);
  dec_cmd->add_option("-o,--output", output, "Output file");

  auto* ds_cmd = app.add_subcommand("ds-decompose", "Split a symmetric flow into mate-paired pair flows");
  ds_net.attach(ds_cmd);
  ds_cmd->add_option("-o,--output", output, "Output file");

  auto* lambda_cmd = app.add_subcommand("lambda", "Per-terminal minimum cut values");
  lambda_net.attach(lambda_cmd);
  lambda_cmd->add_flag("--brute", brute, "Also enumerate symmetric cuts (tiny networks only)");

  auto* convert_cmd = app.add_subcommand("convert", "Rewrite a network file");
  convert_net.attach(convert_cmd);
  convert_cmd->add_option("--to", to, "skew, bidir, or the input kind")
      ->check(CLI::IsMember({"skew", "bidir", "undir", "digraph"}));
  convert_cmd->add_option("-o,--output", output, "Output file");

  InstanceParams ip;
  auto* gen_cmd = app.add_subcommand("gen", "Random inner-Eulerian skew instance");
  gen_cmd->add_option("--seed", seed, "Random seed");
  gen_cmd->add_option("--pairs", ip.inner_pairs, "Inner node pairs");
  gen_cmd->add_option("--terminals", ip.terminals, "Terminal pairs");
  gen_cmd->add_option("--flows", ip.seed_flows, "Walks and circuits to superpose");
  gen_cmd->add_option("--max-cap", ip.max_capacity, "Capacity ceiling");
  gen_cmd->add_option("--max-weight", ip.max_weight, "Largest walk weight");
  gen_cmd->add_option("-o,--output", output, "Output file");

  FlowParams fp{1000, 4000, 2, 2, 3, 12, 1};
  InstanceParams bp{40, 5, 40, 2, 1, 8, 2};
  auto* bench_cmd = app.add_subcommand("bench", "Operation counters on generated inputs");
  bench_cmd->add_option("--seed", seed, "Random seed");
  bench_cmd->add_option("--nodes", fp.nodes, "Decomposition: nodes");
  bench_cmd->add_option("--arcs", fp.arcs, "Decomposition: arcs");
  bench_cmd->add_option("--sources", fp.sources, "Decomposition: sources");
  bench_cmd->add_option("--sinks", fp.sinks, "Decomposition: sinks");
  bench_cmd->add_option("--pairs", bp.inner_pairs, "Solver: inner node pairs");
  bench_cmd->add_option("--terminals", bp.terminals, "Solver: terminal pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_net, emit_mode, parallel, output, out);
    if (*verify_cmd) return cmd_verify(verify_net, solution_path, out);
    if (*dec_cmd) return cmd_decompose(dec_net, output, out);
    if (*ds_cmd) return cmd_ds_decompose(ds_net, output, out);
    if (*lambda_cmd) return cmd_lambda(lambda_net, brute, out);
    if (*convert_cmd) return cmd_convert(convert_net, to, output, out);
    if (*gen_cmd) {
      ip.seed = seed;
      return cmd_gen(ip, output, out);
    }
    if (*bench_cmd) {
      fp.seed = bp.seed = seed;
      return cmd_bench(fp, bp, out);
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace freeflow
