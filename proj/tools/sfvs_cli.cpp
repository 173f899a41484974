#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfvs/sfvs.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace sfvs;

enum Exit { kOk = 0, kInput = 1, kOracle = 2, kGuard = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

VertexSet names_to_set(const Graph& g, const std::string& list) {
  VertexSet out;
  std::stringstream ss(list);
  for (std::string name; std::getline(ss, name, ',');) {
    if (name.empty()) continue;
    const Vertex v = g.find(name);
    if (v == -1) throw InputError("unknown vertex name: " + name);
    out.insert(v);
  }
  return out;
}

json names_of(const Graph& g, const VertexSet& x) {
  json arr = json::array();
  x.for_each([&](Vertex v) { arr.push_back(g.name(v)); });
  return arr;
}

struct RunArgs {
  std::string graph, layout, problem = "sfvs", s, terminals, json_out = "-";
  bool oracle = false, deletable_terminals = false;
  int threads = 1;
};

int run(const RunArgs& a) {
  if (a.graph.empty()) throw InputError("--graph is required");
  const auto t0 = std::chrono::steady_clock::now();
  Instance inst = parse_instance(read_file(a.graph));
  const Graph& g = inst.graph;
  if (g.n() == 0) throw InputError("graph has no vertices");
  // refuse before spending time on the solve
  const int oracle_limit = a.problem == "nmc" ? kBruteForceNmcLimit : kBruteForceLimit;
  if (a.oracle && g.n() > oracle_limit)
    throw SizeGuardError("--oracle limited to " + std::to_string(oracle_limit) + " vertices for " + a.problem);
  const RootedLayout layout = a.layout.empty() ? identity_layout(g.n()) : parse_layout(read_file(a.layout), g);
  const int threads = a.threads > 0 ? a.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  SolveOptions opt;
  opt.threads = threads;

  json out;
  out["problem"] = a.problem;
  out["n"] = g.n();
  out["m"] = g.m();
  const auto report = width(g, layout, WidthKind::gf2).second;
  int rw = 0, rwq = 0, mim = 0;
  for (const auto& e : report.entries) {
    rw = std::max(rw, e.rw);
    rwq = std::max(rwq, e.rw_q);
    mim = std::max(mim, e.mim);
  }
  out["width"] = {{"gf2", rw}, {"rational", rwq}, {"mim", mim}};

  std::int64_t objective = 0, kept_weight = 0;
  VertexSet deletion;
  bool mismatch = false;
  if (a.problem == "sfvs" || a.problem == "fvs") {
    if (a.problem == "fvs")
      inst.s = g.vertices();
    else if (!a.s.empty())
      inst.s = names_to_set(g, a.s);
    const SolveResult r = solve(inst, layout, opt);
    objective = kept_weight = r.weight;
    deletion = r.deletion;
    if (a.oracle) {
      const BruteResult b = a.problem == "fvs" ? brute_force_fvs(g, inst.weights) : brute_force_sfvs(inst);
      mismatch = b.weight != r.weight;
    }
  } else if (a.problem == "nmc") {
    NmcInstance nmc{g, a.terminals.empty() ? inst.s : names_to_set(g, a.terminals), inst.weights};
    const NmcResult r = solve_nmc(nmc, layout, opt, a.deletable_terminals);
    objective = r.weight;
    deletion = r.cut;
    kept_weight = inst.weight(g.vertices() - r.cut);
    if (a.oracle) mismatch = brute_force_nmc(nmc, a.deletable_terminals).weight != r.weight;
  } else {
    throw InputError("unknown problem " + a.problem);
  }
  out["objective_weight"] = objective;
  out["deletion_set"] = names_of(g, deletion);
  out["sforest_weight"] = kept_weight;
  out["oracle_checked"] = a.oracle;
  out["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  const std::string text = out.dump(2) + "\n";
  if (a.json_out == "-")
    std::cout << text;
  else
    write_file(a.json_out, text);
  if (mismatch) {
    std::cerr << "error: solver and oracle disagree\n";
    return kOracle;
  }
  return kOk;
}

struct GenArgs {
  std::string kind;
  int n = 0;
  double p = 0.3;
  std::uint64_t seed = 1;
  std::string out;
};

int generate(const GenArgs& a) {
  std::string graph, layout, intervals;
  if (a.kind == "random") {
    const Instance inst = generate_random(a.n, a.p, a.seed);
    graph = serialize_instance(inst);
    layout = serialize_layout(identity_layout(a.n), inst.graph);
  } else if (a.kind == "interval") {
    const IntervalInstance gen = generate_interval(a.n, a.seed);
    graph = serialize_instance(gen.inst);
    layout = serialize_layout(gen.layout, gen.inst.graph);
    intervals = serialize_intervals(gen.model);
  } else {
    throw InputError("unknown generator kind " + a.kind);
  }
  if (a.out.empty()) {
    std::cout << graph;
    return kOk;
  }
  write_file(a.out + ".gr", graph);
  write_file(a.out + ".layout", layout + "\n");
  if (!intervals.empty()) write_file(a.out + ".intervals", intervals);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact subset feedback vertex set / node multiway cut over a rooted layout"};
  RunArgs run_args;
  app.add_option("--graph", run_args.graph, "instance file");
  app.add_option("--layout", run_args.layout, "layout file (default: caterpillar by vertex id)");
  app.add_option("--problem", run_args.problem, "sfvs | fvs | nmc")->check(CLI::IsMember({"sfvs", "fvs", "nmc"}));
  app.add_option("--s", run_args.s, "comma-separated S vertices (overrides file flags)");
  app.add_option("--terminals", run_args.terminals, "comma-separated terminals for nmc (default: S flags)");
  app.add_flag("--deletable-terminals", run_args.deletable_terminals, "nmc: terminals may be cut at their file weight");
  app.add_flag("--oracle", run_args.oracle, "cross-check against exhaustive search");
  app.add_option("--threads", run_args.threads, "worker threads, 0 = auto")->check(CLI::NonNegativeNumber);
  app.add_option("--json", run_args.json_out, "report path, - for stdout");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("generate", "write a random or interval instance");
  gen->add_option("kind", gen_args.kind, "random | interval")->required();
  gen->add_option("--n", gen_args.n, "vertex count")->required();
  gen->add_option("--p", gen_args.p, "edge probability (random)");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--out", gen_args.out, "output prefix (.gr, .layout, .intervals)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }
  try {
    return gen->parsed() ? generate(gen_args) : run(run_args);
  } catch (const SizeGuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kGuard;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
}
