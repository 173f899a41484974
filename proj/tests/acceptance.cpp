// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any
// criterion fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include <json.hpp>

#include "support.hpp"

using namespace sfvs;
using namespace sfvs::testing;
namespace fs = std::filesystem;

namespace {

// Limits pinned here; weights are integers so every comparison is exact.
constexpr double kSuite1Seconds = 600;
constexpr double kSuite2Seconds = 900;
constexpr double kIntervalSeconds = 300;
constexpr int kRepresentsLimit = 12;
constexpr int kIntervalN = 30;
constexpr std::uint64_t kSeed = 20240601;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << " — " << detail << std::endl;
  failures += !ok;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Representativity and table-size bookkeeping shared by suites 1 and 2.
struct NodeAudit {
  long nodes = 0, checked = 0, represent_failures = 0, size_failures = 0;

  SolveOptions options(const Instance& inst) {
    SolveOptions opt;
    opt.observer = [this, &inst](const NodeEvent& ev) {
      ++nodes;
      if (ev.merged != ev.reduced && ev.reduced->size() > table_size_bound(*ev.ctx)) ++size_failures;
      if (ev.ctx->outside.size() > kRepresentsLimit) return;
      ++checked;
      if (!check_represents(inst, *ev.merged, *ev.reduced, ev.ctx->outside)) ++represent_failures;
    };
    return opt;
  }
};

NodeAudit audit;

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed + 1);
  long cases = 0, mismatches = 0;
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
      std::vector<std::pair<int, int>> e;
      for (std::size_t k = 0; k < slots.size(); ++k)
        if (mask >> k & 1) e.push_back(slots[k]);
      const Graph g = Graph::from_edges(n, e);
      const VertexSet one{static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n))};
      for (const VertexSet& s : {VertexSet{}, one, g.vertices()}) {
        const Instance inst = unit(g, s);
        const auto r = solve(inst, identity_layout(n), audit.options(inst));
        mismatches += r.weight != brute_force_sfvs(inst).weight || !is_s_forest(g, r.sforest, s);
        ++cases;
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << std::fixed << std::setprecision(2) << cases << " instances (all graphs n<=5, S in {empty, one vertex, all}, seed " << kSeed + 1 << "), " << mismatches
    << " mismatches, " << secs << " s (limit " << kSuite1Seconds << " s)";
  report(1, mismatches == 0 && secs <= kSuite1Seconds, "exhaustive oracle equivalence", d.str());
}

void criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSeed + 2);
  int mismatches = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = 6 + t % 4;
    const double p = t % 8 < 4 ? 0.2 : 0.5;
    const Instance inst = random_instance(rng, n, p, -3, 10);
    std::vector<Vertex> order = inst.graph.vertices().to_vector();
    std::shuffle(order.begin(), order.end(), rng);
    const auto r = solve(inst, layout_from_order(order), audit.options(inst));
    mismatches += r.weight != brute_force_sfvs(inst).weight || !is_s_forest(inst.graph, r.sforest, inst.s);
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << std::fixed << std::setprecision(2) << "300 instances (n in 6..9, p in {0.2, 0.5}, weights in [-3, 10], caterpillar layouts, seed " << kSeed + 2
    << "), " << mismatches << " mismatches, " << secs << " s (limit " << kSuite2Seconds << " s)";
  report(2, mismatches == 0 && secs <= kSuite2Seconds, "randomized oracle equivalence", d.str());
}

void criterion3() {
  std::mt19937_64 rng(kSeed + 3);
  int mismatches = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng() % 9);
    Instance inst = random_instance(rng, n, 0.2 + 0.1 * (t % 5), -3, 10);
    inst.s = inst.graph.vertices();
    const auto r = solve(inst, random_layout(rng, n));
    mismatches += r.weight != brute_force_fvs(inst.graph, inst.weights).weight;
  }
  report(3, mismatches == 0, "FVS special case",
         "100 instances (n <= 9, S = V, seed " + std::to_string(kSeed + 3) + "), " + std::to_string(mismatches) +
             " mismatches against the union-find forest oracle");
}

void criterion4() {
  std::mt19937_64 rng(kSeed + 4);
  int mismatches = 0, bad_cuts = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const int k = 2 + t % 2;
    NmcInstance nmc{random_graph(rng, n, 0.4), {}, std::vector<std::int64_t>(static_cast<std::size_t>(n), 1)};
    for (auto& w : nmc.weights) w = 1 + static_cast<std::int64_t>(rng() % 5);
    // undeletable terminals must be pairwise non-adjacent for a cut to exist
    for (;;) {
      std::vector<Vertex> order = nmc.graph.vertices().to_vector();
      std::shuffle(order.begin(), order.end(), rng);
      nmc.terminals = {};
      for (Vertex v : order)
        if (static_cast<int>(nmc.terminals.size()) < k && !nmc.graph.adj(v).intersects(nmc.terminals)) nmc.terminals.insert(v);
      if (nmc.terminals.size() >= 2) break;
      nmc.graph = random_graph(rng, n, 0.4);
    }
    const RootedLayout l = random_layout(rng, n);
    const auto r = solve_nmc(nmc, l);
    mismatches += r.weight != brute_force_nmc(nmc).weight;
    bad_cuts += !separates(nmc.graph, nmc.terminals, r.cut) || r.cut.intersects(nmc.terminals);
  }
  report(4, mismatches == 0 && bad_cuts == 0, "node multiway cut",
         "100 instances (n <= 8, |T| in {2, 3}, seed " + std::to_string(kSeed + 4) + "), " + std::to_string(mismatches) +
             " weight mismatches, " + std::to_string(bad_cuts) + " non-separating or terminal-cutting sets");
}

void criterion5() {
  std::mt19937_64 rng(kSeed + 5);
  int violations = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 13);
    const Graph g = random_graph(rng, n, 0.1 + 0.8 * static_cast<double>(rng() % 100) / 100);
    const VertexSet a = random_subset(rng, n), b = g.vertices() - a;
    const int rw = cut_rank(g, a, Field::gf2), rq = cut_rank(g, a, Field::rational), m = mim_cut(g, a);
    violations += m > rw;
    violations += m > rq;
    violations += rw != cut_rank(g, b, Field::gf2);
    violations += rq != cut_rank(g, b, Field::rational);
    violations += m != mim_cut(g, b);
  }
  report(5, violations == 0, "width inequalities",
         "200 random cuts (seed " + std::to_string(kSeed + 5) + "), " + std::to_string(violations) +
             " violations of mim <= rw, mim <= rw_Q or symmetry");
}

std::uint64_t saturating_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t k = 0; k < e; ++k) {
    if (b != 0 && r > (std::uint64_t{1} << 62) / b) return std::uint64_t{1} << 62;
    r *= b;
  }
  return r;
}

std::uint64_t subsets_up_to(std::uint64_t n, std::uint64_t k) {
  std::uint64_t sum = 0, c = 1;
  for (std::uint64_t j = 0; j <= k && j <= n; ++j) {
    sum += c;
    c = c * (n - j) / (j + 1);
  }
  return sum;
}

void criterion6() {
  std::mt19937_64 rng(kSeed + 6);
  int rank_violations = 0, q_violations = 0, mim_violations = 0, counting_violations = 0, asym = 0, tested_c = 0;
  std::string first;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng() % 11);
    const Graph g = random_graph(rng, n, 0.15 + 0.7 * static_cast<double>(rng() % 100) / 100);
    const VertexSet a = random_subset(rng, n);
    const int rw = cut_rank(g, a, Field::gf2), rq = cut_rank(g, a, Field::rational), m = mim_cut(g, a);
    const auto sz = static_cast<std::uint64_t>(a.size());
    for (int d = 1; d <= 2; ++d) {
      const auto c = static_cast<std::uint64_t>(compute_reps(g, a, d).class_count());
      const auto ud = static_cast<std::uint64_t>(d);
      rank_violations += c > saturating_pow(2, ud * static_cast<std::uint64_t>(rw * rw));
      q_violations += c > saturating_pow(ud * static_cast<std::uint64_t>(rq) + 1, static_cast<std::uint64_t>(rq));
      counting_violations += c > subsets_up_to(sz, ud * static_cast<std::uint64_t>(m));
      if (m == 0 || sz <= 1) continue;
      ++tested_c;
      if (c > saturating_pow(sz, ud * static_cast<std::uint64_t>(m))) {
        if (mim_violations++ == 0)
          first = "|A|=" + std::to_string(sz) + ", mim=" + std::to_string(m) + ", d=" + std::to_string(d) +
                  ", nec=" + std::to_string(c) + " > " + std::to_string(saturating_pow(sz, ud * static_cast<std::uint64_t>(m)));
      }
    }
    asym += compute_reps(g, a, 1).class_count() != compute_reps(g, g.vertices() - a, 1).class_count();
  }
  std::ostringstream d;
  d << "100 random cuts, d in {1, 2} (seed " << kSeed + 6 << "): " << rank_violations << " violations of 2^{d rw^2}, "
    << q_violations << " of (d rw_Q + 1)^{rw_Q}, " << mim_violations << "/" << tested_c << " of |A|^{d mim}, " << asym
    << " nec_1 asymmetries";
  if (mim_violations > 0) {
    d << ". First |A|^{d mim} violation: " << first
      << ". The empty set and every singleton can be pairwise inequivalent, so nec_d(A) >= |A| + 1 > |A|^1 when mim = 1"
         " (e.g. A = {a, b, c} with nested neighborhoods {u1} < {u1, u2} < {u1, u2, u3}). Representatives have at most"
         " d mim(A) vertices, so the counting bound sum_{k <= d mim} C(|A|, k) is what holds: "
      << counting_violations << " violations of it";
  }
  report(6, rank_violations == 0 && q_violations == 0 && mim_violations == 0 && asym == 0, "nec bounds", d.str());
}

void criterion7() {
  std::ostringstream d;
  d << audit.nodes << " DP nodes in suites 1-2, " << audit.checked << " with |complement| <= " << kRepresentsLimit
    << " checked: " << audit.represent_failures << " representativity failures, " << audit.size_failures
    << " reduced tables above |I_x| (4m)^{4m}";
  report(7, audit.checked > 0 && audit.represent_failures == 0 && audit.size_failures == 0, "representativity", d.str());
}

VertexSet random_sforest(std::mt19937_64& rng, const Instance& inst) {
  std::vector<Vertex> order = inst.graph.vertices().to_vector();
  std::shuffle(order.begin(), order.end(), rng);
  VertexSet z;
  for (Vertex v : order)
    if (rng() % 4 != 0 && is_s_forest(inst.graph, z | VertexSet{v}, inst.s)) z.insert(v);
  return z;
}

void criterion8() {
  std::mt19937_64 rng(kSeed + 8);
  int x2_fail = 0, sc_fail = 0, index_fail = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const Instance inst = random_instance(rng, n, 0.2 + 0.1 * (t % 5), -3, 10);
    const VertexSet a = random_subset(rng, n);
    const VertexSet z = random_sforest(rng, inst), x = z & a, y = z - a;
    Scontraction sc;
    try {
      sc = find_scontraction(inst, a, x, y);
    } catch (const std::logic_error&) {
      ++sc_fail;
      continue;
    }
    if (!scontraction_conditions_hold(inst, a, x, y, sc)) ++sc_fail;
    // the contracted graph is a forest, which is where the X²⁺ bound applies
    const BlockGraph full = contracted(inst.graph, sc.x_blocks, sc.y_blocks, ContractMode::full);
    VertexSet xb, yb;
    for (int k = 0; k < full.graph.n(); ++k) (k < full.a_count ? xb : yb).insert(k);
    if (!check_x2plus(full.graph, xb, yb) || !check_x2plus(full.graph, yb, xb)) ++x2_fail;
    const NodeContext ctx = make_context(inst, a);
    const IndexTuple i = index_from_cover(ctx, x, sc);
    if (i.vc_size() > ctx.vc_bound() || !is_partial_solution(ctx, x, i) || !is_complement_solution(ctx, y, sc.p_y, i))
      ++index_fail;
  }
  report(8, x2_fail == 0 && sc_fail == 0 && index_fail == 0, "structural lemmas",
         "200 random S-forest bipartitions (seed " + std::to_string(kSeed + 8) + "): " + std::to_string(x2_fail) +
             " X2+ failures, " + std::to_string(sc_fail) + " contraction/cover failures, " + std::to_string(index_fail) +
             " index-existence failures");
}

void criterion9() {
  std::ostringstream d;
  d << std::fixed << std::setprecision(3);
  bool ok = true;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto gen = generate_interval(kIntervalN, seed);
    int worst = 0;
    for (int x = 0; x < static_cast<int>(gen.layout.nodes().size()); ++x)
      worst = std::max(worst, mim_cut(gen.inst.graph, gen.layout.below(x)));
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = solve(gen.inst, gen.layout);
    const double secs = seconds_since(t0);
    const bool valid = is_s_forest(gen.inst.graph, r.sforest, gen.inst.s) && gen.inst.weight(r.sforest) == r.weight;
    ok = ok && worst <= 1 && secs <= kIntervalSeconds && valid;
    d << (seed == 1 ? "" : "; ") << "seed " << seed << ": m=" << gen.inst.graph.m() << ", max cut mim " << worst
      << ", weight " << r.weight << ", " << secs << " s";
  }
  report(9, ok, "interval scaling (n = 30, limit " + std::to_string(static_cast<int>(kIntervalSeconds)) + " s each)",
         d.str());
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(SFVS_CLI_PATH) + " " + args + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion10() {
  const fs::path dir = fs::temp_directory_path() / ("sfvs_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  int compared = 0, differ = 0, errors = 0;
  const std::vector<std::string> gens{"interval --n 30 --seed 1", "interval --n 30 --seed 2", "random --n 9 --p 0.4 --seed 5"};
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::string prefix = (dir / ("g" + std::to_string(k))).string();
    if (run_cli("generate " + gens[k] + " --out " + prefix) != 0) {
      ++errors;
      continue;
    }
    nlohmann::json first;
    for (int rep = 0; rep < 2; ++rep)
      for (int threads : {1, 8}) {
        const std::string out = prefix + ".json";
        if (run_cli("--graph " + prefix + ".gr --layout " + prefix + ".layout --threads " + std::to_string(threads) +
                    " --json " + out) != 0) {
          ++errors;
          continue;
        }
        std::ifstream in(out);
        const auto j = nlohmann::json::parse(in);
        const nlohmann::json key{j["objective_weight"], j["deletion_set"]};
        if (first.is_null())
          first = key;
        else
          differ += key != first;
        ++compared;
      }
  }
  fs::remove_all(dir);
  report(10, errors == 0 && differ == 0 && compared == 12, "determinism",
         std::to_string(compared) + " CLI runs over 3 instances x {--threads 1, --threads 8} x 2 repeats, " +
             std::to_string(differ) + " differing (objective, deletion set), " + std::to_string(errors) + " errors");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
