// Command-line front end: solve, bench, dump-eff, verify, generate.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mkp/mkp.hpp"

namespace {

mkp::Instance load_one(const std::string& path, std::size_t index) {
  auto all = mkp::load_instances(path);
  if (index >= all.size()) {
    throw mkp::ContractError(path + " holds " + std::to_string(all.size()) +
                             " instance(s); index " + std::to_string(index) + " out of range");
  }
  return std::move(all[index]);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

struct SolveArgs {
  std::string instance;
  std::size_t index = 0;
  mkp::Operator op = mkp::Operator::none;
  int decimals = 1;
  std::size_t pop_size = 100;
  std::uint64_t max_evals = 1'000'000;
  std::uint64_t seed = 1;
  std::optional<mkp::Value> target;
  bool trace = false;
  bool show_solution = false;
};

int cmd_solve(const SolveArgs& a) {
  const mkp::Instance inst = load_one(a.instance, a.index);
  mkp::GaConfig cfg;
  cfg.population_size = a.pop_size;
  cfg.max_evaluations = a.max_evals;
  cfg.op = a.op;
  cfg.decimals = a.decimals;
  cfg.seed = a.seed;
  cfg.target = a.target;
  mkp::ProgressCallback progress;
  if (a.trace) {
    progress = [](const mkp::GenerationTrace& t) {
      std::cerr << "generation " << t.generation << " best " << t.best_value << " improvements "
                << t.improvements << (t.randomized ? " randomized" : "") << '\n';
    };
  }
  const mkp::RunStats stats = mkp::run(inst, cfg, progress);
  if (stats.duplicate_admissions > 0) {
    std::cerr << "warning: " << stats.duplicate_admissions
              << " duplicate member(s) admitted to the initial population\n";
  }
  const auto record = mkp::make_record(inst, mkp::algorithm_name(a.op, a.decimals), a.seed, stats);
  std::cout << mkp::kRawCsvHeader << '\n' << mkp::to_csv_row(record) << '\n';
  if (a.show_solution) {
    std::cerr << "selected:";
    for (std::size_t j = 0; j < stats.best_solution.size(); ++j)
      if (stats.best_solution.selected(j)) std::cerr << ' ' << j;
    std::cerr << '\n';
  }
  return 0;
}

struct BenchArgs {
  std::string plan_file;
  std::vector<std::string> instances;
  std::vector<std::string> algorithms;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> max_evals;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> pop_size;
  std::optional<std::size_t> threads;
  std::string out_dir;
};

int cmd_bench(const BenchArgs& a) {
  mkp::ExperimentPlan plan;
  if (!a.plan_file.empty()) plan = mkp::parse_plan(mkp::read_file(a.plan_file));
  plan.instances.insert(plan.instances.end(), a.instances.begin(), a.instances.end());
  if (!a.algorithms.empty()) plan.algorithms = a.algorithms;
  if (a.runs) plan.runs_per_instance = *a.runs;
  if (a.max_evals) plan.max_evaluations = *a.max_evals;
  if (a.seed) plan.base_seed = *a.seed;
  if (a.pop_size) plan.population_size = *a.pop_size;
  if (a.threads) plan.threads = *a.threads;
  if (plan.instances.empty()) throw mkp::ContractError("no instances given");
  mkp::validate(plan);

  std::vector<mkp::Instance> instances;
  for (const auto& path : plan.instances) {
    auto loaded = mkp::load_instances(path);
    for (auto& inst : loaded) instances.push_back(std::move(inst));
  }
  const auto result = mkp::run_experiment(instances, plan, [](const mkp::RunRecord& r) {
    std::cerr << r.instance << ' ' << r.algorithm << " seed " << r.seed << " best " << r.best_value
              << '\n';
  });

  std::string raw = std::string(mkp::kRawCsvHeader) + '\n';
  for (const auto& r : result.records) raw += mkp::to_csv_row(r) + '\n';
  const std::string table = mkp::markdown_table(result.report);
  if (!a.out_dir.empty()) {
    const std::filesystem::path dir(a.out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "raw.csv", raw);
    write_file(dir / "summary.csv", mkp::summary_csv(result.report));
    write_file(dir / "wins.csv", mkp::wins_csv(result.report));
    write_file(dir / "summary.md", table);
  }
  std::cout << table;
  return 0;
}

int cmd_dump(const std::string& path, std::size_t index, std::optional<int> decimals) {
  if (decimals && *decimals < 1) throw mkp::ContractError("--decimals must be at least 1");
  const mkp::Instance inst = load_one(path, index);
  std::cout << mkp::efficiency_csv(mkp::dump_efficiencies(inst, decimals), decimals);
  return 0;
}

// One audit of an enumerable instance. Returns an empty string on success.
std::string audit(const mkp::Instance& inst, std::mt19937_64& rng) {
  const auto opt = mkp::enumerate_optimum(inst);
  const auto lp = mkp::solve_lp_relaxation(inst);
  if (lp.status != mkp::LpStatus::optimal) return "LP solve failed";
  double dual_obj = 0.0;
  for (std::size_t i = 0; i < inst.num_resources(); ++i)
    dual_obj += lp.duals[i] * static_cast<double>(inst.capacity(i));
  for (std::size_t j = 0; j < inst.num_items(); ++j) {
    double priced = 0.0;
    for (std::size_t i = 0; i < inst.num_resources(); ++i)
      priced += lp.duals[i] * static_cast<double>(inst.weight(i, j));
    dual_obj += std::max(0.0, static_cast<double>(inst.profit(j)) - priced);
  }
  if (std::abs(lp.primal_objective - dual_obj) > 1e-6 * (1.0 + std::abs(lp.primal_objective)))
    return "strong duality gap";
  if (!mkp::lp_bound_check(inst, lp)) return "LP objective below integer optimum";

  const auto weighted = mkp::dual_efficiencies(inst);
  const auto ordering = mkp::dual_ordering(weighted.efficiency);
  for (int trial = 0; trial < 64; ++trial) {
    auto sol = mkp::Solution::from_bits(inst, mkp::random_bits(inst.num_items(), rng));
    mkp::heuristic_repair(sol, ordering, inst);
    if (!mkp::is_feasible(inst, sol)) return "repair produced an infeasible solution";
    if (!mkp::is_maximal(inst, sol)) return "repair produced a non-maximal solution";
    if (sol.profit() > opt.value) return "repair exceeded the enumerated optimum";
  }
  return {};
}

int cmd_verify(const std::vector<std::string>& paths, std::size_t random_count, std::uint64_t seed,
               std::size_t items, std::size_t resources) {
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  auto report = [&](const mkp::Instance& inst) {
    const std::string problem = audit(inst, rng);
    const auto opt = mkp::enumerate_optimum(inst);
    std::cout << (problem.empty() ? "ok   " : "FAIL ") << inst.name() << " optimum " << opt.value;
    if (inst.best_known() && *inst.best_known() != opt.value) {
      std::cout << " (header best known " << *inst.best_known() << ')';
    }
    if (!problem.empty()) {
      std::cout << ": " << problem;
      ++failures;
    }
    std::cout << '\n';
  };
  for (const auto& path : paths)
    for (const auto& inst : mkp::load_instances(path)) report(inst);
  for (std::size_t k = 0; k < random_count; ++k) {
    mkp::GeneratorConfig g;
    g.items = items;
    g.resources = resources;
    g.weight_max = 100;
    g.tightness = 0.5;
    g.profit_noise = 50.0;
    g.name = "random-" + std::to_string(k);
    report(mkp::generate_instance(g, seed + k));
  }
  return failures == 0 ? 0 : 1;
}

mkp::Operator parse_operator(const std::string& s) {
  if (s == "none") return mkp::Operator::none;
  if (s == "swap") return mkp::Operator::rg_swap;
  if (s == "shuffle") return mkp::Operator::rg_shuffle;
  throw mkp::ContractError("unknown operator '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multidimensional knapsack GA with efficiency-group randomized repair"};
  app.require_subcommand(1);

  SolveArgs solve;
  std::string op_name = "none";
  std::optional<mkp::Value> target;
  auto* solve_cmd = app.add_subcommand("solve", "Run one GA on one instance; prints a raw CSV record");
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--index", solve.index, "Instance index inside a multi-instance file");
  solve_cmd->add_option("--operator", op_name, "Ordering randomization")
      ->check(CLI::IsMember({"none", "swap", "shuffle"}));
  solve_cmd->add_option("--decimals", solve.decimals, "Rounding decimals for efficiency groups")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--pop-size", solve.pop_size, "Population size")->check(CLI::Range(2, 1 << 20));
  solve_cmd->add_option("--max-evals", solve.max_evals, "Evaluation budget");
  solve_cmd->add_option("--seed", solve.seed, "Random seed");
  solve_cmd->add_option("--target", target, "Stop once this objective value is reached");
  solve_cmd->add_flag("--trace", solve.trace, "Per-generation progress on stderr");
  solve_cmd->add_flag("--show-solution", solve.show_solution, "Print selected items on stderr");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment plan and write CSV/markdown reports");
  bench_cmd->add_option("--plan", bench.plan_file, "Plan file (key = value lines)")->check(CLI::ExistingFile);
  bench_cmd->add_option("--instances", bench.instances, "Instance files");
  bench_cmd->add_option("--algorithms", bench.algorithms, "Subset of CBGA Sw_d1 Sw_d2 Sh_d1 Sh_d2");
  bench_cmd->add_option("--runs", bench.runs, "Runs per instance and algorithm");
  bench_cmd->add_option("--max-evals", bench.max_evals, "Evaluation budget per run");
  bench_cmd->add_option("--seed", bench.seed, "Base seed; run k uses seed + k");
  bench_cmd->add_option("--pop-size", bench.pop_size, "Population size");
  bench_cmd->add_option("--threads", bench.threads, "Worker threads");
  bench_cmd->add_option("--out", bench.out_dir, "Directory for raw.csv, summary.csv, wins.csv, summary.md");

  std::string dump_path;
  std::size_t dump_index = 0;
  std::optional<int> dump_decimals;
  auto* dump_cmd = app.add_subcommand("dump-eff", "Print scaled dual efficiencies as CSV");
  dump_cmd->add_option("instance", dump_path, "Instance file")->required()->check(CLI::ExistingFile);
  dump_cmd->add_option("--index", dump_index, "Instance index inside a multi-instance file");
  dump_cmd->add_option("--decimals", dump_decimals, "Rounding decimals; adds rounded values and groups");

  std::vector<std::string> verify_paths;
  std::size_t verify_random = 0;
  std::uint64_t verify_seed = 1;
  std::size_t verify_items = 15;
  std::size_t verify_resources = 3;
  auto* verify_cmd = app.add_subcommand("verify", "Audit LP, repair and optimum on small instances");
  verify_cmd->add_option("instances", verify_paths, "Instance files (n <= 25)")->check(CLI::ExistingFile);
  verify_cmd->add_option("--random", verify_random, "Also audit this many generated instances");
  verify_cmd->add_option("--seed", verify_seed, "Seed for generated instances and repair starts");
  verify_cmd->add_option("--items", verify_items, "Items per generated instance")->check(CLI::Range(1, 25));
  verify_cmd->add_option("--resources", verify_resources, "Resources per generated instance")
      ->check(CLI::Range(1, 100));

  mkp::GeneratorConfig gen;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("generate", "Write a random correlated instance in OR-Library format");
  gen_cmd->add_option("--items", gen.items, "Number of items")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--resources", gen.resources, "Number of resources")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--weight-max", gen.weight_max, "Weights drawn from [1, weight-max]");
  gen_cmd->add_option("--tightness", gen.tightness, "Capacity as a fraction of the row sum")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--profit-noise", gen.profit_noise, "Upper bound of the random profit term");
  gen_cmd->add_option("--seed", gen_seed, "Random seed");
  gen_cmd->add_option("--out", gen_out, "Output file (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) {
      solve.op = parse_operator(op_name);
      solve.target = target;
      return cmd_solve(solve);
    }
    if (*bench_cmd) return cmd_bench(bench);
    if (*dump_cmd) return cmd_dump(dump_path, dump_index, dump_decimals);
    if (*verify_cmd) {
      if (verify_paths.empty() && verify_random == 0) verify_random = 20;
      return cmd_verify(verify_paths, verify_random, verify_seed, verify_items, verify_resources);
    }
    if (*gen_cmd) {
      const std::string text = mkp::serialize_instance(mkp::generate_instance(gen, gen_seed));
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        write_file(gen_out, text);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
