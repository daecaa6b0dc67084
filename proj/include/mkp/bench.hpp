#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include "mkp/cbga.hpp"
#include "mkp/io.hpp"
#include "mkp/lp.hpp"
#include "mkp/ordering.hpp"

namespace mkp {

struct AlgorithmSpec {
  std::string name;
  Operator op = Operator::none;
  int decimals = 1;
};

// Plain CBGA and the four group-randomized variants.
inline const std::vector<AlgorithmSpec>& standard_algorithms() {
  static const std::vector<AlgorithmSpec> all = {
      {"CBGA", Operator::none, 1},         {"Sw_d1", Operator::rg_swap, 1},
      {"Sw_d2", Operator::rg_swap, 2},     {"Sh_d1", Operator::rg_shuffle, 1},
      {"Sh_d2", Operator::rg_shuffle, 2},
  };
  return all;
}

inline std::string algorithm_name(Operator op, int decimals) {
  switch (op) {
    case Operator::rg_swap: return "Sw_d" + std::to_string(decimals);
    case Operator::rg_shuffle: return "Sh_d" + std::to_string(decimals);
    default: return "CBGA";
  }
}

inline std::optional<AlgorithmSpec> find_algorithm(std::string_view name) {
  for (const auto& a : standard_algorithms())
    if (a.name == name) return a;
  return std::nullopt;
}

// 100 * (best_known - found) / best_known
inline double gap_percent(Value best_known, Value found) {
  return 100.0 * static_cast<double>(best_known - found) / static_cast<double>(best_known);
}

struct RunRecord {
  std::string instance;
  std::string algorithm;
  std::uint64_t seed = 0;
  Value best_value = 0;
  std::optional<Value> best_known;
  std::uint64_t evaluations = 0;
  std::uint64_t generations = 0;
  std::uint64_t randomizations = 0;
  double seconds = 0.0;
  StopReason stop_reason = StopReason::budget_exhausted;
  WeightSource weight_source = WeightSource::dual;

  std::optional<double> gap() const {
    if (!best_known) return std::nullopt;
    return gap_percent(*best_known, best_value);
  }
};

inline RunRecord make_record(const Instance& inst, const std::string& algorithm, std::uint64_t seed,
                             const RunStats& stats) {
  RunRecord r;
  r.instance = inst.name();
  r.algorithm = algorithm;
  r.seed = seed;
  r.best_value = stats.best_value;
  r.best_known = inst.best_known();
  r.evaluations = stats.evaluations;
  r.generations = stats.generations;
  r.randomizations = stats.randomizations;
  r.seconds = stats.wall_time;
  r.stop_reason = stats.stop_reason;
  r.weight_source = stats.weight_source;
  return r;
}

namespace detail {

inline std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string format_gap(const std::optional<double>& gap) {
  return gap ? format_fixed(*gap, 6) : "n/a";
}

}  // namespace detail

inline constexpr std::string_view kRawCsvHeader =
    "instance,algorithm,seed,best_value,gap,evaluations,generations,randomizations,seconds,"
    "stop_reason,weight_source";

// Column 9 (seconds) is the only field not determined by the seed.
inline std::string to_csv_row(const RunRecord& r) {
  std::ostringstream out;
  out << r.instance << ',' << r.algorithm << ',' << r.seed << ',' << r.best_value << ','
      << detail::format_gap(r.gap()) << ',' << r.evaluations << ',' << r.generations << ','
      << r.randomizations << ',' << detail::format_fixed(r.seconds, 6) << ','
      << to_string(r.stop_reason) << ',' << to_string(r.weight_source);
  return out.str();
}

struct AlgorithmSummary {
  std::size_t runs = 0;
  std::optional<double> mean_gap;
  bool star = false;  // best known reached in at least one run
  double mean_seconds = 0.0;
  double mean_evaluations = 0.0;
};

struct ReportRow {
  std::string instance;
  std::optional<Value> best_known;
  std::vector<AlgorithmSummary> per_algorithm;  // aligned with Report::algorithms
};

struct Report {
  std::vector<std::string> algorithms;
  std::vector<ReportRow> rows;
  std::vector<std::size_t> quality_wins;  // aligned with algorithms
  std::vector<std::size_t> speed_wins;
};

/**
 * Aggregates raw records into one row per instance. Instances and algorithms
 * appear in first-seen order of the records unless explicit orders are
 * given. Wins go to every algorithm tied for the smallest mean gap (instances
 * with a known best only) and the smallest mean time.
 */
inline Report aggregate(const std::vector<RunRecord>& records,
                        std::vector<std::string> algorithms = {},
                        std::vector<std::string> instances = {}) {
  auto note = [](std::vector<std::string>& order, const std::string& v) {
    if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  };
  for (const auto& r : records) {
    note(algorithms, r.algorithm);
    note(instances, r.instance);
  }
  Report report;
  report.algorithms = algorithms;
  report.quality_wins.assign(algorithms.size(), 0);
  report.speed_wins.assign(algorithms.size(), 0);

  for (const auto& name : instances) {
    ReportRow row;
    row.instance = name;
    row.per_algorithm.resize(algorithms.size());
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      AlgorithmSummary& s = row.per_algorithm[a];
      double gap_sum = 0.0;
      bool gap_known = true;
      for (const auto& r : records) {
        if (r.instance != name || r.algorithm != algorithms[a]) continue;
        ++s.runs;
        if (r.best_known) row.best_known = r.best_known;
        const auto g = r.gap();
        if (g) {
          gap_sum += *g;
          if (r.best_value >= *r.best_known) s.star = true;
        } else {
          gap_known = false;
        }
        s.mean_seconds += r.seconds;
        s.mean_evaluations += static_cast<double>(r.evaluations);
      }
      if (s.runs == 0) continue;
      const auto runs = static_cast<double>(s.runs);
      if (gap_known) s.mean_gap = gap_sum / runs;
      s.mean_seconds /= runs;
      s.mean_evaluations /= runs;
    }

    std::optional<double> best_gap;
    std::optional<double> best_time;
    for (const auto& s : row.per_algorithm) {
      if (s.runs == 0) continue;
      if (s.mean_gap && (!best_gap || *s.mean_gap < *best_gap)) best_gap = s.mean_gap;
      if (!best_time || s.mean_seconds < *best_time) best_time = s.mean_seconds;
    }
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      const auto& s = row.per_algorithm[a];
      if (s.runs == 0) continue;
      if (best_gap && s.mean_gap && *s.mean_gap <= *best_gap + 1e-12) ++report.quality_wins[a];
      if (best_time && s.mean_seconds <= *best_time) ++report.speed_wins[a];
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

inline std::string summary_csv(const Report& report) {
  std::ostringstream out;
  out << "instance,best_known,algorithm,runs,mean_gap,star,mean_seconds,mean_evaluations\n";
  for (const auto& row : report.rows) {
    for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
      const auto& s = row.per_algorithm[a];
      if (s.runs == 0) continue;
      out << row.instance << ',' << (row.best_known ? std::to_string(*row.best_known) : "n/a") << ','
          << report.algorithms[a] << ',' << s.runs << ',' << detail::format_gap(s.mean_gap) << ','
          << (s.star ? 1 : 0) << ',' << detail::format_fixed(s.mean_seconds, 6) << ','
          << detail::format_fixed(s.mean_evaluations, 1) << '\n';
    }
  }
  return out.str();
}

inline std::string wins_csv(const Report& report) {
  std::ostringstream out;
  out << "algorithm,quality_wins,speed_wins\n";
  for (std::size_t a = 0; a < report.algorithms.size(); ++a)
    out << report.algorithms[a] << ',' << report.quality_wins[a] << ',' << report.speed_wins[a] << '\n';
  return out.str();
}

/**
 * Aligned markdown table: Instance | Best known | one gap column per
 * algorithm (with `*` when the best known was reached) | one time column per
 * algorithm, closed by a wins row. Gap is 100 * (best_known - found) /
 * best_known, averaged over runs; time is mean seconds over all runs.
 */
inline std::string markdown_table(const Report& report) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {"Instance", "Best known"};
  for (const auto& a : report.algorithms) header.push_back("Gap " + a);
  for (const auto& a : report.algorithms) header.push_back("Time " + a);
  cells.push_back(header);
  for (const auto& row : report.rows) {
    std::vector<std::string> line = {row.instance,
                                     row.best_known ? std::to_string(*row.best_known) : "n/a"};
    for (const auto& s : row.per_algorithm) {
      if (s.runs == 0) {
        line.push_back("-");
        continue;
      }
      std::string g = s.mean_gap ? detail::format_fixed(*s.mean_gap, 3) : "n/a";
      if (s.star) g += "*";
      line.push_back(g);
    }
    for (const auto& s : row.per_algorithm)
      line.push_back(s.runs ? detail::format_fixed(s.mean_seconds, 3) : "-");
    cells.push_back(line);
  }
  std::vector<std::string> wins = {"Wins", ""};
  for (const auto w : report.quality_wins) wins.push_back(std::to_string(w));
  for (const auto w : report.speed_wins) wins.push_back(std::to_string(w));
  cells.push_back(wins);

  std::vector<std::size_t> width(header.size(), 3);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& line) {
    out << '|';
    for (std::size_t c = 0; c < line.size(); ++c)
      out << ' ' << line[c] << std::string(width[c] - line[c].size(), ' ') << " |";
    out << '\n';
  };
  emit(cells.front());
  out << '|';
  for (const auto w : width) out << std::string(w + 2, '-') << '|';
  out << '\n';
  for (std::size_t k = 1; k < cells.size(); ++k) emit(cells[k]);
  return out.str();
}

struct ExperimentPlan {
  std::vector<std::string> instances;
  std::vector<std::string> algorithms = {"CBGA", "Sw_d1", "Sw_d2", "Sh_d1", "Sh_d2"};
  std::size_t runs_per_instance = 30;
  std::uint64_t max_evaluations = 1'000'000;
  std::uint64_t base_seed = 1;
  std::size_t population_size = 100;
  std::size_t threads = 1;
  std::map<std::string, Value> best_known_overrides;
};

inline void validate(const ExperimentPlan& plan) {
  if (plan.runs_per_instance < 1) throw ContractError("runs per instance must be at least 1");
  if (plan.algorithms.empty()) throw ContractError("plan lists no algorithms");
  for (const auto& a : plan.algorithms)
    if (!find_algorithm(a)) throw ContractError("unknown algorithm '" + a + "'");
}

/**
 * Plan files are `key = value` lines; `#` starts a comment. Keys:
 *
 *   instances       whitespace-separated paths (may repeat)
 *   algorithms      subset of CBGA Sw_d1 Sw_d2 Sh_d1 Sh_d2
 *   runs            runs per instance and algorithm
 *   max_evaluations evaluation budget per run
 *   base_seed       run k uses base_seed + k
 *   population_size GA population size
 *   threads         worker threads
 *   best_known.NAME best known value for instance NAME
 */
inline ExperimentPlan parse_plan(std::string_view text) {
  ExperimentPlan plan;
  bool algorithms_set = false;
  std::istringstream lines{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto as_uint = [&](const std::string& v, const std::string& key) -> std::uint64_t {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      throw ParseError(line_no, 1, "invalid value '" + v + "' for " + key);
    }
    return out;
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(lines, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, 1, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::istringstream words(value);
    std::vector<std::string> list;
    for (std::string w; words >> w;) list.push_back(w);
    if (key == "instances") {
      plan.instances.insert(plan.instances.end(), list.begin(), list.end());
    } else if (key == "algorithms") {
      if (!algorithms_set) plan.algorithms.clear();
      algorithms_set = true;
      plan.algorithms.insert(plan.algorithms.end(), list.begin(), list.end());
    } else if (key == "runs") {
      plan.runs_per_instance = as_uint(value, key);
    } else if (key == "max_evaluations") {
      plan.max_evaluations = as_uint(value, key);
    } else if (key == "base_seed") {
      plan.base_seed = as_uint(value, key);
    } else if (key == "population_size") {
      plan.population_size = as_uint(value, key);
    } else if (key == "threads") {
      plan.threads = as_uint(value, key);
    } else if (key.rfind("best_known.", 0) == 0 && key.size() > 11) {
      plan.best_known_overrides[key.substr(11)] = static_cast<Value>(as_uint(value, key));
    } else {
      throw ParseError(line_no, 1, "unknown key '" + key + "'");
    }
  }
  return plan;
}

struct ExperimentResult {
  std::vector<RunRecord> records;
  Report report;
};

/**
 * Runs every (instance, algorithm, seed) of the plan. Runs stop at the
 * instance's best known value when one is available. Work is spread over
 * plan.threads workers; records are ordered by (instance, algorithm, seed)
 * in plan order, so the output does not depend on scheduling.
 */
inline ExperimentResult run_experiment(const std::vector<Instance>& instances, const ExperimentPlan& plan,
                                       const std::function<void(const RunRecord&)>& on_record = {}) {
  validate(plan);
  struct Task {
    std::size_t instance;
    std::size_t algorithm;
    std::size_t run;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (std::size_t a = 0; a < plan.algorithms.size(); ++a)
      for (std::size_t k = 0; k < plan.runs_per_instance; ++k) tasks.push_back({i, a, k});

  std::vector<Instance> prepared = instances;
  for (auto& inst : prepared) {
    if (const auto it = plan.best_known_overrides.find(inst.name()); it != plan.best_known_overrides.end())
      inst.set_best_known(it->second);
  }

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex callback_mutex;
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      const Task& task = tasks[t];
      const Instance& inst = prepared[task.instance];
      const AlgorithmSpec spec = *find_algorithm(plan.algorithms[task.algorithm]);
      GaConfig cfg;
      cfg.population_size = plan.population_size;
      cfg.max_evaluations = plan.max_evaluations;
      cfg.op = spec.op;
      cfg.decimals = spec.decimals;
      cfg.seed = plan.base_seed + task.run;
      cfg.target = inst.best_known();
      records[t] = make_record(inst, spec.name, cfg.seed, run(inst, cfg));
      if (on_record) {
        std::lock_guard lock(callback_mutex);
        on_record(records[t]);
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(plan.threads, tasks.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }

  std::vector<std::string> instance_order;
  for (const auto& inst : prepared) instance_order.push_back(inst.name());
  ExperimentResult result;
  result.report = aggregate(records, plan.algorithms, instance_order);
  result.records = std::move(records);
  return result;
}

struct EfficiencyDumpRow {
  std::size_t item_rank = 0;
  std::size_t item = 0;
  double scaled = 0.0;
  std::optional<double> rounded;
  std::optional<std::size_t> group;
};

/**
 * Scaled dual efficiencies in non-decreasing order, as plotted. With a
 * rounding precision, each row also carries its rounded value and the id of
 * its efficiency group (groups numbered from the most efficient end).
 */
inline std::vector<EfficiencyDumpRow> dump_efficiencies(const Instance& inst, std::optional<int> decimals) {
  const auto weighted = dual_efficiencies(inst);
  const EfficiencyOrdering ordering = dual_ordering(weighted.efficiency);
  std::vector<std::optional<std::size_t>> group_at(ordering.size());
  if (decimals) {
    const auto groups = get_efficiency_groups(ordering, *decimals);
    for (std::size_t g = 0; g < groups.groups.size(); ++g)
      for (std::size_t p = groups.groups[g].lo; p < groups.groups[g].hi; ++p) group_at[p] = g;
  }
  std::vector<EfficiencyDumpRow> rows;
  rows.reserve(ordering.size());
  for (std::size_t pos = ordering.size(); pos-- > 0;) {
    EfficiencyDumpRow row;
    row.item_rank = rows.size();
    row.item = ordering.perm[pos];
    row.scaled = ordering.eff_scaled[row.item];
    if (decimals) row.rounded = round_decimals(row.scaled, *decimals);
    row.group = group_at[pos];
    rows.push_back(row);
  }
  return rows;
}

inline std::string efficiency_csv(const std::vector<EfficiencyDumpRow>& rows, std::optional<int> decimals) {
  std::ostringstream out;
  out << "item_rank,scaled_efficiency,rounded_efficiency,group_id\n";
  for (const auto& r : rows) {
    out << r.item_rank << ',' << detail::format_fixed(r.scaled, 9) << ','
        << (r.rounded ? detail::format_fixed(*r.rounded, decimals.value_or(1)) : "") << ','
        << (r.group ? std::to_string(*r.group) : "") << '\n';
  }
  return out.str();
}

}  // namespace mkp
