// tsplan: troubleshooting sequence planner for tree cost-cluster models.
//
// Subcommands: plan, eval, oracle, check, simulate, bench.
// Exit codes: 0 ok, 1 usage error, 2 invalid model or sequence,
// 3 infeasible request (oracle too large, planner/shape mismatch, bad bench
// sizes).

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "tsplan/ecr.hpp"
#include "tsplan/model_io.hpp"
#include "tsplan/modelgen.hpp"
#include "tsplan/oracle.hpp"
#include "tsplan/planner_flat.hpp"
#include "tsplan/planner_tree.hpp"
#include "tsplan/simulate.hpp"

namespace {

using nlohmann::json;
using namespace tsplan;

enum class Format { Human, Machine };

struct CommonOpts {
  std::string model_path;
  std::string format = "human";
  bool strict = false;

  Format format_kind() const {
    return format == "machine" ? Format::Machine : Format::Human;
  }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_model = true) {
  auto* model = cmd->add_option("--model", opts.model_path,
                                "Path to the JSON model file");
  if (needs_model) model->required();
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();
  cmd->add_flag("--strict", opts.strict,
                "Reject unknown fields in the model file");
}

std::vector<std::string> split_ids(const std::string& csv) {
  std::vector<std::string> ids;
  std::string item;
  std::istringstream stream(csv);
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) ids.push_back(item);
  }
  if (ids.empty())
    throw ValidationError("--sequence must list comma-separated action ids");
  return ids;
}

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Basic:
      return "basic";
    case Algorithm::Flat:
      return "flat";
    case Algorithm::Tree:
      return "tree";
  }
  return "?";
}

json plan_to_json(const TroubleshootingModel& model, const PlanResult& plan,
                  const std::string& algorithm) {
  json steps = json::array();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < plan.sequence.size(); ++i) {
    cumulative += plan.step_costs[i] * plan.step_survival[i];
    json opens = json::array();
    for (ClusterIndex c : plan.opened_at[i]) opens.push_back(model.cluster(c).id);
    steps.push_back({{"index", i + 1},
                     {"action", model.action(plan.sequence[i]).id},
                     {"opens", std::move(opens)},
                     {"cost", plan.step_costs[i]},
                     {"survival", plan.step_survival[i]},
                     {"cumulative_ecr", cumulative}});
  }
  json openings = json::array();
  for (int z : plan.opening_indices) openings.push_back(z + 1);
  return json{{"algorithm", algorithm},
              {"ecr", plan.ecr},
              {"opening_indices", std::move(openings)},
              {"steps", std::move(steps)}};
}

void print_plan_human(const TroubleshootingModel& model,
                      const PlanResult& plan, const std::string& algorithm) {
  std::cout << std::left << std::setw(6) << "step" << std::setw(12) << "action"
            << std::setw(16) << "opens" << std::right << std::setw(10)
            << "cost" << std::setw(12) << "survival" << std::setw(14)
            << "cum. ECR" << "\n";
  double cumulative = 0.0;
  for (std::size_t i = 0; i < plan.sequence.size(); ++i) {
    cumulative += plan.step_costs[i] * plan.step_survival[i];
    std::string opens;
    for (ClusterIndex c : plan.opened_at[i]) {
      if (!opens.empty()) opens += "+";
      opens += model.cluster(c).id;
    }
    std::cout << std::left << std::setw(6) << i + 1 << std::setw(12)
              << model.action(plan.sequence[i]).id << std::setw(16)
              << (opens.empty() ? "-" : opens) << std::right << std::fixed
              << std::setprecision(4) << std::setw(10) << plan.step_costs[i]
              << std::setw(12) << plan.step_survival[i] << std::setw(14)
              << cumulative << "\n";
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setprecision(6);
  }
  std::cout << "ECR " << std::setprecision(12) << plan.ecr << " (" << algorithm
            << " algorithm, " << plan.opening_indices.size()
            << " opening steps)\n";
}

void emit_plan(const TroubleshootingModel& model, const PlanResult& plan,
               const std::string& algorithm, Format format) {
  if (format == Format::Machine)
    std::cout << plan_to_json(model, plan, algorithm).dump(2) << "\n";
  else
    print_plan_human(model, plan, algorithm);
}

int cmd_plan(const CommonOpts& opts, const std::string& requested) {
  auto model = load_model_file(opts.model_path, opts.strict);
  PlanResult plan;
  std::string used;
  if (requested == "auto") {
    plan = plan_auto(model);
    used = algorithm_name(choose_algorithm(model));
  } else if (requested == "basic") {
    if (model.tree_depth() > 0)
      throw InfeasibleError(
          "basic (plain ratio order) requires all actions in the root "
          "cluster; use flat, tree or auto");
    std::vector<ActionIndex> all(model.action_count());
    for (ActionIndex a = 0; a < ActionIndex(model.action_count()); ++a)
      all[a] = a;
    plan = evaluate_ecr(model, p_over_c(model, all));
    used = "basic";
  } else if (requested == "flat") {
    plan = plan_flat(model);  // rejects deep trees itself
    used = "flat";
  } else {
    plan = plan_tree(model).result;
    used = "tree";
  }
  emit_plan(model, plan, used, opts.format_kind());
  return 0;
}

int cmd_eval(const CommonOpts& opts, const std::string& sequence_csv) {
  auto model = load_model_file(opts.model_path, opts.strict);
  auto plan = evaluate_ecr(model, split_ids(sequence_csv));
  emit_plan(model, plan, "eval", opts.format_kind());
  return 0;
}

int cmd_oracle(const CommonOpts& opts) {
  auto model = load_model_file(opts.model_path, opts.strict);
  auto report = brute_force_optimal(model);
  if (opts.format_kind() == Format::Machine) {
    json sequence = json::array();
    for (ActionIndex a : report.best_sequence)
      sequence.push_back(model.action(a).id);
    std::cout << json{{"best_sequence", std::move(sequence)},
                      {"best_ecr", report.best_ecr},
                      {"sequences_examined", report.sequences_examined},
                      {"ties", report.ties}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "examined " << report.sequences_examined
              << " permutations, minimum ECR " << std::setprecision(12)
              << report.best_ecr << " (" << report.ties
              << " within 1e-12)\nbest:";
    for (ActionIndex a : report.best_sequence)
      std::cout << " " << model.action(a).id;
    std::cout << "\n";
  }
  return 0;
}

int cmd_check(const CommonOpts& opts, const std::string& sequence_csv) {
  auto model = load_model_file(opts.model_path, opts.strict);
  std::vector<ActionIndex> sequence;
  for (const auto& id : split_ids(sequence_csv))
    sequence.push_back(model.action_index(id));

  auto adjacency = check_adjacency(model, sequence);
  const auto mode = model.tree_depth() <= 1 ? PartitionMode::Cluster
                                            : PartitionMode::Subtree;
  auto blocks = check_block_efficiency_order(model, sequence, mode);

  if (opts.format_kind() == Format::Machine) {
    json adj = json::array();
    for (const auto& v : adjacency)
      adj.push_back({{"index", v.index + 1},
                     {"first", model.action(v.first).id},
                     {"second", model.action(v.second).id},
                     {"first_efficiency", v.first_efficiency},
                     {"second_efficiency", v.second_efficiency}});
    json blk = json::array();
    for (const auto& v : blocks)
      blk.push_back({{"first_block", {v.first_block.first + 1,
                                      v.first_block.second + 1}},
                     {"second_block", {v.second_block.first + 1,
                                       v.second_block.second + 1}},
                     {"first_efficiency", v.first_efficiency},
                     {"second_efficiency", v.second_efficiency}});
    std::cout << json{{"adjacency_violations", std::move(adj)},
                      {"block_violations", std::move(blk)},
                      {"violations_total", adjacency.size() + blocks.size()}}
                     .dump(2)
              << "\n";
  } else {
    for (const auto& v : adjacency)
      std::cout << "adjacency violation at step " << v.index + 1 << ": "
                << model.action(v.first).id << " ("
                << std::setprecision(6) << v.first_efficiency << ") before "
                << model.action(v.second).id << " (" << v.second_efficiency
                << ")\n";
    for (const auto& v : blocks)
      std::cout << "block-order violation: steps ["
                << v.first_block.first + 1 << ", " << v.first_block.second + 1
                << "] at " << std::setprecision(6) << v.first_efficiency
                << " before [" << v.second_block.first + 1 << ", "
                << v.second_block.second + 1 << "] at " << v.second_efficiency
                << "\n";
    std::cout << (adjacency.size() + blocks.size()) << " violations\n";
  }
  return 0;
}

int cmd_simulate(const CommonOpts& opts, const std::string& sequence_csv,
                 std::uint64_t trials, std::uint64_t seed) {
  auto model = load_model_file(opts.model_path, opts.strict);
  std::vector<ActionIndex> sequence;
  for (const auto& id : split_ids(sequence_csv))
    sequence.push_back(model.action_index(id));
  auto summary = estimate_ecr(model, sequence, trials, seed);
  if (opts.format_kind() == Format::Machine) {
    std::cout << json{{"trials", summary.trials},
                      {"mean_cost", summary.mean_cost},
                      {"std_error", summary.std_error},
                      {"solve_rate", summary.solve_rate},
                      {"seed", summary.seed}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << summary.trials << " trials (seed " << summary.seed
              << "): mean cost " << std::setprecision(8) << summary.mean_cost
              << " +- " << std::setprecision(4) << summary.std_error
              << ", solve rate " << summary.solve_rate << "\n";
  }
  return 0;
}

int cmd_bench(const CommonOpts& opts, const std::string& sizes_csv,
              std::uint64_t seed) {
  std::vector<int> sizes;
  for (const auto& token : split_ids(sizes_csv)) {
    int n = 0;
    try {
      n = std::stoi(token);
    } catch (const std::exception&) {
      throw ValidationError("bad size '" + token + "' in --sizes");
    }
    if (n < 2)
      throw InfeasibleError("bench sizes must be >= 2, got " + token);
    sizes.push_back(n);
  }

  json rows = json::array();
  if (opts.format_kind() == Format::Human)
    std::cout << std::right << std::setw(10) << "actions" << std::setw(10)
              << "clusters" << std::setw(12) << "plan ms" << "\n";
  for (int n : sizes) {
    GeneratorParams params;
    params.actions = n;
    params.clusters = std::max(1, n / 100);
    params.max_depth = 6;
    params.seed = seed;
    auto model = random_model(params);

    const auto start = std::chrono::steady_clock::now();
    auto plan = plan_tree(model);
    const auto stop = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(stop - start).count();

    if (opts.format_kind() == Format::Machine)
      rows.push_back({{"actions", n},
                      {"clusters", params.clusters},
                      {"plan_ms", ms},
                      {"ecr", plan.result.ecr}});
    else
      std::cout << std::setw(10) << n << std::setw(10) << params.clusters
                << std::setw(12) << std::fixed << std::setprecision(2) << ms
                << "\n";
  }
  if (opts.format_kind() == Format::Machine)
    std::cout << json{{"rows", std::move(rows)}}.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal troubleshooting sequences for tree cost-cluster "
               "models"};
  app.require_subcommand(1);

  CommonOpts plan_opts, eval_opts, oracle_opts, check_opts, sim_opts,
      bench_opts;
  std::string algorithm = "auto";
  std::string eval_sequence, check_sequence, sim_sequence;
  std::uint64_t trials = 10000, sim_seed = 0, bench_seed = 0;
  std::string sizes = "10000,100000";

  auto* plan = app.add_subcommand("plan", "Compute an optimal sequence");
  add_common(plan, plan_opts);
  plan->add_option("--algorithm", algorithm, "Planner to use")
      ->check(CLI::IsMember({"auto", "basic", "flat", "tree"}))
      ->capture_default_str();

  auto* eval = app.add_subcommand("eval", "Evaluate a given sequence");
  add_common(eval, eval_opts);
  eval->add_option("--sequence", eval_sequence, "Comma-separated action ids")
      ->required();

  auto* oracle = app.add_subcommand(
      "oracle", "Exhaustive minimum over all permutations (small models)");
  add_common(oracle, oracle_opts);

  auto* check = app.add_subcommand(
      "check", "Run the optimality checkers on a sequence");
  add_common(check, check_opts);
  check->add_option("--sequence", check_sequence, "Comma-separated action ids")
      ->required();

  auto* simulate =
      app.add_subcommand("simulate", "Monte Carlo estimate of a sequence");
  add_common(simulate, sim_opts);
  simulate
      ->add_option("--sequence", sim_sequence, "Comma-separated action ids")
      ->required();
  simulate->add_option("--trials", trials, "Number of trials")
      ->capture_default_str();
  simulate->add_option("--seed", sim_seed, "Random seed")
      ->capture_default_str();

  auto* bench = app.add_subcommand(
      "bench", "Time the tree planner on synthetic random models");
  add_common(bench, bench_opts, /*needs_model=*/false);
  bench->add_option("--sizes", sizes, "Comma-separated action counts")
      ->capture_default_str();
  bench->add_option("--seed", bench_seed, "Random seed")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (plan->parsed()) return cmd_plan(plan_opts, algorithm);
    if (eval->parsed()) return cmd_eval(eval_opts, eval_sequence);
    if (oracle->parsed()) return cmd_oracle(oracle_opts);
    if (check->parsed()) return cmd_check(check_opts, check_sequence);
    if (simulate->parsed())
      return cmd_simulate(sim_opts, sim_sequence, trials, sim_seed);
    if (bench->parsed()) return cmd_bench(bench_opts, sizes, bench_seed);
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
