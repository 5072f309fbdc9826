#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "axlab/harness.hpp"

namespace {

// "a..b" inclusive range or comma list
std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> seeds;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const auto lo = std::stoull(spec.substr(0, dots));
    const auto hi = std::stoull(spec.substr(dots + 2));
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::string cur;
  for (char c : spec + ",") {
    if (c == ',') {
      if (!cur.empty()) seeds.push_back(std::stoull(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"axlab: incremental autonomous exploration laboratory"};
  app.require_subcommand(1);

  std::string env_spec;
  std::string algo_name = "lasd";
  double radius = 1.0;
  double eps = 0.5;
  double delta = 0.1;
  std::string seeds_spec = "0";
  std::uint64_t budget = 100'000'000;
  std::string out_dir;
  int jobs = 1;
  std::string eps_list_spec;

  auto* run = app.add_subcommand("run", "run an algorithm over seeds and verify");
  run->add_option("--env", env_spec, "environment spec or MDP json path")->required();
  run->add_option("--algo", algo_name, "lasd | lasd+ | pc | lae");
  run->add_option("--L", radius, "exploration radius");
  run->add_option("--eps", eps, "accuracy");
  run->add_option("--delta", delta, "confidence");
  run->add_option("--seeds", seeds_spec, "seed range a..b or comma list");
  run->add_option("--budget", budget, "max environment steps per seed");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--jobs", jobs, "concurrent seeds");

  auto* oracle = app.add_subcommand("oracle", "print exact layers and set statistics");
  oracle->add_option("--env", env_spec, "environment spec or MDP json path")->required();
  oracle->add_option("--L", radius, "exploration radius");
  double oracle_eps = 0.0;
  oracle->add_option("--eps", oracle_eps, "also report identifiability at this accuracy");
  oracle->add_option("--out", out_dir, "write oracle.json here");

  auto* sweep = app.add_subcommand("sweep", "run_experiment per eps, report sample scaling");
  sweep->add_option("--env", env_spec, "environment spec or MDP json path")->required();
  sweep->add_option("--algo", algo_name, "lasd | lasd+ | pc | lae");
  sweep->add_option("--L", radius, "exploration radius");
  sweep->add_option("--eps-list", eps_list_spec, "comma-separated eps values")->required();
  sweep->add_option("--delta", delta, "confidence");
  sweep->add_option("--seeds", seeds_spec, "seed range a..b or comma list");
  sweep->add_option("--budget", budget, "max environment steps per seed");
  sweep->add_option("--out", out_dir, "output directory");
  sweep->add_option("--jobs", jobs, "concurrent seeds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (oracle->parsed()) {
      const axlab::TabularMdp mdp = axlab::build_env(env_spec);
      const std::string report = axlab::oracle_report_json(
          mdp, radius,
          oracle_eps > 0.0 ? std::optional<double>(oracle_eps) : std::nullopt);
      std::printf("%s\n", report.c_str());
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream out(out_dir + "/oracle.json", std::ios::binary);
        out << report;
      }
      return 0;
    }

    axlab::ExperimentConfig config;
    config.env_spec = env_spec;
    config.algo = axlab::parse_algo(algo_name);
    config.radius = radius;
    config.eps = eps;
    config.delta = delta;
    config.seeds = parse_seeds(seeds_spec);
    config.budget = budget;
    config.out_dir = out_dir;
    config.jobs = jobs;

    if (sweep->parsed()) {
      std::vector<double> eps_list;
      std::string cur;
      for (char c : eps_list_spec + ",") {
        if (c == ',') {
          if (!cur.empty()) eps_list.push_back(std::stod(cur));
          cur.clear();
        } else {
          cur += c;
        }
      }
      const auto rows = axlab::sweep_eps(config, eps_list);
      std::printf("eps,mean_samples,pass_rate\n");
      for (const auto& row : rows)
        std::printf("%.10g,%.10g,%.10g\n", row.eps, row.mean_samples, row.pass_rate);
      return 0;
    }

    const axlab::ExperimentSummary summary = axlab::run_experiment(config);
    std::printf("%s\n", summary.to_json().c_str());
    const bool ok = summary.pass_rate >= 1.0 - 2.0 * config.delta;
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
