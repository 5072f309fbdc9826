#include "axlab/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

#include "axlab/envs.hpp"
#include "axlab/mdp_io.hpp"

namespace axlab {

using nlohmann::json;

const char* algo_name(Algo algo) {
  switch (algo) {
    case Algo::kLasd: return "lasd";
    case Algo::kLasdPlus: return "lasd+";
    case Algo::kPc: return "pc";
    case Algo::kLae: return "lae";
  }
  return "unknown";
}

Algo parse_algo(const std::string& name) {
  if (name == "lasd") return Algo::kLasd;
  if (name == "lasd+") return Algo::kLasdPlus;
  if (name == "pc") return Algo::kPc;
  if (name == "lae") return Algo::kLae;
  throw std::invalid_argument("unknown algorithm: " + name);
}

void ExperimentConfig::validate() const {
  if (eps <= 0.0 || eps > 1.0) throw std::invalid_argument("config: eps must be in (0, 1]");
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("config: delta must be in (0, 1)");
  if (radius < 1.0) throw std::invalid_argument("config: L must be >= 1");
  if (seeds.empty()) throw std::invalid_argument("config: seed list must not be empty");
  if (jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

SeedOutcome run_seed(const TabularMdp& mdp, const ExperimentConfig& config,
                     std::uint64_t seed) {
  SeedOutcome out;
  out.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();

  EnvHandle env(mdp, config.budget);
  StreamSet streams = StreamSet::from_master_seed(seed);
  std::map<StateId, PolicyTable> policies;
  try {
    switch (config.algo) {
      case Algo::kLasd: {
        DiscoveryResult disc = lasd(env, mdp.num_states(), config.radius, config.eps,
                                    config.delta, config.thresholds, streams);
        out.k = disc.k;
        out.logs = disc.logs;
        policies = std::move(disc.policies);
        break;
      }
      case Algo::kLasdPlus: {
        DiscoveryResult disc =
            lasd_plus(env, config.radius, config.eps, config.delta, config.thresholds,
                      streams);
        out.k = disc.k;
        out.logs = disc.logs;
        policies = std::move(disc.policies);
        break;
      }
      case Algo::kPc: {
        LaeResult r = lae(env, config.radius, config.eps, config.delta, config.thresholds,
                          streams, /*use_lasd_plus=*/false, mdp.num_states());
        out.k = r.discovery.k;
        out.logs = r.discovery.logs;
        out.logs.insert(out.logs.end(), r.consolidation.logs.begin(),
                        r.consolidation.logs.end());
        policies = std::move(r.consolidation.policies);
        break;
      }
      case Algo::kLae: {
        LaeResult r = lae(env, config.radius, config.eps, config.delta, config.thresholds,
                          streams, /*use_lasd_plus=*/true);
        out.k = r.discovery.k;
        out.logs = r.discovery.logs;
        out.logs.insert(out.logs.end(), r.consolidation.logs.begin(),
                        r.consolidation.logs.end());
        policies = std::move(r.consolidation.policies);
        break;
      }
    }
    out.completed = true;
  } catch (const BudgetExceeded& e) {
    out.failure_reason = e.what();
  } catch (const NavigationCapExceeded& e) {
    out.failure_reason = e.what();
  }
  out.samples = env.steps_taken();

  if (out.completed) {
    const AxReport rl = verify_ax(mdp, config.radius, config.eps, out.k, policies,
                                  AxMode::kAxL);
    const AxReport rs = verify_ax(mdp, config.radius, config.eps, out.k, policies,
                                  AxMode::kAxStar);
    const AxReport rp = verify_ax(mdp, config.radius, config.eps, out.k, policies,
                                  AxMode::kAxPlus);
    out.ax_pass_l = rl.pass;
    out.ax_pass_star = rs.pass;
    out.ax_pass_plus = rp.pass;
    out.lower_inclusion = rl.controllable_set_covered;

    const auto upper =
        incrementally_controllable_set(mdp, config.radius * (1.0 + config.eps));
    out.upper_inclusion = true;
    for (StateId s : out.k)
      if (!upper.fixed_point.count(s)) out.upper_inclusion = false;

    for (const auto& [g, pi] : policies)
      if (out.k.count(g))
        out.exact_value_s0[g] = evaluate_policy(mdp, pi, g).at(mdp.initial_state());

    const bool quality = (config.algo == Algo::kPc || config.algo == Algo::kLae)
                             ? out.ax_pass_plus
                             : out.ax_pass_l;
    out.pass = quality && out.upper_inclusion;
  }

  const auto t1 = std::chrono::steady_clock::now();
  out.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return out;
}

json outcome_to_json(const SeedOutcome& out, bool include_wall_time) {
  json j;
  j["seed"] = out.seed;
  j["completed"] = out.completed;
  if (!out.failure_reason.empty()) j["failure_reason"] = out.failure_reason;
  j["k"] = std::vector<StateId>(out.k.begin(), out.k.end());
  json values = json::object();
  for (const auto& [g, v] : out.exact_value_s0) values[std::to_string(g)] = v;
  j["exact_value_s0"] = std::move(values);
  j["ax"] = {{"ax_l", out.ax_pass_l},
             {"ax_star", out.ax_pass_star},
             {"ax_plus", out.ax_pass_plus}};
  j["lower_inclusion"] = out.lower_inclusion;
  j["upper_inclusion"] = out.upper_inclusion;
  j["pass"] = out.pass;
  j["samples"] = out.samples;
  if (include_wall_time) j["wall_ms"] = out.wall_ms;
  return j;
}

}  // namespace

TabularMdp build_env(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts[0] == "chain" && parts.size() == 2) return make_chain(std::stoi(parts[1]));
  if (parts[0] == "example2l" && parts.size() == 3)
    return make_example_2l(std::stoi(parts[1]), std::stoi(parts[2]));
  if (parts[0] == "grid" && parts.size() == 3) {
    const auto dims = split(parts[1], 'x');
    if (dims.size() != 2) throw std::invalid_argument("grid spec: expected WxH");
    return make_gridworld(std::stoi(dims[0]), std::stoi(dims[1]), std::stod(parts[2]));
  }
  if (parts[0] == "random" && parts.size() == 5)
    return make_random_mdp(std::stoi(parts[1]), std::stoi(parts[2]), std::stoi(parts[3]),
                           std::stoull(parts[4]));
  return load_mdp_json(spec);
}

ExperimentSummary run_experiment(const ExperimentConfig& config) {
  config.validate();
  const TabularMdp mdp = build_env(config.env_spec);

  ExperimentSummary summary;
  summary.config = config;
  summary.oracle_set = incrementally_controllable_set(mdp, config.radius).fixed_point;
  summary.oracle_upper_set =
      incrementally_controllable_set(mdp, config.radius * (1.0 + config.eps)).fixed_point;

  summary.seeds.resize(config.seeds.size());
  const int jobs = std::max(1, config.jobs);
  std::size_t next = 0;
  while (next < config.seeds.size()) {
    std::vector<std::pair<std::size_t, std::future<SeedOutcome>>> batch;
    for (int j = 0; j < jobs && next < config.seeds.size(); ++j, ++next)
      batch.emplace_back(next, std::async(std::launch::async, run_seed, std::cref(mdp),
                                          std::cref(config), config.seeds[next]));
    for (auto& [idx, fut] : batch) summary.seeds[idx] = fut.get();
  }

  std::size_t passed = 0;
  double total_samples = 0.0;
  for (const auto& out : summary.seeds) {
    passed += out.pass ? 1 : 0;
    total_samples += static_cast<double>(out.samples);
  }
  summary.pass_rate = static_cast<double>(passed) / static_cast<double>(summary.seeds.size());
  summary.mean_samples = total_samples / static_cast<double>(summary.seeds.size());

  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    for (const auto& out : summary.seeds) {
      std::ofstream csv(config.out_dir + "/rounds_" + std::to_string(out.seed) + ".csv",
                        std::ios::binary);
      csv << round_logs_to_csv(out.logs);
    }
    std::ofstream js(config.out_dir + "/summary.json", std::ios::binary);
    js << summary.to_json();
  }
  return summary;
}

std::string ExperimentSummary::to_json(bool include_wall_time) const {
  json doc;
  doc["env"] = config.env_spec;
  doc["algo"] = algo_name(config.algo);
  doc["radius"] = config.radius;
  doc["eps"] = config.eps;
  doc["delta"] = config.delta;
  doc["budget"] = config.budget;
  doc["oracle"] = {
      {"controllable_set", std::vector<StateId>(oracle_set.begin(), oracle_set.end())},
      {"upper_set",
       std::vector<StateId>(oracle_upper_set.begin(), oracle_upper_set.end())}};
  json per_seed = json::array();
  for (const auto& out : seeds) per_seed.push_back(outcome_to_json(out, include_wall_time));
  doc["seeds"] = std::move(per_seed);
  doc["aggregate"] = {{"num_seeds", seeds.size()},
                      {"pass_rate", pass_rate},
                      {"mean_samples", mean_samples}};
  return doc.dump(2);
}

std::vector<SweepRow> sweep_eps(const ExperimentConfig& base,
                                const std::vector<double>& eps_list) {
  std::vector<SweepRow> rows;
  for (double eps : eps_list) {
    ExperimentConfig config = base;
    config.eps = eps;
    config.out_dir.clear();
    const ExperimentSummary summary = run_experiment(config);
    rows.push_back({eps, summary.mean_samples, summary.pass_rate});
  }
  if (!base.out_dir.empty()) {
    std::filesystem::create_directories(base.out_dir);
    std::ofstream csv(base.out_dir + "/sweep.csv", std::ios::binary);
    csv << "eps,mean_samples,pass_rate\n";
    char buf[128];
    for (const auto& row : rows) {
      std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g\n", row.eps, row.mean_samples,
                    row.pass_rate);
      csv << buf;
    }
  }
  return rows;
}

}  // namespace axlab
