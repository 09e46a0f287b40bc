// memeflow: aggregation-dynamics toolkit.
// Subcommands: simulate | fit | detect | compete | energy | features.
// Exit codes: 0 ok/Stable, 2 Bubble, 3 Indeterminate, 4 fit did not converge,
// 5 malformed CSV; anything else nonzero per CLI11.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "memeflow/bubble.hpp"
#include "memeflow/competition.hpp"
#include "memeflow/dynamics.hpp"
#include "memeflow/energy.hpp"
#include "memeflow/errors.hpp"
#include "memeflow/features.hpp"
#include "memeflow/fitting.hpp"
#include "memeflow/io.hpp"
#include "memeflow/rng.hpp"

namespace {

namespace mf = memeflow;

constexpr int kExitBubble = 2;
constexpr int kExitIndeterminate = 3;
constexpr int kExitNotConverged = 4;
constexpr int kExitBadCsv = 5;

struct GlobalOpts {
  std::string config_path;
  std::string output_path;
  std::string format;  // empty: each command's natural default
  std::uint64_t seed = 0;
};

using Config = std::map<std::string, std::string>;

Config load_config(const GlobalOpts& opts) {
  if (opts.config_path.empty()) return {};
  return mf::io::read_config(opts.config_path);
}

// flag value if the user passed it, else the config entry, else the fallback
double pick(const CLI::Option* opt, double flag_value, const Config& cfg,
            const std::string& key, double fallback) {
  if (opt->count() > 0) return flag_value;
  if (auto it = cfg.find(key); it != cfg.end()) {
    try {
      return std::stod(it->second);
    } catch (...) {
      throw mf::ConfigError("config key '" + key + "' is not a number: " + it->second);
    }
  }
  return fallback;
}

bool has(const CLI::Option* opt, const Config& cfg, const std::string& key) {
  return opt->count() > 0 || cfg.count(key) > 0;
}

void write_output(const GlobalOpts& opts, const std::string& body) {
  if (opts.output_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(opts.output_path);
  if (!out) throw mf::Error("cannot open output file: " + opts.output_path);
  out << body;
}

std::string series_json(const mf::TimeSeries& series) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) out << ',';
    out << "{\"t\":" << mf::io::format_double(series.samples[i].t)
        << ",\"y\":" << mf::io::format_double(series.samples[i].y) << '}';
  }
  out << "]\n";
  return out.str();
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      out.push_back(std::stod(token));
    } catch (...) {
      throw mf::ValidationError("bad number '" + token + "' in vector argument");
    }
  }
  return out;
}

// "A,deltaE,completion[,y0]"
mf::StageSpec parse_stage(const std::string& text) {
  const auto v = parse_vector(text);
  if (v.size() != 3 && v.size() != 4)
    throw mf::ValidationError("--stage wants A,deltaE,completion[,y0], got '" + text + "'");
  mf::StageSpec stage;
  stage.params = v.size() == 4 ? mf::LogisticParams{v[0], v[1], v[3]}
                               : mf::LogisticParams::from_epsilon(v[0], v[1]);
  stage.completion_fraction = v[2];
  return stage;
}

std::vector<mf::StageSpec> stages_from_config(const Config& cfg) {
  std::vector<mf::StageSpec> stages;
  for (int n = 1;; ++n) {
    const std::string prefix = "stage" + std::to_string(n) + ".";
    if (!cfg.count(prefix + "A")) break;
    auto num = [&](const std::string& key, double fallback, bool required = false) {
      const auto it = cfg.find(prefix + key);
      if (it == cfg.end()) {
        if (required) throw mf::ConfigError("missing config key " + prefix + key);
        return fallback;
      }
      try {
        return std::stod(it->second);
      } catch (...) {
        throw mf::ConfigError("config key '" + prefix + key +
                              "' is not a number: " + it->second);
      }
    };
    const double affinity = num("A", 0.0, true);
    const double delta_e = num("deltaE", 0.0, true);
    mf::StageSpec stage;
    if (cfg.count(prefix + "y0"))
      stage.params = mf::LogisticParams{affinity, delta_e, num("y0", 0.0)};
    else
      stage.params = mf::LogisticParams::from_epsilon(
          affinity, delta_e, num("epsilon", mf::kDefaultInitialFraction));
    stage.completion_fraction = num("completion", 0.99);
    stages.push_back(stage);
  }
  return stages;
}

int run_simulate(const GlobalOpts& opts, const CLI::Option* o_seed,
                 const CLI::Option* o_affinity, double affinity,
                 const CLI::Option* o_delta, double delta_e, const CLI::Option* o_y0,
                 double y0, const CLI::Option* o_eps, double epsilon,
                 const CLI::Option* o_tend, double t_end, const CLI::Option* o_step,
                 double step, const CLI::Option* o_noise, double noise,
                 const std::vector<std::string>& stage_args,
                 const std::optional<double>& applied_energy,
                 const std::optional<double>& valid_lo,
                 const std::optional<double>& valid_hi) {
  const Config cfg = load_config(opts);
  std::uint64_t seed = opts.seed;
  if (o_seed->count() == 0) {
    if (auto it = cfg.find("seed"); it != cfg.end()) {
      try {
        seed = std::stoull(it->second);
      } catch (...) {
        throw mf::ConfigError("config key 'seed' is not an unsigned integer: " + it->second);
      }
    }
  }

  std::vector<mf::StageSpec> stages;
  for (const auto& text : stage_args) stages.push_back(parse_stage(text));
  if (stages.empty()) stages = stages_from_config(cfg);

  step = pick(o_step, step, cfg, "step", 0.01);
  noise = pick(o_noise, noise, cfg, "noise", 0.0);

  mf::TimeSeries series;
  if (!stages.empty()) {
    series = mf::run_stages(stages, step);
  } else {
    if (!has(o_affinity, cfg, "A") || !has(o_delta, cfg, "deltaE"))
      throw mf::ValidationError("simulate needs --A and --deltaE (or stages)");
    affinity = pick(o_affinity, affinity, cfg, "A", 0.0);
    delta_e = pick(o_delta, delta_e, cfg, "deltaE", 1.0);
    t_end = pick(o_tend, t_end, cfg, "t_end", 20.0);

    mf::LogisticParams params;
    if (has(o_y0, cfg, "y0")) {
      params = {affinity, delta_e, pick(o_y0, y0, cfg, "y0", 0.0)};
      params.validate();
    } else {
      params = mf::LogisticParams::from_epsilon(
          affinity, delta_e, pick(o_eps, epsilon, cfg, "epsilon", mf::kDefaultInitialFraction));
    }

    if (applied_energy && valid_lo && valid_hi) {
      const mf::EnergyContext ctx{*applied_energy, *valid_lo, *valid_hi};
      if (mf::check_context(params, ctx) == mf::ContextValidity::OutOfRange)
        std::cerr << "warning: applied energy " << *applied_energy
                  << " lies outside the validity interval [" << *valid_lo << ", "
                  << *valid_hi << "]; the constant-affinity model may not hold\n";
    }

    series = mf::integrate(params, t_end, step);
  }

  if (noise > 0.0) series = mf::with_noise(series, noise, seed);

  if (opts.format == "json") {
    write_output(opts, series_json(series));
  } else {
    std::ostringstream out;
    mf::io::write_timeseries_csv(out, series);
    write_output(opts, out.str());
  }
  return 0;
}

int run_fit(const GlobalOpts& opts, const std::string& input, const std::string& model) {
  const mf::TimeSeries series = mf::io::read_timeseries_csv(input);
  mf::FitReport report;
  try {
    report = model == "exponential" ? mf::fit_exponential(series) : mf::fit_logistic(series);
  } catch (const mf::NonPositiveData& e) {
    std::cerr << "NonPositiveData: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const mf::DegenerateSeries& e) {
    std::cerr << "DegenerateSeries: " << e.what() << '\n';
    return kExitNotConverged;
  } catch (const mf::TooFewSamples& e) {
    std::cerr << "TooFewSamples: " << e.what() << '\n';
    return kExitNotConverged;
  }
  write_output(opts, mf::io::to_json(report) + "\n");
  return report.converged ? 0 : kExitNotConverged;
}

int run_detect(const GlobalOpts& opts, const std::string& input, const mf::BubbleConfig& cfg) {
  const mf::TimeSeries series = mf::io::read_timeseries_csv(input);
  const mf::BubbleVerdict verdict = mf::classify(series, cfg);
  write_output(opts, mf::io::to_json(verdict) + "\n");
  switch (verdict.label) {
    case mf::BubbleLabel::Stable: return 0;
    case mf::BubbleLabel::Bubble: return kExitBubble;
    case mf::BubbleLabel::Indeterminate: return kExitIndeterminate;
  }
  return kExitIndeterminate;
}

int run_compete(const GlobalOpts& opts, const std::string& system_path,
                const std::string& y0_text, double t_end, double step,
                bool want_equilibrium) {
  mf::CompetitionSystem sys = mf::io::read_system_json(system_path);
  if (!sys.normalized) sys = mf::normalize(sys);
  const std::vector<double> y0 = parse_vector(y0_text);

  const auto trajectories = mf::integrate_competition(sys, y0, t_end, step);
  if (opts.format == "json") {
    std::ostringstream out;
    out << "{\"t\":[";
    const auto& grid = trajectories.front().samples;
    for (std::size_t r = 0; r < grid.size(); ++r)
      out << (r ? "," : "") << mf::io::format_double(grid[r].t);
    out << "],\"series\":[";
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
      out << (i ? "," : "") << '[';
      for (std::size_t r = 0; r < trajectories[i].samples.size(); ++r)
        out << (r ? "," : "") << mf::io::format_double(trajectories[i].samples[r].y);
      out << ']';
    }
    out << "]}\n";
    write_output(opts, out.str());
  } else {
    std::ostringstream out;
    mf::io::write_wide_csv(out, trajectories);
    write_output(opts, out.str());
  }

  if (want_equilibrium) {
    try {
      const auto eq = mf::interior_equilibrium(sys);
      if (!eq) {
        std::cout << "none\n";
      } else {
        const auto stability = mf::equilibrium_stability(sys, *eq);
        std::cout << "{\"equilibrium\":[";
        for (std::size_t i = 0; i < eq->size(); ++i)
          std::cout << (i ? "," : "") << mf::io::format_double((*eq)[i]);
        std::cout << "],\"linearly_stable\":";
        switch (stability) {
          case mf::EquilibriumStability::Stable: std::cout << "true"; break;
          case mf::EquilibriumStability::Unstable: std::cout << "false"; break;
          case mf::EquilibriumStability::Indeterminate: std::cout << "null"; break;
        }
        std::cout << "}\n";
      }
    } catch (const mf::SingularMatrix& e) {
      std::cout << "none\n";
      std::cerr << "SingularMatrix: " << e.what() << '\n';  // diagnostic, not a failure
    }
  }
  return 0;
}

int run_energy(const GlobalOpts& opts, const std::string& input) {
  const mf::ConstituentSet set = mf::io::read_constituents_csv(input);
  const double energy = mf::activation_energy(set);
  write_output(opts, "{\"activation_energy\":" + mf::io::format_double(energy) + "}\n");
  return 0;
}

int run_features(const GlobalOpts& opts, const std::string& input, int bins, double low,
                 double high) {
  const mf::Dataset data = mf::io::read_dataset_csv(input);
  if (data.rows_dropped > 0)
    std::cerr << "note: dropped " << data.rows_dropped
              << " row(s) with missing or non-numeric cells\n";
  const auto scores = mf::triage(data, bins, low, high);
  if (opts.format == "csv")
    write_output(opts, mf::io::features_csv(scores));
  else
    write_output(opts, mf::io::to_json(scores) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"memeflow: bounded-growth simulation, estimation and triage"};
  app.require_subcommand(1);

  GlobalOpts opts;
  app.add_option("--config", opts.config_path, "flat key=value config file");
  app.add_option("--output", opts.output_path, "output path (default: stdout)");
  app.add_option("--format", opts.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  auto* o_seed = app.add_option("--seed", opts.seed, "seed for synthetic noise");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "integrate a growth trajectory");
  simulate->fallthrough();
  double affinity = 0, delta_e = 1, y0 = 0, epsilon = mf::kDefaultInitialFraction;
  double t_end = 20, step = 0.01, noise = 0;
  std::vector<std::string> stage_args;
  std::optional<double> applied_energy, valid_lo, valid_hi;
  auto* o_affinity = simulate->add_option("--A", affinity, "affinity (growth rate)");
  auto* o_delta = simulate->add_option("--deltaE", delta_e, "amplitude (upper asymptote)");
  auto* o_y0 = simulate->add_option("--y0", y0, "initial amplitude");
  auto* o_eps = simulate->add_option("--epsilon", epsilon,
                                     "initial amplitude as a fraction of deltaE");
  auto* o_tend = simulate->add_option("--t-end", t_end, "end time");
  auto* o_step = simulate->add_option("--step", step, "integration step");
  auto* o_noise = simulate->add_option("--noise", noise, "Gaussian noise sigma");
  simulate->add_option("--stage", stage_args,
                       "stage spec A,deltaE,completion[,y0]; repeatable");
  simulate->add_option("--applied-energy", applied_energy, "applied energy to check");
  simulate->add_option("--valid-lo", valid_lo, "validity interval lower edge");
  simulate->add_option("--valid-hi", valid_hi, "validity interval upper edge");

  // fit
  auto* fit = app.add_subcommand("fit", "estimate growth parameters from t,y CSV");
  fit->fallthrough();
  std::string fit_input, fit_model = "logistic";
  fit->add_option("--input", fit_input, "t,y CSV file")->required();
  fit->add_option("--model", fit_model, "logistic|exponential")
      ->check(CLI::IsMember({"logistic", "exponential"}));

  // detect
  auto* detect = app.add_subcommand("detect", "classify a trajectory as Stable/Bubble");
  detect->fallthrough();
  std::string detect_input;
  mf::BubbleConfig bubble_cfg;
  detect->add_option("--input", detect_input, "t,y CSV file")->required();
  detect->add_option("--disparity-threshold", bubble_cfg.disparity_threshold,
                     "relative forecast error that raises suspicion");
  detect->add_option("--aic-margin", bubble_cfg.aic_margin,
                     "required exponential AIC advantage");
  detect->add_option("--inflection-window", bubble_cfg.inflection_window_fraction,
                     "leading fraction of samples scanned for the inflection");

  // compete
  auto* compete = app.add_subcommand("compete", "integrate N interacting memes");
  compete->fallthrough();
  std::string system_path, y0_text;
  double c_tend = 100.0, c_step = 0.01;
  bool want_equilibrium = false;
  compete->add_option("--system", system_path, "system spec JSON")->required();
  compete->add_option("--y0", y0_text, "initial amplitudes, comma separated")->required();
  compete->add_option("--t-end", c_tend, "end time");
  compete->add_option("--step", c_step, "integration step");
  compete->add_flag("--equilibrium", want_equilibrium,
                    "also print the interior equilibrium (or 'none')");

  // energy
  auto* energy = app.add_subcommand("energy", "activation energy of a constituent set");
  energy->fallthrough();
  std::string energy_input;
  energy->add_option("--input", energy_input, "id,dof_index,energy CSV")->required();

  // features
  auto* features = app.add_subcommand("features", "entropy triage of dataset columns");
  features->fallthrough();
  std::string features_input;
  int bins = 16;
  double low = 0.05, high = 0.95;
  features->add_option("--input", features_input, "dataset CSV with a header row")->required();
  features->add_option("--bins", bins, "histogram bins")->check(CLI::Range(2, 1 << 20));
  features->add_option("--low", low, "redundant threshold on normalized entropy");
  features->add_option("--high", high, "random threshold on normalized entropy");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed())
      return run_simulate(opts, o_seed, o_affinity, affinity, o_delta, delta_e, o_y0, y0, o_eps,
                          epsilon, o_tend, t_end, o_step, step, o_noise, noise, stage_args,
                          applied_energy, valid_lo, valid_hi);
    if (fit->parsed()) return run_fit(opts, fit_input, fit_model);
    if (detect->parsed()) return run_detect(opts, detect_input, bubble_cfg);
    if (compete->parsed())
      return run_compete(opts, system_path, y0_text, c_tend, c_step, want_equilibrium);
    if (energy->parsed()) return run_energy(opts, energy_input);
    if (features->parsed()) return run_features(opts, features_input, bins, low, high);
  } catch (const mf::CsvError& e) {
    std::cerr << "csv error: " << e.what() << '\n';
    return kExitBadCsv;
  } catch (const mf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
