// coxsr: simulate, calibrate and analyse doubly stochastic Poisson trade
// arrivals. Failures print a single line `coxsr: error[<stage>]: <message>`.
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "coxsr/estimation.hpp"
#include "coxsr/ingest.hpp"
#include "coxsr/model.hpp"
#include "coxsr/simulator.hpp"

namespace fs = std::filesystem;
using namespace coxsr;

namespace {

/// Thrown for failures that should be reported under a named stage.
struct CliFailure {
  std::string stage;
  std::string message;
};

struct ParamFlags {
  std::optional<double> r0, a_s, sigma, tau_c, f_s;

  void add(CLI::App& app) {
    app.add_option("--r0", r0, "equilibrium arrival rate r0 [events/s]");
    app.add_option("--as", a_s, "signal amplitude A_s [dimensionless]");
    app.add_option("--sigma", sigma, "noise rms sigma [dimensionless]");
    app.add_option("--tauc", tau_c, "noise correlation time tau_c [s]");
    app.add_option("--fs", f_s, "signal frequency f_s [Hz] (default 1/session-length)");
  }

  bool any_rate_flag() const { return r0 || a_s || sigma || tau_c; }

  ModelParams resolve(const SessionSpec& session, ModelParams base = {}) const {
    base.f_s = 1.0 / session.session_length;
    if (r0) base.r0 = *r0;
    if (a_s) base.a_s = *a_s;
    if (sigma) base.sigma = *sigma;
    if (tau_c) base.tau_c = *tau_c;
    if (f_s) base.f_s = *f_s;
    try {
      base.validate();
    } catch (const InvalidArgument& e) {
      throw CliFailure{"config", e.what()};
    }
    return base;
  }
};

struct SessionFlags {
  std::optional<int> days, bins_per_day;
  std::optional<double> session_length, warmup, bin_width;
  bool restart_noise = false;

  void add(CLI::App& app, bool with_restart) {
    app.add_option("--days", days, "trading days [count] (default 21)");
    app.add_option("--session-length", session_length, "session length [s] (default 23400)");
    app.add_option("--warmup", warmup, "seconds skipped after the open [s] (default 300)");
    app.add_option("--bin-width", bin_width, "bin width [s] (default 120)");
    app.add_option("--bins-per-day", bins_per_day, "bins per day [count] (default 192)");
    if (with_restart) {
      app.add_flag("--restart-noise", restart_noise,
                   "restart the rate noise from its stationary law every day");
    }
  }

  SessionSpec resolve(SessionSpec base = {}) const {
    if (days) base.days = *days;
    if (session_length) base.session_length = *session_length;
    if (warmup) base.warmup_skip = *warmup;
    if (bin_width) base.bin_width = *bin_width;
    if (bins_per_day) base.bins_per_day = *bins_per_day;
    if (restart_noise) base.restart_noise_each_day = true;
    try {
      base.validate();
    } catch (const InvalidArgument& e) {
      throw CliFailure{"config", e.what()};
    }
    return base;
  }
};

void print_params(const ModelParams& p) {
  std::cout << "r0=" << p.r0 << " per_s  a_s=" << p.a_s << "  sigma=" << p.sigma
            << "  tau_c=" << p.tau_c << " s  f_s=" << p.f_s << " Hz\n";
}

std::vector<TickRecord> load_ticks(const fs::path& input, const std::string& symbol,
                                   double session_length) {
  try {
    return parse_ticks(input, ParseOptions{symbol, session_length});
  } catch (const ParseError& e) {
    throw CliFailure{"parse", e.what()};
  } catch (const IoError& e) {
    throw CliFailure{"io", e.what()};
  }
}

// Session of a tick file: sidecar metadata if present, else days from the data.
SessionSpec session_for_input(const fs::path& input, const SessionFlags& flags,
                              const std::vector<TickRecord>* ticks) {
  SessionSpec base;
  const fs::path meta = meta_path_for(input);
  if (fs::exists(meta)) {
    try {
      base = read_meta(meta).session;
    } catch (const IoError& e) {
      throw CliFailure{"io", e.what()};
    }
  } else if (ticks && !ticks->empty()) {
    base.days = ticks->back().day_index + 1;
  }
  return flags.resolve(base);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Doubly stochastic Poisson trade-arrival simulation and calibration"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "write a synthetic tick dataset and metadata");
  ParamFlags sim_params;
  SessionFlags sim_session;
  std::uint64_t sim_seed = 0;
  std::string sim_output, sim_symbol = "SYN";
  sim_params.add(*simulate);
  sim_session.add(*simulate, true);
  simulate->add_option("--seed", sim_seed, "random seed [integer]")->required();
  simulate->add_option("-o,--output", sim_output, "tick CSV path")->required();
  simulate->add_option("--symbol", sim_symbol, "symbol written to every record");

  // fit
  auto* fit = app.add_subcommand("fit", "calibrate the model from a tick file");
  std::string fit_input, fit_output, fit_symbol;
  SessionFlags fit_session;
  std::uint64_t fit_seed = 0;
  int fit_replicas = 4, fit_tau_count = 25, fit_rounds = 4;
  double fit_tau_min = 0.5, fit_tau_max = 60.0, fit_sigma_max = 3.0;
  std::optional<Eigen::Index> fit_max_lag;
  fit->add_option("-i,--input", fit_input, "tick CSV path")->required();
  fit->add_option("-o,--output", fit_output, "report JSON path");
  fit->add_option("--symbol", fit_symbol, "only use records with this symbol");
  fit_session.add(*fit, false);
  fit->add_option("--seed", fit_seed, "Monte-Carlo seed [integer]")->required();
  fit->add_option("--replicas", fit_replicas, "Monte-Carlo replicas per evaluation [count]")
      ->check(CLI::PositiveNumber);
  fit->add_option("--tau-min", fit_tau_min, "smallest tau_c candidate [s]");
  fit->add_option("--tau-max", fit_tau_max, "largest tau_c candidate [s]");
  fit->add_option("--tau-count", fit_tau_count, "log-spaced tau_c candidates [count]");
  fit->add_option("--acf-max-lag", fit_max_lag,
                  "autocorrelation lags used for matching [s] (default max(60, 5 tau-max))");
  fit->add_option("--sigma-max", fit_sigma_max, "upper bound of the sigma search [dimensionless]");
  fit->add_option("--max-rounds", fit_rounds, "profile search steps over the tau_c grid [count]");

  // snr
  auto* snr_cmd = app.add_subcommand("snr", "write the normalized SNR curve");
  ParamFlags snr_params;
  std::string snr_report, snr_output;
  double snr_sigma_max = 3.0, snr_step = 0.01;
  snr_params.add(*snr_cmd);
  snr_cmd->add_option("--report", snr_report, "fit report JSON supplying the parameters");
  snr_cmd->add_option("--sigma-max", snr_sigma_max, "largest sigma of the grid [dimensionless]");
  snr_cmd->add_option("--sigma-step", snr_step, "sigma grid step [dimensionless]");
  snr_cmd->add_option("-o,--output", snr_output, "curve CSV path")->required();

  // acf
  auto* acf_cmd = app.add_subcommand("acf", "write empirical and/or Monte-Carlo autocorrelation");
  ParamFlags acf_params;
  SessionFlags acf_session;
  std::string acf_input, acf_output, acf_model_output, acf_symbol;
  std::optional<std::uint64_t> acf_seed;
  int acf_replicas = 10;
  Eigen::Index acf_max_lag = 100;
  acf_params.add(*acf_cmd);
  acf_session.add(*acf_cmd, true);
  acf_cmd->add_option("-i,--input", acf_input, "tick CSV path (empirical curve)");
  acf_cmd->add_option("-o,--output", acf_output, "empirical curve CSV path");
  acf_cmd->add_option("--model-output", acf_model_output, "Monte-Carlo curve CSV path");
  acf_cmd->add_option("--symbol", acf_symbol, "only use records with this symbol");
  acf_cmd->add_option("--seed", acf_seed, "Monte-Carlo seed [integer]");
  acf_cmd->add_option("--replicas", acf_replicas, "Monte-Carlo replicas [count]")
      ->check(CLI::PositiveNumber);
  acf_cmd->add_option("--max-lag", acf_max_lag, "largest lag [s]")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const SessionSpec session = sim_session.resolve();
      const ModelParams params = sim_params.resolve(session);
      std::size_t ticks = 0;
      try {
        ticks = synth_dataset(params, session, sim_seed, sim_output, sim_symbol);
      } catch (const IoError& e) {
        throw CliFailure{"io", e.what()};
      }
      const double seconds = session.session_length * session.days;
      std::cout << "wrote " << sim_output << " and " << meta_path_for(sim_output).string() << '\n'
                << "total_trades=" << ticks << " mean_rate=" << ticks / seconds << " per_s\n";
    } else if (fit->parsed()) {
      // Parse with the widest plausible day first; the session check follows.
      const auto ticks = load_ticks(fit_input, fit_symbol,
                                    fit_session.session_length.value_or(
                                        SessionSpec{}.session_length));
      const SessionSpec session = session_for_input(fit_input, fit_session, &ticks);
      FitConfig config;
      try {
        config.tau_grid = log_spaced_grid(fit_tau_min, fit_tau_max, fit_tau_count);
      } catch (const InvalidArgument& e) {
        throw CliFailure{"config", e.what()};
      }
      config.mc = McConfig{fit_replicas, fit_seed};
      config.acf_max_lag = fit_max_lag;
      config.sigma_upper = fit_sigma_max;
      config.max_rounds = fit_rounds;
      config.input_path = fit_input;
      const FitReport report = fit_all(ticks, session, config);
      if (!fit_output.empty()) write_report(report, fit_output);
      print_params(report.params);
      std::cout << "tau_c*r0=" << report.sr.product
                << " sr_condition=" << (report.sr.condition ? "true" : "false")
                << " sr_curve=" << (report.sr.curve_detected ? "true" : "false") << '\n'
                << "verdict=" << (report.sr.condition ? "SR" : "no-SR") << '\n';
    } else if (snr_cmd->parsed()) {
      ModelParams params;
      std::optional<double> current_sigma;
      if (!snr_report.empty()) {
        FitReport report;
        try {
          report = read_report(snr_report);
        } catch (const IoError& e) {
          throw CliFailure{"io", e.what()};
        }
        params = snr_params.resolve(report.provenance.session, report.params);
        current_sigma = params.sigma;
      } else {
        if (!snr_params.r0 || !snr_params.a_s || !snr_params.tau_c) {
          throw CliFailure{"config", "snr needs --report or all of --r0 --as --tauc"};
        }
        params = snr_params.resolve(SessionSpec{});
        if (snr_params.sigma) current_sigma = *snr_params.sigma;
      }
      SnrCurve curve;
      try {
        curve = snr_curve(params, make_sigma_grid(snr_sigma_max, snr_step));
      } catch (const InvalidArgument& e) {
        throw CliFailure{"grid", e.what()};
      }
      write_curve(curve, fs::path(snr_output));
      std::cout << "argmax_sigma=";
      if (curve.argmax_sigma) std::cout << *curve.argmax_sigma; else std::cout << "none";
      std::cout << " peak_gain=" << curve.peak_gain << '\n'
                << "verdict=" << (curve.sr_detected ? "SR" : "no-SR") << '\n';
      if (current_sigma) {
        std::cout << "current_sigma=" << *current_sigma << " normalized_snr="
                  << snr(params, *current_sigma) / snr(params, 0.0) << '\n';
      }
    } else if (acf_cmd->parsed()) {
      if (acf_input.empty() && acf_model_output.empty()) {
        throw CliFailure{"config", "acf needs --input and/or --model-output"};
      }
      SessionSpec session = acf_session.resolve();
      if (!acf_input.empty()) {
        const auto ticks = load_ticks(acf_input, acf_symbol, session.session_length);
        session = session_for_input(acf_input, acf_session, &ticks);
        if (acf_output.empty()) throw CliFailure{"config", "--input needs -o/--output"};
        CountSeries series;
        try {
          series = count_series_from_ticks(ticks, session);
        } catch (const InvalidArgument& e) {
          throw CliFailure{"binning", e.what()};
        }
        const AutocorrFn acf = empirical_autocorr(series, acf_max_lag);
        write_curve(acf, fs::path(acf_output));
        std::cout << "empirical: lags=" << acf_max_lag << " noise_floor=" << acf.noise_floor
                  << " lag1=" << acf.values(0) << '\n';
      }
      if (!acf_model_output.empty()) {
        if (!acf_seed) throw CliFailure{"config", "--model-output needs --seed"};
        if (!acf_params.any_rate_flag()) {
          throw CliFailure{"config", "--model-output needs model parameters"};
        }
        const ModelParams params = acf_params.resolve(session);
        const AutocorrFn acf = mc_autocorr(params, session, acf_replicas, acf_max_lag, *acf_seed);
        write_curve(acf, fs::path(acf_model_output));
        std::cout << "model: replicas=" << acf_replicas << " noise_floor=" << acf.noise_floor
                  << " lag1=" << acf.values(0) << '\n';
      }
    }
  } catch (const CliFailure& f) {
    std::cerr << "coxsr: error[" << f.stage << "]: " << f.message << '\n';
    return 1;
  } catch (const EstimationError& e) {
    std::string_view message = e.what();
    if (message.starts_with(e.stage() + ": ")) message.remove_prefix(e.stage().size() + 2);
    std::cerr << "coxsr: error[" << e.stage() << "]: " << message << '\n';
    return 1;
  } catch (const IoError& e) {
    std::cerr << "coxsr: error[io]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "coxsr: error[internal]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
