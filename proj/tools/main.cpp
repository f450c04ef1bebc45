// bellsim command-line interface: run, sweep, analyze.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "bellsim/errors.hpp"
#include "bellsim/event_io.hpp"
#include "bellsim/runner.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
};

std::string joined(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw bellsim::AnalysisError("cannot create output directory " + dir);
}

void print_run_summary(const bellsim::RunReport& rep) {
  std::printf("scenario        %s\n", rep.scenario.c_str());
  std::printf("matched pairs   %lld  (unmatched %lld / %lld)\n",
              static_cast<long long>(rep.matched_pairs),
              static_cast<long long>(rep.tally.unmatched_a),
              static_cast<long long>(rep.tally.unmatched_b));
  std::printf("efficiency      %.6f / %.6f\n", rep.chsh.efficiency.alice,
              rep.chsh.efficiency.bob);
  std::printf("S               %.6f +/- %.6f  (%s)\n", rep.chsh.S, rep.chsh.dS,
              bellsim::to_string(rep.chsh.classification));
  if (rep.monitor_alarm) {
    std::printf("monitor alarm   %s\n", *rep.monitor_alarm ? "yes" : "no");
  }
}

int cmd_run(const CommonOpts& opts, bool emit_events) {
  bellsim::RunConfig cfg = bellsim::load_config_file(opts.config_path);
  if (opts.seed_given) cfg.seed = opts.seed;
  ensure_out_dir(opts.out_dir);

  bellsim::EventStream alice;
  bellsim::EventStream bob;
  const bellsim::RunReport rep =
      bellsim::run(cfg, emit_events ? &alice : nullptr, emit_events ? &bob : nullptr);

  bellsim::write_text_file(joined(opts.out_dir, "report.json"),
                           bellsim::report_json_string(rep));
  if (rep.tally.has_sent_matrix) {
    bellsim::write_text_file(joined(opts.out_dir, "fig4_matrix.csv"),
                             bellsim::sent_matrix_csv_string(rep.tally));
  }
  if (emit_events) {
    bellsim::write_event_csv_file(joined(opts.out_dir, "alice_events.csv"), alice);
    bellsim::write_event_csv_file(joined(opts.out_dir, "bob_events.csv"), bob);
  }
  print_run_summary(rep);
  std::printf("report          %s\n", joined(opts.out_dir, "report.json").c_str());
  return 0;
}

int cmd_sweep(const CommonOpts& opts) {
  bellsim::RunConfig cfg = bellsim::load_config_file(opts.config_path);
  if (opts.seed_given) cfg.seed = opts.seed;
  ensure_out_dir(opts.out_dir);

  const bellsim::SweepReport rep = bellsim::sweep(cfg);
  bellsim::write_text_file(joined(opts.out_dir, "report.json"),
                           bellsim::report_json_string(rep));
  bellsim::write_text_file(joined(opts.out_dir, "fig3_sweep.csv"),
                           bellsim::sweep_csv_string(rep.points));

  std::printf("%9s %13s %13s %10s\n", "q", "S_programmed", "S_observed", "dS");
  for (const bellsim::SweepPoint& p : rep.points) {
    std::printf("%9.4f %13.6f %13.6f %10.6f\n", p.q, p.S_programmed, p.S_observed, p.dS);
  }
  std::printf("report          %s\n", joined(opts.out_dir, "report.json").c_str());
  return 0;
}

int cmd_analyze(const std::string& alice_path, const std::string& bob_path,
                std::int64_t window_ns, const std::string& out_dir) {
  const bellsim::EventStream alice = bellsim::read_event_csv_file(alice_path);
  const bellsim::EventStream bob = bellsim::read_event_csv_file(bob_path);
  ensure_out_dir(out_dir);

  const bellsim::RunReport rep = bellsim::analyze(alice, bob, window_ns);
  bellsim::write_text_file(joined(out_dir, "report.json"),
                           bellsim::report_json_string(rep));
  print_run_summary(rep);
  std::printf("report          %s\n", joined(out_dir, "report.json").c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo CHSH Bell tests with genuine pairs, an intercept-resend "
               "eavesdropper, and detector-control faked states"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  bool emit_events = false;
  CLI::App* run_cmd = app.add_subcommand("run", "execute one scenario");
  run_cmd->add_option("--config", run_opts.config_path, "run-config JSON file")
      ->required();
  run_cmd->add_option("--seed", run_opts.seed, "override the config seed");
  run_cmd->add_option("--out", run_opts.out_dir, "output directory (default .)");
  run_cmd->add_flag("--emit-events", emit_events, "write alice/bob event CSV files");

  CommonOpts sweep_opts;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "run once per q value");
  sweep_cmd->add_option("--config", sweep_opts.config_path, "run-config JSON file")
      ->required();
  sweep_cmd->add_option("--seed", sweep_opts.seed, "override the config seed");
  sweep_cmd->add_option("--out", sweep_opts.out_dir, "output directory (default .)");

  std::string alice_path;
  std::string bob_path;
  std::int64_t window_ns = 5;
  std::string analyze_out = ".";
  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "offline pipeline over exported event streams");
  analyze_cmd->add_option("--alice", alice_path, "alice event CSV")->required();
  analyze_cmd->add_option("--bob", bob_path, "bob event CSV")->required();
  analyze_cmd->add_option("--window-ns", window_ns, "coincidence window (default 5)");
  analyze_cmd->add_option("--out", analyze_out, "output directory (default .)");

  try {
    app.parse(argc, argv);
    run_opts.seed_given = run_cmd->count("--seed") > 0;
    sweep_opts.seed_given = sweep_cmd->count("--seed") > 0;

    if (*run_cmd) return cmd_run(run_opts, emit_events);
    if (*sweep_cmd) return cmd_sweep(sweep_opts);
    if (*analyze_cmd) return cmd_analyze(alice_path, bob_path, window_ns, analyze_out);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const bellsim::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const bellsim::AnalysisError& e) {
    std::fprintf(stderr, "analysis error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
