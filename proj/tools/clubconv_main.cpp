#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "clubconv/study.hpp"
#include "clubconv/synth.hpp"

namespace {

using namespace clubconv;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

// Built-in 4-club fixture spec used by --seed-study.
SyntheticSpec default_study_spec(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.club_sizes = {2, 8, 7, 11};
  spec.delta_levels = {1.9, 1.45, 1.0, 0.55};
  spec.alpha = {1.0, 1.0, 1.0, 1.0};
  spec.noise_sigma = {0.03};
  spec.mu.kind = MuKind::linear_trend;
  spec.mu.mu0 = 3.0;
  spec.mu.slope = 0.05;
  spec.n_periods = 27;
  spec.seed = seed;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Log-t convergence test and club clustering for panel indices"};
  app.set_config("--config", "", "Flat key=value config file mirroring the flags");

  StudySpec spec;
  std::string layout = "wide";
  std::string window;
  std::string trim_convention = "floor_rT_plus_1";
  std::string hac_lag = "auto";
  std::string ordering = "mean-last-half";
  std::string format = "text";
  std::vector<std::string> transitions;
  std::vector<std::string> transition_splits;
  double hp_lambda = 0.0;
  std::optional<std::uint64_t> seed_study;
  std::string synth_spec_path;
  std::string output_dir;

  app.add_option("--input", spec.input_path, "Panel CSV file");
  app.add_option("--layout", layout, "CSV layout: long or wide")
      ->check(CLI::IsMember({"long", "wide"}));
  app.add_option("--base-period", spec.base_period, "Base period label (default: window start)");
  app.add_option("--window", window, "Period window START:END");
  app.add_option("--category", spec.category, "Category label for the report");
  app.add_option("--trim", spec.cluster.logt.trim_fraction, "Trim fraction r in (0, 0.5]");
  app.add_option("--trim-convention", trim_convention, "floor_rT or floor_rT_plus_1")
      ->check(CLI::IsMember({"floor_rT", "floor_rT_plus_1"}));
  app.add_option("--hac-lag", hac_lag, "HAC lag: 'auto' or a fixed integer");
  app.add_option("--ordering", ordering, "Unit ordering rule")
      ->check(CLI::IsMember({"last-observation", "mean-last-half"}));
  app.add_option("--c-star", spec.cluster.sieve_threshold, "Sieve admission threshold c*");
  app.add_option("--critical", spec.cluster.logt.critical_value,
                 "One-sided critical value (default -1.65)");
  app.add_flag("--merge,!--no-merge", spec.run_merge, "Run the club-merging pass (default on)");
  app.add_option("--transition", transitions,
                 "Cross-club subset test A:B, comma-separated unit lists (repeatable)");
  app.add_option("--transition-split", transition_splits,
                 "Convenience splitter RANKA:RANKB:K (tail-k of club A vs head-k of club B)");
  app.add_option("--smooth-hp", hp_lambda, "Hodrick-Prescott pre-smoothing lambda (0 = off)");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--seed-study", seed_study,
                 "Run on a built-in synthetic fixture with this seed instead of --input");
  app.add_option("--synth-spec", synth_spec_path,
                 "Run on a synthetic panel generated from a key=value spec file");
  app.add_option("--output-dir", output_dir, "With --format csv, write one file per table here");

  CLI11_PARSE(app, argc, argv);

  try {
    spec.layout = layout == "long" ? CsvLayout::long_format : CsvLayout::wide_format;
    spec.cluster.logt.trim_convention = trim_convention == "floor_rT"
                                            ? TrimConvention::floor_rT
                                            : TrimConvention::floor_rT_plus_1;
    spec.cluster.ordering = ordering == "last-observation" ? OrderingRule::last_observation
                                                           : OrderingRule::mean_last_half;
    spec.cluster.logt.hp_lambda = hp_lambda;
    if (hac_lag != "auto") {
      spec.cluster.logt.hac.lag_rule = HacLagRule::fixed;
      spec.cluster.logt.hac.fixed_lag = std::stoi(hac_lag);
    }
    if (!window.empty()) {
      const auto colon = window.find(':');
      if (colon == std::string::npos)
        throw InputError("--window expects START:END, got " + window);
      spec.window = {window.substr(0, colon), window.substr(colon + 1)};
    }
    if (format == "json")
      spec.format = ReportFormat::json;
    else if (format == "csv")
      spec.format = ReportFormat::csv;

    for (const auto& t : transitions) {
      const auto colon = t.find(':');
      if (colon == std::string::npos)
        throw InputError("--transition expects A:B, got " + t);
      spec.transitions.push_back(
          {split_list(t.substr(0, colon)), split_list(t.substr(colon + 1))});
    }

    AnalysisReport report;
    if (seed_study || !synth_spec_path.empty()) {
      SyntheticSpec synth;
      if (!synth_spec_path.empty()) {
        std::ifstream in(synth_spec_path);
        if (!in) throw InputError("cannot open synth spec: " + synth_spec_path);
        std::stringstream buf;
        buf << in.rdbuf();
        synth = SyntheticSpec::from_key_values(buf.str());
        if (seed_study) synth.seed = *seed_study;
      } else {
        synth = default_study_spec(*seed_study);
      }
      report = run_study_on_panel(generate_panel(synth).panel, spec);
    } else {
      if (spec.input_path.empty())
        throw InputError("either --input, --seed-study, or --synth-spec is required");
      if (!transition_splits.empty()) {
        // Splits need the club memberships first; run without them, derive the
        // subsets, then rerun the transition tests on the final report.
        AnalysisReport base = run_study(spec);
        for (const auto& s : transition_splits) {
          int ra = 0, rb = 0, k = 0;
          if (std::sscanf(s.c_str(), "%d:%d:%d", &ra, &rb, &k) != 3 || k < 1)
            throw InputError("--transition-split expects RANKA:RANKB:K, got " + s);
          auto find_club = [&](int rank) -> const Club& {
            for (const auto& c : base.clubs)
              if (c.rank == rank) return c;
            throw InputError("no club with rank " + std::to_string(rank));
          };
          const auto& a = find_club(ra).member_ids;
          const auto& b = find_club(rb).member_ids;
          const int ka = std::min<int>(k, static_cast<int>(a.size()));
          const int kb = std::min<int>(k, static_cast<int>(b.size()));
          spec.transitions.push_back(
              {{a.end() - ka, a.end()}, {b.begin(), b.begin() + kb}});
        }
      }
      report = run_study(spec);
    }

    if (spec.format == ReportFormat::csv && !output_dir.empty()) {
      for (const auto& [name, body] : emit_report_csv_tables(report)) {
        std::ofstream out(output_dir + "/" + name + ".csv", std::ios::binary);
        if (!out) throw InputError("cannot write to " + output_dir + "/" + name + ".csv");
        out << body;
      }
    } else {
      std::cout << emit_report(report, spec.format);
    }
    return 0;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
