// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "clubconv/clubs.hpp"
#include "clubconv/csv_io.hpp"
#include "clubconv/report.hpp"
#include "clubconv/study.hpp"
#include "clubconv/synth.hpp"

using namespace clubconv;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report_line(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!pass) ++failures;
}

void waived_line(int criterion, const std::string& detail) {
  std::printf("WAIVED criterion %d: %s\n", criterion, detail.c_str());
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Panel screened_log(const Panel& raw) {
  return screen_degenerate_periods(to_log(rebase(raw, raw.period_labels.front()))).first;
}

std::string eea_panel_path() {
  if (const char* env = std::getenv("CLUBCONV_EEA_PANEL")) return env;
  const std::string fallback = std::string(CLUBCONV_TEST_DIR) + "/../data/eea_ghg_1990_2017.csv";
  std::ifstream probe(fallback);
  return probe ? fallback : "";
}

SyntheticSpec four_club_spec(std::uint64_t seed) {
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

// --- criteria 1 and 2: published-study reproduction, conditional on a data vintage ---

void criterion_1_and_2() {
  const std::string path = eea_panel_path();
  if (path.empty()) {
    waived_line(1, "no EEA GHG 1990-2017 panel supplied (set CLUBCONV_EEA_PANEL); "
                   "synthetic criteria 3-8 cover the pipeline instead");
    waived_line(2, "same waiver as criterion 1");
    return;
  }
  const auto t0 = Clock::now();
  auto raw = read_panel_csv(path, CsvLayout::wide_format);
  auto logp = screened_log(window_slice(raw, "1990", "2017"));
  auto full = logt_test(logp, LogTConfig{});
  const bool c1 = full.t_stat < -1.65 && std::fabs(full.t_stat - (-13.953)) <= 1.5 &&
                  std::fabs(full.b_hat - (-0.504)) <= 0.15 && seconds_since(t0) < 1.0;
  {
    std::ostringstream os;
    os << "full-panel t=" << full.t_stat << " (target -13.953 +-1.5), b=" << full.b_hat
       << " (target -0.504 +-0.15), " << seconds_since(t0) << "s";
    report_line(1, c1, os.str());
  }

  static const std::map<std::string, int> table1 = {
      {"CY", 1}, {"MT", 1},
      {"PT", 2}, {"ES", 2}, {"IE", 2}, {"AT", 2}, {"SI", 2}, {"LU", 2}, {"PL", 2}, {"EE", 2},
      {"EL", 3}, {"NL", 3}, {"FR", 3}, {"IT", 3}, {"FI", 3}, {"HR", 3}, {"BG", 3},
      {"BE", 4}, {"SE", 4}, {"DE", 4}, {"DK", 4}, {"HU", 4}, {"CZ", 4}, {"UK", 4},
      {"SK", 4}, {"RO", 4}, {"LV", 4}, {"LT", 4}};
  ClusterConfig cfg;
  auto part = cluster_all(logp, cfg);
  int agree = 0;
  for (const auto& club : part.clubs)
    for (const auto& m : club.member_ids) {
      auto it = table1.find(m);
      if (it != table1.end() && it->second == club.rank) ++agree;
    }
  auto [merged, tests] = merge_clubs(part, logp, cfg);
  bool merge_pattern = false;
  if (part.clubs.size() == 4 && tests.size() >= 3) {
    bool m12 = false, m23 = false, m34 = false;
    for (const auto& t : tests) {
      if (t.rank_low == 1 && t.rank_high == 2) m12 = t.merged;
      if (t.rank_low == 2 && t.rank_high == 3) m23 = t.merged;
      if (t.rank_low == 3 && t.rank_high == 4) m34 = t.merged;
    }
    merge_pattern = !m12 && m23 && !m34;
  }
  const bool c2 = part.clubs.size() == 4 && agree >= 25 && merge_pattern;
  {
    std::ostringstream os;
    os << part.clubs.size() << " clubs, " << agree << "/28 memberships agree (need >= 25), "
       << "merge pattern 2+3 only: " << (merge_pattern ? "yes" : "no");
    report_line(2, c2, os.str());
  }
}

// --- criterion 3: oracle equivalence -----------------------------------

std::pair<double, double> ols_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  return {(sy * sxx - sx * sxy) / det, (n * sxy - sx * sy) / det};
}

double hac_oracle(const std::vector<double>& e, const std::vector<double>& x, int lag) {
  const int n = static_cast<int>(x.size());
  double mx = 0;
  for (double v : x) mx += v;
  mx /= n;
  double sxx = 0;
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    u[i] = (x[i] - mx) * e[i];
  }
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(i - j) <= lag)
        s += (1.0 - static_cast<double>(std::abs(i - j)) / (lag + 1)) * u[i] * u[j];
  return std::sqrt(s) / sxx;
}

void criterion_3() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(303);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<int> len(8, 40);

  double worst_ols = 0, worst_hac = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = len(rng);
    std::vector<double> x(n), y(n);
    const double a = coef(rng), b = coef(rng);
    for (int i = 0; i < n; ++i) {
      x[i] = coef(rng) + 0.1 * i;
      y[i] = a + b * x[i] + noise(rng);
    }
    auto fit = ols_fit(x, y);
    auto [oa, ob] = ols_oracle(x, y);
    worst_ols = std::max({worst_ols, std::fabs(fit.a_hat - oa), std::fabs(fit.b_hat - ob)});

    std::uniform_int_distribution<int> lag_pick(0, n / 3);
    const int lag = lag_pick(rng);
    const double se = hac_slope_se(fit.residuals, x, HacConfig{HacLagRule::fixed, lag});
    worst_hac = std::max(worst_hac, std::fabs(se - hac_oracle(fit.residuals, x, lag)));
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << "max |ols - oracle| = " << worst_ols << ", max |hac - oracle| = " << worst_hac
     << " (tol 1e-10), " << dt << "s (limit 5)";
  report_line(3, worst_ols < 1e-10 && worst_hac < 1e-10 && dt < 5.0, os.str());
}

// --- criteria 4 and 5: test size and power ------------------------------

void criterion_4() {
  const auto t0 = Clock::now();
  int rejections = 0;
  const int seeds = 500;
  for (int s = 0; s < seeds; ++s) {
    SyntheticSpec spec;
    spec.club_sizes = {28};
    spec.delta_levels = {1.0};
    spec.alpha = {0.5};
    spec.noise_sigma = {0.02};
    spec.n_periods = 27;
    spec.seed = 40000 + s;
    auto logp = to_log(generate_panel(spec).panel);
    if (logt_test(logp, LogTConfig{}).t_stat < -1.65) ++rejections;
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << rejections << "/" << seeds << " rejections on convergent panels (limit 10%), " << dt
     << "s (limit 60)";
  report_line(4, rejections * 10 <= seeds && dt < 60.0, os.str());
}

void criterion_5() {
  const auto t0 = Clock::now();
  int rejections = 0;
  const int seeds = 500;
  for (int s = 0; s < seeds; ++s) {
    SyntheticSpec spec;
    spec.club_sizes = {14, 14};
    spec.delta_levels = {1.0, 2.0};
    spec.alpha = {0.0, 0.0};
    spec.noise_sigma = {0.02};
    spec.n_periods = 27;
    spec.seed = 50000 + s;
    auto logp = to_log(generate_panel(spec).panel);
    if (logt_test(logp, LogTConfig{}).t_stat < -1.65) ++rejections;
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << rejections << "/" << seeds << " rejections on divergent panels (need >= 95%), " << dt
     << "s (limit 60)";
  report_line(5, rejections * 100 >= seeds * 95 && dt < 60.0, os.str());
}

// --- criterion 6: club recovery -----------------------------------------

void criterion_6() {
  const auto t0 = Clock::now();
  const int seeds = 200;
  int exact = 0;
  long correct_units = 0, total_units = 0;
  for (int s = 0; s < seeds; ++s) {
    auto spec = four_club_spec(60000 + s);
    auto synth = generate_panel(spec);
    auto logp = to_log(synth.panel);
    ClusterConfig cfg;
    auto part = cluster_all(logp, cfg);

    // map each true club to the found club holding most of its members
    std::map<std::string, int> found;  // unit -> found club index
    for (std::size_t c = 0; c < part.clubs.size(); ++c)
      for (const auto& m : part.clubs[c].member_ids) found[m] = static_cast<int>(c);

    const int n = logp.n_units();
    bool all_ok = part.divergent.empty() && part.clubs.size() == spec.club_sizes.size();
    int this_correct = 0;
    std::map<int, std::map<int, int>> votes;  // true club -> found club -> count
    for (int i = 0; i < n; ++i) {
      auto it = found.find(logp.unit_ids[i]);
      if (it != found.end()) votes[synth.membership[i]][it->second]++;
    }
    std::map<int, int> best;  // true club -> majority found club
    for (auto& [truth, counts] : votes) {
      int arg = -1, most = -1;
      for (auto& [fc, c] : counts)
        if (c > most) {
          most = c;
          arg = fc;
        }
      best[truth] = arg;
    }
    for (int i = 0; i < n; ++i) {
      auto it = found.find(logp.unit_ids[i]);
      if (it != found.end() && best.count(synth.membership[i]) &&
          best[synth.membership[i]] == it->second)
        ++this_correct;
      else
        all_ok = false;
    }
    // exact recovery also requires the found clubs to be distinct
    std::set<int> distinct;
    for (auto& [_, fc] : best) distinct.insert(fc);
    if (distinct.size() != spec.club_sizes.size()) all_ok = false;

    if (all_ok) ++exact;
    correct_units += this_correct;
    total_units += n;
  }
  const double dt = seconds_since(t0);
  const double exact_rate = 100.0 * exact / seeds;
  const double unit_rate = 100.0 * correct_units / total_units;
  std::ostringstream os;
  os << "exact recovery " << exact_rate << "% (need >= 90), unit accuracy " << unit_rate
     << "% (need >= 99), " << dt << "s (limit 120)";
  report_line(6, exact_rate >= 90.0 && unit_rate >= 99.0 && dt < 120.0, os.str());
}

// --- criterion 7: invariant suite ---------------------------------------

void criterion_7() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> level(50.0, 150.0);
  std::normal_distribution<double> step(0.0, 0.05);
  std::uniform_int_distribution<int> n_pick(4, 16), t_pick(10, 30);

  bool ok = true;
  std::string first_violation;
  auto violate = [&](const std::string& what, int panel_idx) {
    ok = false;
    if (first_violation.empty())
      first_violation = what + " (panel " + std::to_string(panel_idx) + ")";
  };

  for (int rep = 0; rep < 500 && ok; ++rep) {
    const int n = n_pick(rng), t_len = t_pick(rng);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n) * t_len);
    std::vector<std::string> units, periods;
    for (int i = 0; i < n; ++i) units.push_back("U" + std::to_string(100 + i));
    for (int k = 0; k < t_len; ++k) periods.push_back(std::to_string(1990 + k));
    for (int i = 0; i < n; ++i) {
      double v = level(rng);
      for (int k = 0; k < t_len; ++k) {
        v *= std::exp(step(rng));
        values.push_back(v);
      }
    }
    auto logp = to_log(build_panel(units, periods, values));

    auto paths = compute_transition_paths(logp);
    for (int t = 0; t < paths.n_periods; ++t) {
      double sum = 0;
      for (int i = 0; i < paths.n_units; ++i) sum += paths.h_at(i, t);
      if (std::fabs(sum / paths.n_units - 1.0) > 1e-10) violate("mean-one identity", rep);
      if (paths.H[t] < 0) violate("H_t >= 0", rep);
    }

    ClusterConfig cfg;
    auto part = cluster_all(logp, cfg);
    std::set<std::string> seen;
    for (const auto& club : part.clubs) {
      if (club.logt.t_stat < cfg.logt.critical_value) violate("club validity", rep);
      for (const auto& m : club.member_ids)
        if (!seen.insert(m).second) violate("partition exactness (overlap)", rep);
    }
    for (const auto& d : part.divergent)
      if (!seen.insert(d).second) violate("partition exactness (overlap)", rep);
    if (seen.size() != static_cast<std::size_t>(n)) violate("partition exactness (omission)", rep);

    auto [merged, tests] = merge_clubs(part, logp, cfg);
    for (std::size_t i = 0; i + 1 < merged.clubs.size(); ++i) {
      std::vector<std::string> joint = merged.clubs[i].member_ids;
      joint.insert(joint.end(), merged.clubs[i + 1].member_ids.begin(),
                   merged.clubs[i + 1].member_ids.end());
      if (logt_test(subpanel(logp, joint), cfg.logt).t_stat >= cfg.logt.critical_value)
        violate("merge soundness", rep);
    }

    // scale invariance of the log-t statistic
    auto base = logt_test(logp, cfg.logt);
    Panel scaled = logp;
    for (auto& v : scaled.values) v *= 2.5;
    auto res = logt_test(scaled, cfg.logt);
    if (std::fabs(res.t_stat - base.t_stat) > 1e-9) violate("scale invariance", rep);

    // determinism
    auto part2 = cluster_all(logp, cfg);
    if (part2.divergent != part.divergent || part2.clubs.size() != part.clubs.size())
      violate("determinism", rep);
    for (std::size_t i = 0; ok && i < part.clubs.size(); ++i)
      if (part2.clubs[i].member_ids != part.clubs[i].member_ids ||
          part2.clubs[i].logt.t_stat != part.clubs[i].logt.t_stat)
        violate("determinism", rep);
  }
  const double dt = seconds_since(t0);
  std::ostringstream os;
  if (ok)
    os << "all invariants hold on 500 random panels, " << dt << "s (limit 120)";
  else
    os << "violation: " << first_violation;
  report_line(7, ok && dt < 120.0, os.str());
}

// --- criterion 8: degenerate handling -----------------------------------

void criterion_8() {
  bool ok = true;
  std::string detail;

  // 1990-based index: every unit at 100 in the base year
  std::mt19937_64 rng(808);
  std::normal_distribution<double> step(0.0, 0.05);
  const int n = 8, t_len = 28;
  std::vector<std::string> units, periods;
  for (int i = 0; i < n; ++i) units.push_back("U" + std::to_string(10 + i));
  for (int k = 0; k < t_len; ++k) periods.push_back(std::to_string(1990 + k));
  std::vector<double> values;
  for (int i = 0; i < n; ++i) {
    double v = 100.0;
    values.push_back(v);
    for (int k = 1; k < t_len; ++k) {
      v *= std::exp(step(rng));
      values.push_back(v);
    }
  }
  auto raw = build_panel(units, periods, values);
  auto [screened, report] = screen_degenerate_periods(to_log(rebase(raw, "1990")));
  if (report.dropped_periods != std::vector<std::string>{"1990"} ||
      screened.period_labels.front() != "1991" || screened.period_labels.back() != "2017") {
    ok = false;
    detail = "1990 base period was not the (only) dropped period";
  } else if (report.reasons[0] != DropReason::base_period_degenerate) {
    ok = false;
    detail = "drop reason not base_period_degenerate";
  }

  bool threw = false;
  try {
    auto constant = build_panel({"A", "B", "C"}, {"2000", "2001", "2002", "2003", "2004"},
                                std::vector<double>(15, 100.0));
    screen_degenerate_periods(to_log(constant));
  } catch (const AllPeriodsDegenerate&) {
    threw = true;
  }
  if (!threw) {
    ok = false;
    detail = "all-constant panel did not raise AllPeriodsDegenerate";
  }
  if (ok) detail = "base-period drop reproduces the 1990->1991 shift; constant panel raises";
  report_line(8, ok, detail);
}

// --- criterion 9: CLI golden files --------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing: " + path + ">";
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_9() {
  const std::string dir = std::string(CLUBCONV_TEST_DIR) + "/fixtures";
  auto raw = read_panel_csv(dir + "/synthetic_panel.csv", CsvLayout::wide_format);
  StudySpec spec;
  spec.category = "synthetic";

  auto r1 = run_study_on_panel(raw, spec);
  auto r2 = run_study_on_panel(raw, spec);
  const std::string text = emit_report(r1, ReportFormat::text);
  const std::string json = emit_report(r1, ReportFormat::json);
  const bool repeat_ok = text == emit_report(r2, ReportFormat::text) &&
                         json == emit_report(r2, ReportFormat::json);
  const bool golden_ok =
      text == slurp(dir + "/golden_report.txt") && json == slurp(dir + "/golden_report.json");
  std::ostringstream os;
  os << "repeat runs byte-identical: " << (repeat_ok ? "yes" : "no")
     << ", matches committed golden files: " << (golden_ok ? "yes" : "no");
  report_line(9, repeat_ok && golden_ok, os.str());
}

}  // namespace

int main() {
  criterion_1_and_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%s (%d failure%s)\n", failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED",
              failures, failures == 1 ? "" : "s");
  return failures;
}
