#include "clubconv/study.hpp"

#include <stdexcept>

namespace clubconv {

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    throw InputError(std::string("[") + name + "] " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("[") + name + "] " + e.what());
  }
}

}  // namespace

AnalysisReport run_study_on_panel(const Panel& raw, const StudySpec& spec) {
  Panel windowed = raw;
  if (spec.window)
    windowed = stage("window", [&] {
      return window_slice(raw, spec.window->first, spec.window->second);
    });

  const std::string base =
      spec.base_period.empty() ? windowed.period_labels.front() : spec.base_period;
  Panel rebased = stage("rebase", [&] { return rebase(windowed, base); });
  Panel logged = stage("log", [&] { return to_log(rebased); });

  auto [screened, screen_report] = stage("screen", [&] {
    return screen_degenerate_periods(logged, spec.screen_epsilon);
  });
  if (screened.n_periods() < 5)
    throw WindowTooShort("[screen] fewer than 5 periods remain after screening");

  AnalysisReport report;
  report.category = spec.category;
  report.screen = screen_report;

  ClubPartition partition =
      stage("cluster", [&] { return cluster_all(screened, spec.cluster); });
  report.full_panel = partition.full_panel;
  report.clubs = partition.clubs;
  report.divergent = partition.divergent;

  if (spec.run_merge && partition.clubs.size() > 1) {
    auto [merged, tests] =
        stage("merge", [&] { return merge_clubs(partition, screened, spec.cluster); });
    report.merge_tests = tests;
    report.merged_clubs = merged.clubs;
  }

  for (const auto& [a, b] : spec.transitions) {
    TransitionEntry entry;
    entry.subset_a = a;
    entry.subset_b = b;
    entry.result =
        stage("transition", [&] { return transition_test(screened, a, b, spec.cluster); });
    report.transitions.push_back(entry);
  }

  // Per-club average relative transition paths on the screened panel.
  const TransitionPaths paths =
      stage("paths", [&] { return compute_transition_paths(screened); });
  report.path_periods = screened.period_labels;
  for (const auto& club : report.clubs) {
    std::vector<double> avg(screened.n_periods(), 0.0);
    for (const auto& m : club.member_ids) {
      const int i = screened.unit_index(m);
      for (int t = 0; t < screened.n_periods(); ++t) avg[t] += paths.h_at(i, t);
    }
    for (auto& v : avg) v /= club.member_ids.size();
    report.club_paths.push_back(std::move(avg));
  }
  return report;
}

AnalysisReport run_study(const StudySpec& spec) {
  Panel raw = stage("read", [&] { return read_panel_csv(spec.input_path, spec.layout); });
  return run_study_on_panel(raw, spec);
}

}  // namespace clubconv
