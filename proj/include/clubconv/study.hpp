#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clubconv/clubs.hpp"
#include "clubconv/csv_io.hpp"
#include "clubconv/report.hpp"

namespace clubconv {

/// One full analysis run: file, window, base period, configuration overrides.
struct StudySpec {
  std::string input_path;
  CsvLayout layout = CsvLayout::wide_format;
  std::string base_period;                // empty = first period of the window
  std::optional<std::pair<std::string, std::string>> window;  // [start, end] labels
  std::string category = "GHG";
  ClusterConfig cluster;
  bool run_merge = true;
  // Explicit cross-club subsets to probe, pairs of unit lists.
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> transitions;
  ReportFormat format = ReportFormat::text;
  double screen_epsilon = 1e-12;
};

/// read -> window-slice -> rebase -> to_log -> screen -> cluster_all ->
/// merge_clubs -> transition tests -> report. Errors are rethrown with the
/// pipeline stage name prefixed.
AnalysisReport run_study(const StudySpec& spec);

/// Same pipeline on an already-loaded raw panel (synthetic fixtures, tests).
AnalysisReport run_study_on_panel(const Panel& raw, const StudySpec& spec);

}  // namespace clubconv
