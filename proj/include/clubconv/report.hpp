#pragma once

#include <map>
#include <string>
#include <vector>

#include "clubconv/clubs.hpp"

namespace clubconv {

struct TransitionEntry {
  std::vector<std::string> subset_a;
  std::vector<std::string> subset_b;
  LogTResult result;
};

struct AnalysisReport {
  std::string category;
  PanelScreenReport screen;
  LogTResult full_panel;
  std::vector<Club> clubs;  // initial classification
  std::vector<MergeTest> merge_tests;
  std::vector<Club> merged_clubs;  // partition after merging (empty if merging off)
  std::vector<std::string> divergent;
  std::vector<TransitionEntry> transitions;
  std::vector<std::string> path_periods;          // period labels of the paths
  std::vector<std::vector<double>> club_paths;    // per-club average h_t series
};

enum class ReportFormat { text, json, csv };

/// text: aligned tables, 3 decimals. json: stable documented schema, full
/// precision. csv: the per-table files joined with `# table: <name>` markers.
std::string emit_report(const AnalysisReport& report, ReportFormat format);

/// The individual csv tables (clubs, merge_tests, transitions, divergent,
/// paths, full_panel), keyed by table name.
std::map<std::string, std::string> emit_report_csv_tables(const AnalysisReport& report);

std::string report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const std::string& json_text);

}  // namespace clubconv
