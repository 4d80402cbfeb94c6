#include "clubconv/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace clubconv {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

ordered_json logt_to_json(const LogTResult& r) {
  ordered_json j;
  j["a_hat"] = r.a_hat;
  j["b_hat"] = r.b_hat;
  j["alpha_hat"] = r.alpha_hat;
  j["t_stat"] = r.t_stat;
  j["hac_se"] = r.hac_se;
  j["window"] = {r.window_first, r.window_last};
  j["residuals"] = r.residuals;
  j["classification"] = to_string(r.classification);
  return j;
}

LogTResult logt_from_json(const ordered_json& j) {
  LogTResult r;
  r.a_hat = j.at("a_hat").get<double>();
  r.b_hat = j.at("b_hat").get<double>();
  r.alpha_hat = j.at("alpha_hat").get<double>();
  r.t_stat = j.at("t_stat").get<double>();
  r.hac_se = j.at("hac_se").get<double>();
  r.window_first = j.at("window").at(0).get<int>();
  r.window_last = j.at("window").at(1).get<int>();
  r.residuals = j.at("residuals").get<std::vector<double>>();
  r.classification = classification_from_string(j.at("classification").get<std::string>());
  return r;
}

ordered_json club_to_json(const Club& c) {
  ordered_json j;
  j["rank"] = c.rank;
  j["members"] = c.member_ids;
  j["logt"] = logt_to_json(c.logt);
  j["mean_final_level"] = c.mean_final_level;
  j["weak_convergence"] = c.weak_convergence;
  return j;
}

Club club_from_json(const ordered_json& j) {
  Club c;
  c.rank = j.at("rank").get<int>();
  c.member_ids = j.at("members").get<std::vector<std::string>>();
  c.logt = logt_from_json(j.at("logt"));
  c.mean_final_level = j.at("mean_final_level").get<double>();
  c.weak_convergence = j.at("weak_convergence").get<bool>();
  return c;
}

void emit_club_lines(std::ostringstream& os, const std::vector<Club>& clubs) {
  for (const auto& c : clubs) {
    os << "Club " << c.rank << "  " << join(c.member_ids, ", ") << "  "
       << fmt3(c.logt.t_stat) << "  " << fmt3(c.logt.b_hat) << "  " << fmt3(c.logt.alpha_hat)
       << "  [" << to_string(c.logt.classification)
       << (c.weak_convergence ? ", weak" : "") << "]\n";
  }
}

std::string emit_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << "Category: " << r.category << "\n";
  if (!r.screen.dropped_periods.empty())
    os << "Dropped periods: " << join(r.screen.dropped_periods, ", ") << "\n";
  os << "\nFull panel  t = " << fmt3(r.full_panel.t_stat) << "  b = " << fmt3(r.full_panel.b_hat)
     << "  [" << to_string(r.full_panel.classification) << "]\n";

  os << "\nInitial classification (t, b, alpha)\n";
  emit_club_lines(os, r.clubs);
  if (!r.divergent.empty()) os << "Diverge  " << join(r.divergent, ", ") << "\n";

  if (!r.merge_tests.empty()) {
    os << "\nTest of club merger (t, b)\n";
    for (const auto& m : r.merge_tests)
      os << "Club " << m.rank_low << "+" << m.rank_high << "  " << fmt3(m.result.t_stat) << "  "
         << fmt3(m.result.b_hat) << (m.merged ? "  merged" : "") << "\n";
  }
  if (!r.merged_clubs.empty()) {
    os << "\nAfter merging (t, b, alpha)\n";
    emit_club_lines(os, r.merged_clubs);
  }
  if (!r.transitions.empty()) {
    os << "\nTransition (t, b)\n";
    for (const auto& t : r.transitions)
      os << join(t.subset_a, ", ") << " plus " << join(t.subset_b, ", ") << "  "
         << fmt3(t.result.t_stat) << "  " << fmt3(t.result.b_hat) << "\n";
  }
  if (!r.club_paths.empty()) {
    os << "\nAverage relative transition paths\n";
    os << "period";
    for (std::size_t c = 0; c < r.club_paths.size(); ++c) os << "  club" << c + 1;
    os << "\n";
    for (std::size_t t = 0; t < r.path_periods.size(); ++t) {
      os << r.path_periods[t];
      for (const auto& path : r.club_paths) os << "  " << fmt3(path[t]);
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace

std::string report_to_json(const AnalysisReport& r) {
  ordered_json j;
  j["category"] = r.category;
  ordered_json screen;
  screen["dropped_periods"] = r.screen.dropped_periods;
  std::vector<std::string> reasons;
  for (auto reason : r.screen.reasons)
    reasons.push_back(reason == DropReason::base_period_degenerate ? "base_period_degenerate"
                                                                   : "variance_below_epsilon");
  screen["reasons"] = reasons;
  j["screen"] = screen;
  j["full_panel"] = logt_to_json(r.full_panel);
  j["clubs"] = ordered_json::array();
  for (const auto& c : r.clubs) j["clubs"].push_back(club_to_json(c));
  j["merge_tests"] = ordered_json::array();
  for (const auto& m : r.merge_tests) {
    ordered_json mj;
    mj["ranks"] = {m.rank_low, m.rank_high};
    mj["result"] = logt_to_json(m.result);
    mj["merged"] = m.merged;
    j["merge_tests"].push_back(mj);
  }
  j["merged_clubs"] = ordered_json::array();
  for (const auto& c : r.merged_clubs) j["merged_clubs"].push_back(club_to_json(c));
  j["transitions"] = ordered_json::array();
  for (const auto& t : r.transitions) {
    ordered_json tj;
    tj["subset_a"] = t.subset_a;
    tj["subset_b"] = t.subset_b;
    tj["result"] = logt_to_json(t.result);
    j["transitions"].push_back(tj);
  }
  j["divergent"] = r.divergent;
  ordered_json paths;
  paths["periods"] = r.path_periods;
  paths["clubs"] = r.club_paths;
  j["paths"] = paths;
  return j.dump(2) + "\n";
}

AnalysisReport report_from_json(const std::string& json_text) {
  const auto j = ordered_json::parse(json_text);
  AnalysisReport r;
  r.category = j.at("category").get<std::string>();
  r.screen.dropped_periods = j.at("screen").at("dropped_periods").get<std::vector<std::string>>();
  for (const auto& s : j.at("screen").at("reasons"))
    r.screen.reasons.push_back(s.get<std::string>() == "base_period_degenerate"
                                   ? DropReason::base_period_degenerate
                                   : DropReason::variance_below_epsilon);
  r.full_panel = logt_from_json(j.at("full_panel"));
  for (const auto& c : j.at("clubs")) r.clubs.push_back(club_from_json(c));
  for (const auto& m : j.at("merge_tests")) {
    MergeTest t;
    t.rank_low = m.at("ranks").at(0).get<int>();
    t.rank_high = m.at("ranks").at(1).get<int>();
    t.result = logt_from_json(m.at("result"));
    t.merged = m.at("merged").get<bool>();
    r.merge_tests.push_back(t);
  }
  for (const auto& c : j.at("merged_clubs")) r.merged_clubs.push_back(club_from_json(c));
  for (const auto& t : j.at("transitions")) {
    TransitionEntry e;
    e.subset_a = t.at("subset_a").get<std::vector<std::string>>();
    e.subset_b = t.at("subset_b").get<std::vector<std::string>>();
    e.result = logt_from_json(t.at("result"));
    r.transitions.push_back(e);
  }
  r.divergent = j.at("divergent").get<std::vector<std::string>>();
  r.path_periods = j.at("paths").at("periods").get<std::vector<std::string>>();
  r.club_paths = j.at("paths").at("clubs").get<std::vector<std::vector<double>>>();
  return r;
}

std::map<std::string, std::string> emit_report_csv_tables(const AnalysisReport& r) {
  std::map<std::string, std::string> tables;
  auto csv3 = [](double v) { return fmt3(v); };

  {
    std::ostringstream os;
    os << "t_stat,b_hat,alpha_hat,classification\n";
    os << csv3(r.full_panel.t_stat) << ',' << csv3(r.full_panel.b_hat) << ','
       << csv3(r.full_panel.alpha_hat) << ',' << to_string(r.full_panel.classification) << '\n';
    tables["full_panel"] = os.str();
  }
  {
    std::ostringstream os;
    os << "rank,members,t_stat,b_hat,alpha_hat,classification,weak\n";
    for (const auto& c : r.clubs)
      os << c.rank << ',' << join(c.member_ids, ";") << ',' << csv3(c.logt.t_stat) << ','
         << csv3(c.logt.b_hat) << ',' << csv3(c.logt.alpha_hat) << ','
         << to_string(c.logt.classification) << ',' << (c.weak_convergence ? 1 : 0) << '\n';
    tables["clubs"] = os.str();
  }
  {
    std::ostringstream os;
    os << "rank_low,rank_high,t_stat,b_hat,merged\n";
    for (const auto& m : r.merge_tests)
      os << m.rank_low << ',' << m.rank_high << ',' << csv3(m.result.t_stat) << ','
         << csv3(m.result.b_hat) << ',' << (m.merged ? 1 : 0) << '\n';
    tables["merge_tests"] = os.str();
  }
  {
    std::ostringstream os;
    os << "subset_a,subset_b,t_stat,b_hat\n";
    for (const auto& t : r.transitions)
      os << join(t.subset_a, ";") << ',' << join(t.subset_b, ";") << ','
         << csv3(t.result.t_stat) << ',' << csv3(t.result.b_hat) << '\n';
    tables["transitions"] = os.str();
  }
  {
    std::ostringstream os;
    os << "unit\n";
    for (const auto& u : r.divergent) os << u << '\n';
    tables["divergent"] = os.str();
  }
  {
    std::ostringstream os;
    os << "period";
    for (std::size_t c = 0; c < r.club_paths.size(); ++c) os << ",club" << c + 1;
    os << '\n';
    for (std::size_t t = 0; t < r.path_periods.size(); ++t) {
      os << r.path_periods[t];
      for (const auto& path : r.club_paths) os << ',' << csv3(path[t]);
      os << '\n';
    }
    tables["paths"] = os.str();
  }
  return tables;
}

std::string emit_report(const AnalysisReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::text: return emit_text(report);
    case ReportFormat::json: return report_to_json(report);
    case ReportFormat::csv: {
      std::string out;
      for (const auto& [name, body] : emit_report_csv_tables(report))
        out += "# table: " + name + "\n" + body + "\n";
      return out;
    }
  }
  return {};
}

}  // namespace clubconv
