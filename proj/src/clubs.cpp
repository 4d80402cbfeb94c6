#include "clubconv/clubs.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace clubconv {

namespace {

double ordering_score(const Panel& panel, int unit, OrderingRule rule) {
  const int t_len = panel.n_periods();
  if (rule == OrderingRule::last_observation) return panel.at(unit, t_len - 1);
  const int half = (t_len + 1) / 2;  // final ceil(T/2) periods
  double s = 0;
  for (int t = t_len - half; t < t_len; ++t) s += panel.at(unit, t);
  return s / half;
}

LogTResult logt_on(const Panel& panel, const std::vector<std::string>& members,
                   const ClusterConfig& config) {
  return logt_test(subpanel(panel, members), config.logt);
}

double club_level(const Panel& panel, const std::vector<std::string>& members,
                  OrderingRule rule) {
  double s = 0;
  for (const auto& m : members) s += ordering_score(panel, panel.unit_index(m), rule);
  return s / members.size();
}

void rank_clubs(std::vector<Club>& clubs) {
  std::stable_sort(clubs.begin(), clubs.end(), [](const Club& a, const Club& b) {
    if (a.mean_final_level != b.mean_final_level)
      return a.mean_final_level > b.mean_final_level;
    return a.member_ids.front() < b.member_ids.front();
  });
  for (std::size_t i = 0; i < clubs.size(); ++i) clubs[i].rank = static_cast<int>(i + 1);
}

Club make_club(const Panel& panel, std::vector<std::string> members, LogTResult logt,
               const ClusterConfig& config) {
  Club c;
  c.mean_final_level = club_level(panel, members, config.ordering);
  c.member_ids = std::move(members);
  c.weak_convergence = logt.b_hat < 0 && logt.t_stat >= config.logt.critical_value;
  c.logt = std::move(logt);
  return c;
}

}  // namespace

std::vector<std::string> order_units(const Panel& panel, OrderingRule rule) {
  if (panel.scale != Scale::log_scale)
    throw NotLogScale("ordering operates on the log-scale panel");
  std::vector<int> idx(panel.n_units());
  for (int i = 0; i < panel.n_units(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double sa = ordering_score(panel, a, rule);
    const double sb = ordering_score(panel, b, rule);
    if (sa != sb) return sa > sb;
    return panel.unit_ids[a] < panel.unit_ids[b];
  });
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(panel.unit_ids[i]);
  return out;
}

std::optional<std::vector<std::string>> find_core_group(
    const std::vector<std::string>& ordered_units, const Panel& panel,
    const ClusterConfig& config) {
  const int n = static_cast<int>(ordered_units.size());
  for (int start = 0; start + 2 <= n; ++start) {
    std::vector<std::string> prefix;
    double best_t = 0;
    int best_k = 0;
    for (int k = 2; k <= n - start; ++k) {
      prefix.assign(ordered_units.begin() + start, ordered_units.begin() + start + k);
      double t;
      try {
        t = logt_on(panel, prefix, config).t_stat;
      } catch (const NumericalError&) {
        break;  // degenerate sub-panel; smaller cores stand
      }
      if (k == 2 && t < config.logt.critical_value) break;  // top pair fails, shift start
      if (t > config.logt.critical_value && (best_k == 0 || t > best_t)) {
        best_t = t;
        best_k = k;
      }
    }
    if (best_k >= 2)
      return std::vector<std::string>(ordered_units.begin() + start,
                                      ordered_units.begin() + start + best_k);
  }
  return std::nullopt;
}

Club sieve_members(const std::vector<std::string>& core,
                   const std::vector<std::string>& remaining, const Panel& panel,
                   const ClusterConfig& config) {
  const LogTResult core_result = logt_on(panel, core, config);

  double c_star = config.sieve_threshold;
  for (int round = 0; round < 32; ++round) {
    std::vector<std::string> members = core;
    double max_seen_t = core_result.t_stat;
    for (const auto& u : remaining) {
      std::vector<std::string> candidate = members;
      candidate.push_back(u);
      double t;
      try {
        t = logt_on(panel, candidate, config).t_stat;
      } catch (const NumericalError&) {
        continue;
      }
      max_seen_t = std::max(max_seen_t, t);
      if (t > c_star) members = std::move(candidate);
    }

    if (members.size() == core.size())
      return make_club(panel, core, core_result, config);

    LogTResult whole = logt_on(panel, members, config);
    if (whole.t_stat >= config.logt.critical_value)
      return make_club(panel, std::move(members), std::move(whole), config);
    c_star = 0.5 * (c_star + max_seen_t);  // tighten and re-sieve
  }
  return make_club(panel, core, core_result, config);
}

ClubPartition cluster_all(const Panel& panel, const ClusterConfig& config) {
  if (panel.n_periods() < 5)
    throw WindowTooShort("clustering needs at least 5 periods after screening");

  ClubPartition part;
  part.config = config;
  part.full_panel = logt_test(panel, config.logt);

  std::vector<std::string> pool = order_units(panel, config.ordering);
  while (pool.size() >= 2) {
    // Leftover terminal rule: if everything remaining jointly converges it
    // forms the final club.
    bool pool_passes = false;
    try {
      LogTResult whole = logt_on(panel, pool, config);
      if (whole.t_stat >= config.logt.critical_value) {
        part.clubs.push_back(make_club(panel, pool, std::move(whole), config));
        pool.clear();
        pool_passes = true;
      }
    } catch (const NumericalError&) {
    }
    if (pool_passes) break;

    auto core = find_core_group(pool, panel, config);
    if (!core) {
      part.divergent.insert(part.divergent.end(), pool.begin(), pool.end());
      pool.clear();
      break;
    }

    std::vector<std::string> remaining;
    for (const auto& u : pool)
      if (std::find(core->begin(), core->end(), u) == core->end()) remaining.push_back(u);

    Club club = sieve_members(*core, remaining, panel, config);
    std::set<std::string> taken(club.member_ids.begin(), club.member_ids.end());
    std::vector<std::string> next_pool;
    for (const auto& u : pool)
      if (!taken.count(u)) next_pool.push_back(u);
    part.clubs.push_back(std::move(club));
    pool = std::move(next_pool);
  }
  if (pool.size() == 1) part.divergent.push_back(pool.front());

  rank_clubs(part.clubs);
  std::sort(part.divergent.begin(), part.divergent.end());
  return part;
}

std::pair<ClubPartition, std::vector<MergeTest>> merge_clubs(const ClubPartition& partition,
                                                             const Panel& panel,
                                                             const ClusterConfig& config) {
  ClubPartition out = partition;
  std::vector<MergeTest> tests;

  bool merged_any = true;
  while (merged_any) {
    merged_any = false;
    for (std::size_t i = 0; i + 1 < out.clubs.size(); ++i) {
      std::vector<std::string> joint = out.clubs[i].member_ids;
      joint.insert(joint.end(), out.clubs[i + 1].member_ids.begin(),
                   out.clubs[i + 1].member_ids.end());
      MergeTest test;
      test.rank_low = out.clubs[i].rank;
      test.rank_high = out.clubs[i + 1].rank;
      test.result = logt_on(panel, joint, config);
      test.merged = test.result.t_stat >= config.logt.critical_value;
      tests.push_back(test);
      if (test.merged) {
        Club merged = make_club(panel, std::move(joint), test.result, config);
        out.clubs.erase(out.clubs.begin() + i + 1);
        out.clubs[i] = std::move(merged);
        rank_clubs(out.clubs);
        merged_any = true;
        break;  // restart the scan from the top
      }
    }
  }
  return {std::move(out), std::move(tests)};
}

LogTResult transition_test(const Panel& panel, const std::vector<std::string>& subset_a,
                           const std::vector<std::string>& subset_b,
                           const ClusterConfig& config) {
  std::set<std::string> a(subset_a.begin(), subset_a.end());
  for (const auto& u : subset_b)
    if (a.count(u)) throw OverlappingSubsets("unit in both subsets: " + u);
  std::vector<std::string> joint = subset_a;
  joint.insert(joint.end(), subset_b.begin(), subset_b.end());
  if (joint.size() < 2)
    throw DimensionMismatch("transition test needs at least 2 units in the union");
  for (const auto& u : joint) panel.unit_index(u);  // throws UnknownUnit
  return logt_on(panel, joint, config);
}

}  // namespace clubconv
