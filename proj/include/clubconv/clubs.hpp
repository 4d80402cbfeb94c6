#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clubconv/logt.hpp"
#include "clubconv/panel.hpp"

namespace clubconv {

enum class OrderingRule { last_observation, mean_last_half };

struct ClusterConfig {
  OrderingRule ordering = OrderingRule::mean_last_half;
  double sieve_threshold = 0.0;  // c*; admission threshold for the sieve
  LogTConfig logt;
};

struct Club {
  std::vector<std::string> member_ids;  // >= 2 members, in ordering sequence
  LogTResult logt;                      // always passes its own test
  int rank = 0;                         // 1 = highest mean_final_level
  double mean_final_level = 0;          // club-average y over the ordering window
  bool weak_convergence = false;        // b_hat < 0 but test not rejected
};

struct ClubPartition {
  std::vector<Club> clubs;             // ordered by rank
  std::vector<std::string> divergent;  // units joining no club
  LogTResult full_panel;
  ClusterConfig config;
};

struct MergeTest {
  int rank_low = 0;  // the higher-ranked (lower index) club of the pair
  int rank_high = 0;
  LogTResult result;
  bool merged = false;
};

/// Units sorted descending by last observation or by the mean of y over the
/// final ceil(T/2) periods. Ties break lexicographically by label.
std::vector<std::string> order_units(const Panel& panel, OrderingRule rule);

/// Core-group search over an ordered unit list: for each start position, scan
/// k = 2..N over the top-k units, keep the k with the largest passing log-t
/// statistic. A start whose top pair fails is skipped. nullopt when no pair
/// anywhere passes.
std::optional<std::vector<std::string>> find_core_group(
    const std::vector<std::string>& ordered_units, const Panel& panel,
    const ClusterConfig& config);

/// One-at-a-time admission of remaining units into the core under threshold
/// c*, followed by a whole-club check; c* tightens toward the best observed
/// statistic until the club passes (at most 32 rounds, then core alone).
Club sieve_members(const std::vector<std::string>& core,
                   const std::vector<std::string>& remaining, const Panel& panel,
                   const ClusterConfig& config);

/// Full four-step clustering: order, core, sieve, recurse on leftovers.
/// Units that never join a club are reported divergent.
ClubPartition cluster_all(const Panel& panel, const ClusterConfig& config);

/// Tests every adjacent pair of clubs with log-t, merging whenever the union
/// passes, rescanning top-down after each merge. Every test is reported,
/// including failures.
std::pair<ClubPartition, std::vector<MergeTest>> merge_clubs(const ClubPartition& partition,
                                                             const Panel& panel,
                                                             const ClusterConfig& config);

/// Log-t on the union of two disjoint unit subsets (cross-club transition
/// probe). Subset choice is the caller's.
LogTResult transition_test(const Panel& panel, const std::vector<std::string>& subset_a,
                           const std::vector<std::string>& subset_b,
                           const ClusterConfig& config);

}  // namespace clubconv
