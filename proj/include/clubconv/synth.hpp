#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clubconv/panel.hpp"

namespace clubconv {

enum class MuKind { linear_trend, random_walk_with_drift };

/// Common growth component mu_t, starting at mu_0.
struct MuSpec {
  MuKind kind = MuKind::linear_trend;
  double mu0 = 4.0;
  double slope = 0.02;       // linear_trend
  double drift = 0.02;       // random_walk_with_drift
  double step_sigma = 0.01;  // random_walk_with_drift
};

/// Factor-model panel generator with known club structure. The log series is
/// y_it = delta_it * mu_t with delta_it = delta_c + sigma_i * xi_it * t^(-alpha_c)
/// for unit i in club c and xi_it standard normal; the emitted panel holds
/// exp(y_it) at raw_index scale so the standard pipeline (to_log -> screen ->
/// paths) recovers y exactly. The slowly varying factor of the original
/// formulation is fixed at 1.
struct SyntheticSpec {
  std::vector<int> club_sizes;        // sums to N
  std::vector<double> delta_levels;   // one per club
  std::vector<double> alpha;          // decay rate per club, >= 0
  std::vector<double> noise_sigma;    // length 1 (broadcast), #clubs, or N
  MuSpec mu;
  int n_periods = 27;
  std::uint64_t seed = 0;

  int n_units() const;
  double sigma_for(int unit) const;   // resolves the broadcast forms
  int club_of(int unit) const;

  std::string to_key_values() const;  // flat key=value serialization
  static SyntheticSpec from_key_values(const std::string& text);
};

struct SyntheticPanel {
  Panel panel;                  // raw_index scale
  std::vector<int> membership;  // club index per unit
};

/// Deterministic given spec.seed; per-unit RNG streams, so generation order
/// never affects the values. Throws NonPositiveOutput if 100 regeneration
/// attempts still produce a non-positive log-level.
SyntheticPanel generate_panel(const SyntheticSpec& spec);

}  // namespace clubconv
