#include <doctest.h>

#include <cmath>

#include "clubconv/logt.hpp"
#include "clubconv/synth.hpp"

using namespace clubconv;

namespace {

SyntheticSpec basic_spec() {
  SyntheticSpec spec;
  spec.club_sizes = {4};
  spec.delta_levels = {1.0};
  spec.alpha = {0.5};
  spec.noise_sigma = {0.05};
  spec.n_periods = 12;
  spec.seed = 123;
  return spec;
}

}  // namespace

TEST_CASE("generation is bit-identical for a fixed seed") {
  auto a = generate_panel(basic_spec());
  auto b = generate_panel(basic_spec());
  CHECK(a.panel.values == b.panel.values);
  CHECK(a.membership == b.membership);

  auto spec = basic_spec();
  spec.seed = 124;
  auto c = generate_panel(spec);
  CHECK(a.panel.values != c.panel.values);
}

TEST_CASE("noise-free single club gives h identically one") {
  auto spec = basic_spec();
  spec.club_sizes = {2};  // pairwise mean of equal doubles is exact
  spec.noise_sigma = {0.0};
  auto synth = generate_panel(spec);
  auto paths = compute_transition_paths(to_log(synth.panel));
  for (double h : paths.h) CHECK(h == 1.0);
  for (double H : paths.H) CHECK(H == 0.0);

  spec.club_sizes = {5};
  auto wider = compute_transition_paths(to_log(generate_panel(spec).panel));
  for (double h : wider.h) CHECK(h == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two noise-free levels give constant H and a strong rejection") {
  SyntheticSpec spec;
  spec.club_sizes = {3, 3};
  spec.delta_levels = {1.0, 2.0};
  spec.alpha = {0.0, 0.0};
  spec.noise_sigma = {0.0};
  spec.n_periods = 27;
  spec.seed = 1;
  auto synth = generate_panel(spec);
  auto paths = compute_transition_paths(to_log(synth.panel));

  // closed form: h in {delta/mean delta}, H_t = mean((h-1)^2), identical for all t
  const double mean_delta = 1.5;
  const double expected =
      (3 * std::pow(1.0 / mean_delta - 1, 2) + 3 * std::pow(2.0 / mean_delta - 1, 2)) / 6.0;
  for (double H : paths.H) CHECK(H == doctest::Approx(expected).epsilon(1e-12));

  auto res = logt_regression(paths, LogTConfig{});
  CHECK(res.t_stat < -1.65);
  CHECK(res.classification == Classification::reject_convergence);
}

TEST_CASE("within-club h spread shrinks over time when alpha > 0") {
  SyntheticSpec spec;
  spec.club_sizes = {10};
  spec.delta_levels = {1.0};
  spec.alpha = {0.75};
  spec.noise_sigma = {0.03};
  spec.n_periods = 30;
  spec.seed = 77;
  auto synth = generate_panel(spec);
  auto paths = compute_transition_paths(to_log(synth.panel));

  auto spread = [&](int t) {
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < paths.n_units; ++i) {
      lo = std::min(lo, paths.h_at(i, t));
      hi = std::max(hi, paths.h_at(i, t));
    }
    return hi - lo;
  };
  CHECK(spread(paths.n_periods - 1) < spread(0));
}

TEST_CASE("impossible positivity raises NonPositiveOutput") {
  auto spec = basic_spec();
  spec.delta_levels = {-1.0};  // delta * mu always negative
  CHECK_THROWS_AS(generate_panel(spec), NonPositiveOutput);
}

TEST_CASE("spec round-trips through key=value form") {
  SyntheticSpec spec;
  spec.club_sizes = {2, 3};
  spec.delta_levels = {1.5, 0.75};
  spec.alpha = {0.4, 0.6};
  spec.noise_sigma = {0.01, 0.02};
  spec.mu.kind = MuKind::random_walk_with_drift;
  spec.mu.mu0 = 3.5;
  spec.mu.drift = 0.03;
  spec.mu.step_sigma = 0.02;
  spec.n_periods = 21;
  spec.seed = 987654321;

  auto restored = SyntheticSpec::from_key_values(spec.to_key_values());
  CHECK(restored.club_sizes == spec.club_sizes);
  CHECK(restored.delta_levels == spec.delta_levels);
  CHECK(restored.alpha == spec.alpha);
  CHECK(restored.noise_sigma == spec.noise_sigma);
  CHECK(restored.mu.kind == spec.mu.kind);
  CHECK(restored.mu.mu0 == spec.mu.mu0);
  CHECK(restored.mu.drift == spec.mu.drift);
  CHECK(restored.mu.step_sigma == spec.mu.step_sigma);
  CHECK(restored.n_periods == spec.n_periods);
  CHECK(restored.seed == spec.seed);

  auto a = generate_panel(spec);
  auto b = generate_panel(restored);
  CHECK(a.panel.values == b.panel.values);
}

TEST_CASE("membership labels line up with club sizes") {
  SyntheticSpec spec;
  spec.club_sizes = {2, 3, 4};
  spec.delta_levels = {2.0, 1.5, 1.0};
  spec.alpha = {0.5, 0.5, 0.5};
  spec.noise_sigma = {0.01};
  spec.n_periods = 10;
  spec.seed = 6;
  auto synth = generate_panel(spec);
  CHECK(synth.membership ==
        std::vector<int>{0, 0, 1, 1, 1, 2, 2, 2, 2});
  CHECK(synth.panel.n_units() == 9);
}
