#include "clubconv/synth.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace clubconv {

namespace {

// splitmix64; seeds the per-unit streams and doubles as the stream generator
// so parallel per-unit generation is order-independent.
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct UnitStream {
  std::uint64_t state;
  bool have_spare = false;
  double spare = 0;

  explicit UnitStream(std::uint64_t seed, std::uint64_t unit, std::uint64_t attempt) {
    std::uint64_t s = seed;
    state = splitmix64(s) ^ (0x632be59bd9b4e019ULL * (unit + 1)) ^ (attempt << 32);
    splitmix64(state);
  }

  double uniform() {
    return (splitmix64(state) >> 11) * 0x1.0p-53;
  }

  // Box-Muller standard normal.
  double normal() {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    double u1 = uniform();
    while (u1 <= 0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare = r * std::sin(2.0 * M_PI * u2);
    have_spare = true;
    return r * std::cos(2.0 * M_PI * u2);
  }
};

}  // namespace

int SyntheticSpec::n_units() const {
  int n = 0;
  for (int s : club_sizes) n += s;
  return n;
}

int SyntheticSpec::club_of(int unit) const {
  int acc = 0;
  for (std::size_t c = 0; c < club_sizes.size(); ++c) {
    acc += club_sizes[c];
    if (unit < acc) return static_cast<int>(c);
  }
  throw DimensionMismatch("unit index out of range");
}

double SyntheticSpec::sigma_for(int unit) const {
  if (noise_sigma.size() == 1) return noise_sigma[0];
  if (noise_sigma.size() == club_sizes.size()) return noise_sigma[club_of(unit)];
  if (static_cast<int>(noise_sigma.size()) == n_units()) return noise_sigma[unit];
  throw DimensionMismatch("noise_sigma must have length 1, #clubs, or N");
}

SyntheticPanel generate_panel(const SyntheticSpec& spec) {
  const int n = spec.n_units();
  const int t_len = spec.n_periods;
  if (n < 2 || t_len < 2) throw DimensionMismatch("synthetic panel needs N >= 2, T >= 2");
  if (spec.delta_levels.size() != spec.club_sizes.size() ||
      spec.alpha.size() != spec.club_sizes.size())
    throw DimensionMismatch("delta_levels and alpha must have one entry per club");

  // Common growth component, shared across units; drawn from its own stream.
  std::vector<double> mu(t_len);
  {
    UnitStream ms(spec.seed, 0xffffffffULL, 0);
    double level = spec.mu.mu0;
    for (int t = 0; t < t_len; ++t) {
      if (spec.mu.kind == MuKind::linear_trend) {
        mu[t] = spec.mu.mu0 + spec.mu.slope * t;
      } else {
        if (t > 0) level += spec.mu.drift + spec.mu.step_sigma * ms.normal();
        mu[t] = level;
      }
    }
  }

  SyntheticPanel out;
  out.membership.resize(n);
  std::vector<std::string> units(n), periods(t_len);
  for (int i = 0; i < n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "U%02d", i + 1);
    units[i] = buf;
  }
  for (int t = 0; t < t_len; ++t) periods[t] = std::to_string(2000 + t);

  std::vector<double> values(static_cast<std::size_t>(n) * t_len);
  for (int i = 0; i < n; ++i) {
    const int club = spec.club_of(i);
    out.membership[i] = club;
    const double delta = spec.delta_levels[club];
    const double alpha = spec.alpha[club];
    const double sigma = spec.sigma_for(i);

    bool ok = false;
    for (std::uint64_t attempt = 0; attempt < 100 && !ok; ++attempt) {
      UnitStream rng(spec.seed, static_cast<std::uint64_t>(i), attempt);
      ok = true;
      for (int t = 0; t < t_len; ++t) {
        const double decay = std::pow(static_cast<double>(t + 1), -alpha);
        const double d = delta + sigma * rng.normal() * decay;
        const double y = d * mu[t];
        if (!(y > 0)) {
          ok = false;
          break;
        }
        values[static_cast<std::size_t>(i) * t_len + t] = std::exp(y);
      }
    }
    if (!ok)
      throw NonPositiveOutput("unit " + units[i] +
                              ": could not draw a positive log series in 100 attempts (delta=" +
                              std::to_string(delta) + ", sigma=" + std::to_string(sigma) + ")");
  }

  out.panel = build_panel(std::move(units), std::move(periods), std::move(values));
  return out;
}

std::string SyntheticSpec::to_key_values() const {
  std::ostringstream os;
  os.precision(17);
  auto join = [&](const auto& v) {
    std::ostringstream s;
    s.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
    return s.str();
  };
  os << "club_sizes=" << join(club_sizes) << "\n";
  os << "delta_levels=" << join(delta_levels) << "\n";
  os << "alpha=" << join(alpha) << "\n";
  os << "noise_sigma=" << join(noise_sigma) << "\n";
  os << "mu_kind=" << (mu.kind == MuKind::linear_trend ? "linear_trend" : "random_walk_with_drift")
     << "\n";
  os << "mu0=" << mu.mu0 << "\n";
  os << "mu_slope=" << mu.slope << "\n";
  os << "mu_drift=" << mu.drift << "\n";
  os << "mu_step_sigma=" << mu.step_sigma << "\n";
  os << "periods=" << n_periods << "\n";
  os << "seed=" << seed << "\n";
  return os.str();
}

SyntheticSpec SyntheticSpec::from_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto split_doubles = [](const std::string& s) {
    std::vector<double> v;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
    return v;
  };
  SyntheticSpec spec;
  for (double d : split_doubles(kv.at("club_sizes"))) spec.club_sizes.push_back(static_cast<int>(d));
  spec.delta_levels = split_doubles(kv.at("delta_levels"));
  spec.alpha = split_doubles(kv.at("alpha"));
  spec.noise_sigma = split_doubles(kv.at("noise_sigma"));
  spec.mu.kind = kv.at("mu_kind") == "linear_trend" ? MuKind::linear_trend
                                                    : MuKind::random_walk_with_drift;
  spec.mu.mu0 = std::stod(kv.at("mu0"));
  spec.mu.slope = std::stod(kv.at("mu_slope"));
  spec.mu.drift = std::stod(kv.at("mu_drift"));
  spec.mu.step_sigma = std::stod(kv.at("mu_step_sigma"));
  spec.n_periods = std::stoi(kv.at("periods"));
  spec.seed = std::stoull(kv.at("seed"));
  return spec;
}

}  // namespace clubconv
