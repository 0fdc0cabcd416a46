#include "kronres/montecarlo.hpp"

#include <cmath>
#include <random>

namespace kronres {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-trial RNG stream: serial and parallel runs agree bit-for-bit.
std::mt19937_64 trial_rng(std::uint64_t seed, std::int64_t trial) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial))));
}

int sample_step(const Matrix& p, int state, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  double cum = 0.0;
  const int n = static_cast<int>(p.cols());
  for (int j = 0; j < n; ++j) {
    cum += p(state, j);
    if (u < cum) return j;
  }
  // guard against rounding in the cumulative sum
  for (int j = n - 1; j >= 0; --j) {
    if (p(state, j) > 0.0) return j;
  }
  return state;
}

void check_cfg(const WalkConfig& cfg) {
  if (cfg.trials < 1) throw PreconditionError("trials must be >= 1");
  if (cfg.max_steps < 1) throw PreconditionError("max_steps must be >= 1");
}

EscapeEstimate finish(std::int64_t successes, std::int64_t truncated, std::int64_t trials) {
  if (truncated == trials) {
    throw PreconditionError("all walks were truncated at max_steps; no estimate available");
  }
  EscapeEstimate est;
  est.trials = trials;
  est.truncated = truncated;
  est.p_hat = static_cast<double>(successes) / static_cast<double>(trials - truncated);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials - truncated));
  return est;
}

}  // namespace

EscapeEstimate simulate_escape(const WeightedDigraph& g, int a, int b, const WalkConfig& cfg) {
  check_cfg(cfg);
  if (a == b || a < 0 || b < 0 || a >= g.size() || b >= g.size()) {
    throw PreconditionError("invalid node pair");
  }
  Matrix p = transition_matrix(g);
  std::int64_t successes = 0, truncated = 0;
  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    auto rng = trial_rng(cfg.seed, trial);
    int state = sample_step(p, a, rng);  // forced first step out of a
    bool decided = false;
    for (std::int64_t step = 1; step < cfg.max_steps; ++step) {
      if (state == b) {
        ++successes;
        decided = true;
        break;
      }
      if (state == a) {
        decided = true;  // returned before reaching b
        break;
      }
      state = sample_step(p, state, rng);
    }
    if (!decided) ++truncated;
  }
  return finish(successes, truncated, cfg.trials);
}

EscapeEstimate simulate_voltage(const WeightedDigraph& g, int x, int a, int b,
                                const WalkConfig& cfg) {
  check_cfg(cfg);
  if (x == a || x == b || a == b) throw PreconditionError("x, a, b must be distinct");
  if (x < 0 || x >= g.size() || a < 0 || a >= g.size() || b < 0 || b >= g.size()) {
    throw PreconditionError("node index out of range");
  }
  Matrix p = transition_matrix(g);
  std::int64_t successes = 0, truncated = 0;
  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    auto rng = trial_rng(cfg.seed, trial);
    int state = x;
    bool decided = false;
    for (std::int64_t step = 0; step < cfg.max_steps; ++step) {
      if (state == a) {
        ++successes;
        decided = true;
        break;
      }
      if (state == b) {
        decided = true;
        break;
      }
      state = sample_step(p, state, rng);
    }
    if (!decided) ++truncated;
  }
  return finish(successes, truncated, cfg.trials);
}

EscapeEstimate simulate_first_edge(const WeightedDigraph& g, int a, int b, const WalkConfig& cfg) {
  check_cfg(cfg);
  if (a == b || a < 0 || b < 0 || a >= g.size() || b >= g.size()) {
    throw PreconditionError("invalid node pair");
  }
  if (!g.has_edge(a, b)) throw PreconditionError("edge from a to b does not exist");
  Matrix p = transition_matrix(g);
  std::int64_t successes = 0, truncated = 0;
  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    auto rng = trial_rng(cfg.seed, trial);
    int state = a;
    bool decided = false;
    for (std::int64_t step = 0; step < cfg.max_steps; ++step) {
      int next = sample_step(p, state, rng);
      if (next == b) {
        if (state == a) ++successes;  // first hit of b used the direct edge
        decided = true;
        break;
      }
      state = next;
    }
    if (!decided) ++truncated;
  }
  return finish(successes, truncated, cfg.trials);
}

}  // namespace kronres
