#pragma once

#include <cstdint>

#include "kronres/graph.hpp"

namespace kronres {

struct WalkConfig {
  std::int64_t trials = 100000;
  std::uint64_t seed = 0;
  std::int64_t max_steps = 1000000;
};

struct EscapeEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  std::int64_t trials = 0;
  std::int64_t truncated = 0;
};

/// Fraction of walks from a that hit b before returning to a. Each trial
/// runs on its own RNG stream (mt19937_64 seeded by splitmix64 mixing of
/// seed and trial index), so results are bit-identical regardless of
/// execution order. Truncated walks are excluded from the denominator.
EscapeEstimate simulate_escape(const WeightedDigraph& g, int a, int b, const WalkConfig& cfg);

/// Fraction of walks from x that hit a strictly before b.
EscapeEstimate simulate_voltage(const WeightedDigraph& g, int x, int a, int b,
                                const WalkConfig& cfg);

/// Fraction of walks from a whose first hit of b arrives via the direct
/// edge a -> b; the reference value is A_ab / C(a,b).
EscapeEstimate simulate_first_edge(const WeightedDigraph& g, int a, int b, const WalkConfig& cfg);

}  // namespace kronres
