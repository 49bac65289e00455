#pragma once

#include <cstdint>

#include <covenant/density.hpp>
#include <covenant/equilibrium.hpp>
#include <covenant/model.hpp>

namespace covenant {

struct MeanSE {
  double mean;
  double se;
};

struct SimulationReport {
  long long n;
  std::uint64_t seed;
  MeanSE lender_mean_nondisclosure;
  MeanSE lender_mean_disclosure;
  MeanSE manager_mean;
  MeanSE reneg_freq;
  long long n_disclosed;
  long long n_nondisclosed;
  double reneg_freq_analytic;  // closed-form benchmark for the same equilibrium
};

// Plays n paths of the solved equilibrium: draw the rule error, learn it with
// probability info_prob, disclose iff informed and x > x_star (ties withhold),
// then realize the state, the signal under the active rule, renegotiation,
// and the payoff cell at the matching face value.
//
// Deterministic by construction: each path owns a counter-based RNG stream
// keyed on (seed, path index) and paths are accumulated in fixed blocks of
// 4096 reduced in block order, so results are bit-identical for any worker
// count. workers <= 0 picks a hardware-based default.
SimulationReport simulate(const ModelParams& m, const ErrorDensity& density,
                          const EquilibriumSolution& eq, long long n, std::uint64_t seed,
                          int workers = 0);

}  // namespace covenant
