#include <covenant/simulate.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include <covenant/payoffs.hpp>

namespace covenant {

namespace {

constexpr long long kBlockPaths = 4096;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream: the state depends only on (seed, path), so path i
// sees the same draws no matter which thread runs it.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t path)
      : state_(mix64(seed + 0x9e3779b97f4a7c15ULL * (path + 1))) {}

  double next_unit() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return double(mix64(state_) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

struct BlockSums {
  double manager = 0.0, manager2 = 0.0;
  double lender_nd = 0.0, lender_nd2 = 0.0;
  double lender_d = 0.0, lender_d2 = 0.0;
  long long n_d = 0, n_nd = 0, reneg = 0;
};

MeanSE mean_se(double sum, double sumsq, long long n) {
  if (n <= 0)
    return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  const double mean = sum / double(n);
  if (n == 1) return {mean, 0.0};
  const double var = std::max(0.0, (sumsq - double(n) * mean * mean) / double(n - 1));
  return {mean, std::sqrt(var / double(n))};
}

}  // namespace

SimulationReport simulate(const ModelParams& m, const ErrorDensity& density,
                          const EquilibriumSolution& eq, long long n, std::uint64_t seed,
                          int workers) {
  if (n <= 0) throw std::invalid_argument("simulate: path count must be positive");

  // all reachable payoff cells, priced once
  const auto nd_gg = payoff_cell(m, eq.d0, State::good, Signal::good);
  const auto nd_gb = payoff_cell(m, eq.d0, State::good, Signal::bad);
  const auto nd_bg = payoff_cell(m, eq.d0, State::bad, Signal::good);
  const auto nd_bb = payoff_cell(m, eq.d0, State::bad, Signal::bad);
  const auto d_gg = payoff_cell(m, eq.d1, State::good, Signal::good);
  const auto d_bb = payoff_cell(m, eq.d1, State::bad, Signal::bad);

  const long long n_blocks = (n + kBlockPaths - 1) / kBlockPaths;
  std::vector<BlockSums> blocks(static_cast<std::size_t>(n_blocks));

  auto run_block = [&](long long b) {
    BlockSums& s = blocks[std::size_t(b)];
    const long long lo = b * kBlockPaths;
    const long long hi = std::min(n, lo + kBlockPaths);
    for (long long path = lo; path < hi; ++path) {
      PathRng rng(seed, std::uint64_t(path));
      // fixed draw order keeps every path's stream identical regardless of
      // which branches fire
      const double u_informed = rng.next_unit();
      const double u_x = rng.next_unit();
      const double u_theta = rng.next_unit();
      const double u_signal = rng.next_unit();

      const bool informed = u_informed < m.info_prob;
      const double x = density.sample(u_x);
      const bool disclose = informed && x > eq.x_star;
      const State state = u_theta < 0.5 ? State::good : State::bad;

      const PayoffCell* cell;
      bool reneg = false;
      if (disclose) {
        cell = state == State::good ? &d_gg : &d_bb;
      } else {
        const double err_prob = state == State::good ? std::max(x, 0.0) : std::max(-x, 0.0);
        const bool err = u_signal < err_prob;
        reneg = err;
        if (state == State::good)
          cell = err ? &nd_gb : &nd_gg;
        else
          cell = err ? &nd_bg : &nd_bb;
      }

      s.manager += cell->manager;
      s.manager2 += cell->manager * cell->manager;
      if (disclose) {
        s.lender_d += cell->lender;
        s.lender_d2 += cell->lender * cell->lender;
        ++s.n_d;
      } else {
        s.lender_nd += cell->lender;
        s.lender_nd2 += cell->lender * cell->lender;
        ++s.n_nd;
      }
      if (reneg) ++s.reneg;
    }
  };

  int nworkers = workers > 0 ? workers : int(std::thread::hardware_concurrency());
  if (nworkers < 1) nworkers = 1;
  nworkers = int(std::min<long long>(nworkers, n_blocks));

  if (nworkers == 1) {
    for (long long b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(nworkers));
    for (int w = 0; w < nworkers; ++w)
      pool.emplace_back([&] {
        for (long long b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) run_block(b);
      });
    for (auto& t : pool) t.join();
  }

  // reduce in block order so totals do not depend on thread scheduling
  BlockSums total;
  for (const auto& s : blocks) {
    total.manager += s.manager;
    total.manager2 += s.manager2;
    total.lender_nd += s.lender_nd;
    total.lender_nd2 += s.lender_nd2;
    total.lender_d += s.lender_d;
    total.lender_d2 += s.lender_d2;
    total.n_d += s.n_d;
    total.n_nd += s.n_nd;
    total.reneg += s.reneg;
  }

  SimulationReport rep;
  rep.n = n;
  rep.seed = seed;
  rep.manager_mean = mean_se(total.manager, total.manager2, n);
  rep.lender_mean_nondisclosure = mean_se(total.lender_nd, total.lender_nd2, total.n_nd);
  rep.lender_mean_disclosure = mean_se(total.lender_d, total.lender_d2, total.n_d);
  rep.reneg_freq = mean_se(double(total.reneg), double(total.reneg), n);
  rep.n_disclosed = total.n_d;
  rep.n_nondisclosed = total.n_nd;
  rep.reneg_freq_analytic =
      -0.5 * m.info_prob * density.partial_x_moment(-1.0, eq.x_star) +
      (1.0 - m.info_prob) * density.partial_x_moment(0.0, 1.0);
  return rep;
}

}  // namespace covenant
