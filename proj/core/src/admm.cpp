#include "ctensor/admm.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "ctensor/multilinear.hpp"

namespace ctensor {
namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double consensus_gap(const AdmmState& s) {
  double worst = 0.0;
  for (std::size_t a = 0; a < s.blocks.size(); ++a) {
    for (std::size_t b = a + 1; b < s.blocks.size(); ++b) {
      double d = 0.0;
      for (std::size_t i = 0; i < s.blocks[a].size(); ++i) {
        const double t = s.blocks[a][i] - s.blocks[b][i];
        d += t * t;
      }
      worst = std::max(worst, std::sqrt(d));
    }
  }
  return worst;
}

}  // namespace

void AdmmParams::validate() const {
  if (!(beta > 0.0)) throw std::invalid_argument("ADMM beta must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("ADMM epsilon must be positive");
  if (max_iters == 0) throw std::invalid_argument("ADMM max_iters must be positive");
}

double effective_beta(const AdmmParams& params, const DenseTensor& sym) {
  if (!params.scale_beta) return params.beta;
  double fro = 0.0;
  for (double v : sym.entries()) fro += v * v;
  return std::max(params.beta, 2.0 * std::sqrt(fro));
}

std::vector<double> consensus_residual(const AdmmState& state) {
  const std::size_t m = state.blocks.size();
  if (m == 0) return {};
  const std::size_t n = state.blocks[0].size();
  std::vector<double> r(m * n);
  for (std::size_t b = 0; b < m; ++b) {
    const auto& cur = state.blocks[b];
    const auto& nxt = state.blocks[(b + 1) % m];
    for (std::size_t i = 0; i < n; ++i) r[b * n + i] = cur[i] - nxt[i];
  }
  return r;
}

std::vector<double> block_gradient(const DenseTensor& a, const AdmmState& state, std::size_t slot) {
  const std::size_t m = a.order();
  const std::size_t n = a.dim();
  if (state.blocks.size() != m) throw std::invalid_argument("state has the wrong number of blocks");
  if (slot >= m) throw std::out_of_range("block slot out of range");
  std::vector<double> g(n, 0.0);
  Index idx(m, 0);
  std::size_t flat = 0;
  do {
    const double v = a.at_flat(flat++);
    if (v == 0.0) continue;
    double prod = v;
    for (std::size_t l = 0; l < m; ++l) {
      if (l != slot) prod *= state.blocks[l][idx[l]];
    }
    g[idx[slot]] += prod;
  } while (next_index(idx, n));
  return g;
}

std::vector<double> subproblem(std::span<const double> b, std::span<const double> prev) {
  const double nb = norm2(b);
  if (nb <= 1e-14) return {prev.begin(), prev.end()};
  std::vector<double> x(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) x[i] = -b[i] / nb;
  // Renormalize so the block stays on the sphere to rounding.
  const double nx = norm2(x);
  for (double& v : x) v /= nx;
  return x;
}

std::vector<double> random_unit_vector(std::size_t n, std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(n);
  double nx = 0.0;
  while (nx < 1e-12) {
    for (double& v : x) v = normal(rng);
    nx = norm2(x);
  }
  for (double& v : x) v /= nx;
  return x;
}

AdmmState initial_state(std::size_t order, std::span<const double> x0) {
  const double nx = norm2(x0);
  if (nx == 0.0) throw std::invalid_argument("ADMM start must be nonzero");
  std::vector<double> unit(x0.begin(), x0.end());
  for (double& v : unit) v /= nx;
  AdmmState s;
  s.blocks.assign(order, unit);
  s.multiplier.assign(order * x0.size(), 0.0);
  return s;
}

namespace {

AdmmResult minimize_symmetric(const DenseTensor& a, const DenseTensor& sym,
                              const AdmmParams& params, std::optional<std::vector<double>> x0) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t m = a.order();
  const std::size_t n = a.dim();
  if (!x0) x0 = random_unit_vector(n, params.seed, 0);
  if (x0->size() != n) throw std::invalid_argument("start vector has the wrong length");

  AdmmState state = initial_state(m, *x0);
  const double beta = effective_beta(params, sym);
  AdmmResult result;
  std::vector<double> b(n);
  for (std::size_t k = 0; k < params.max_iters; ++k) {
    double change_sq = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      // b = grad_j f - A_j^T lambda + beta A_j^T (sum_{l != j} A_l x^l),
      // with A_j^T v = v_j - v_{j-1} and A_j^T A_j = 2I.
      const auto g = block_gradient(sym, state, j);
      const auto res = consensus_residual(state);
      const std::size_t prev = (j + m - 1) % m;
      for (std::size_t i = 0; i < n; ++i) {
        const double at_lambda = state.multiplier[j * n + i] - state.multiplier[prev * n + i];
        const double at_res = res[j * n + i] - res[prev * n + i];
        b[i] = g[i] - at_lambda + beta * (at_res - 2.0 * state.blocks[j][i]);
      }
      auto updated = subproblem(b, state.blocks[j]);
      for (std::size_t i = 0; i < n; ++i) {
        const double d = updated[i] - state.blocks[j][i];
        change_sq += d * d;
      }
      state.blocks[j] = std::move(updated);
    }
    const auto res = consensus_residual(state);
    for (std::size_t i = 0; i < res.size(); ++i) {
      const double d = beta * res[i];
      state.multiplier[i] -= d;
      change_sq += d * d;
    }
    state.iteration = k + 1;
    if (std::sqrt(change_sq) < params.epsilon) {
      result.converged = true;
      break;
    }
  }

  result.iterations = state.iteration;
  result.point = state.blocks[0];
  result.value = apply_full(a, result.point);
  result.consensus_gap = consensus_gap(state);
  result.beta = beta;
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace

// The splitting runs on sym(A); at consensus its form equals A x^m.
AdmmResult minimize(const DenseTensor& a, const AdmmParams& params,
                    std::optional<std::vector<double>> x0) {
  params.validate();
  return minimize_symmetric(a, symmetrize(a), params, std::move(x0));
}

AdmmResult minimize(const CirculantTensor& a, const AdmmParams& params,
                    std::optional<std::vector<double>> x0) {
  return minimize(a.materialize(), params, std::move(x0));
}

MultiStartResult multi_start(const DenseTensor& a, const AdmmParams& params, std::size_t restarts,
                             std::optional<double> reference, std::size_t threads) {
  if (restarts == 0) throw std::invalid_argument("multi_start needs at least one restart");
  params.validate();
  const DenseTensor sym = symmetrize(a);
  std::vector<AdmmResult> runs(restarts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < restarts; r = next++) {
      runs[r] = minimize_symmetric(a, sym, params, random_unit_vector(a.dim(), params.seed, r));
    }
  };
  const std::size_t pool = std::clamp<std::size_t>(threads, 1, restarts);
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(pool);
    for (std::size_t t = 0; t < pool; ++t) workers.emplace_back(worker);
  }

  MultiStartResult out;
  std::size_t best = 0;
  std::size_t hits = 0;
  double iters = 0.0;
  double ms = 0.0;
  for (std::size_t r = 0; r < restarts; ++r) {
    out.values.push_back(runs[r].value);
    out.iterations.push_back(runs[r].iterations);
    if (runs[r].value < runs[best].value) best = r;
    if (reference && std::abs(runs[r].value - *reference) <= kSuccessTol) ++hits;
    iters += static_cast<double>(runs[r].iterations);
    ms += runs[r].elapsed_ms;
  }
  out.best = runs[best];
  out.iterations_mean = iters / static_cast<double>(restarts);
  out.time_mean_ms = ms / static_cast<double>(restarts);
  if (reference) out.success_rate = static_cast<double>(hits) / static_cast<double>(restarts);
  return out;
}

MultiStartResult multi_start(const CirculantTensor& a, const AdmmParams& params,
                             std::size_t restarts, std::optional<double> reference,
                             std::size_t threads) {
  return multi_start(a.materialize(), params, restarts, reference, threads);
}

}  // namespace ctensor
