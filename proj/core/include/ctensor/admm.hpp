#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ctensor/circulant_tensor.hpp"
#include "ctensor/dense_tensor.hpp"

namespace ctensor {

/// Alternating direction method of multipliers for
///
///   min f(x^1, .., x^m) = A x^1 .. x^m   s.t.  sum_j A_j x^j = 0,  ||x^j||_2 = 1,
///
/// where the consensus operator stacks the cyclic differences x^b - x^{b+1}.
/// At consensus f equals the homogeneous form A x^m on the unit sphere.
struct AdmmParams {
  double beta = 1.2;
  double epsilon = 1e-6;
  std::size_t max_iters = 5000;
  std::uint64_t seed = 0;
  /// Use max(beta, 2 ||sym(A)||_F) as the penalty. With a fixed beta the blocks
  /// can oscillate between x and -x on tensors with large gradients.
  bool scale_beta = false;

  void validate() const;
};

/// The penalty minimize uses for the symmetrized tensor `sym`.
double effective_beta(const AdmmParams& params, const DenseTensor& sym);

struct AdmmState {
  std::vector<std::vector<double>> blocks;  // m unit vectors in R^n
  std::vector<double> multiplier;           // length m*n
  std::size_t iteration = 0;
};

struct AdmmResult {
  double value = 0.0;  // A x^m at `point`
  std::vector<double> point;
  std::size_t iterations = 0;
  bool converged = false;
  double consensus_gap = 0.0;  // max pairwise distance between blocks
  double beta = 0.0;           // penalty used
  double elapsed_ms = 0.0;
};

/// Stacked cyclic differences: block b is x^b - x^{b+1} (block m wraps to x^1).
std::vector<double> consensus_residual(const AdmmState& state);

/// g with f = g^T x^slot; `slot` is 0-based.
std::vector<double> block_gradient(const DenseTensor& a, const AdmmState& state, std::size_t slot);

/// Minimizer of b^T x over the unit sphere: -b/||b||, or `prev` when ||b|| <= 1e-14.
std::vector<double> subproblem(std::span<const double> b, std::span<const double> prev);

/// Uniform point on the unit sphere from a seeded normal draw.
std::vector<double> random_unit_vector(std::size_t n, std::uint64_t seed, std::uint64_t stream);

AdmmState initial_state(std::size_t order, std::span<const double> x0);

/// Runs Algorithm-style ADMM from `x0` (or a seeded random unit start).
AdmmResult minimize(const DenseTensor& a, const AdmmParams& params,
                    std::optional<std::vector<double>> x0 = std::nullopt);
AdmmResult minimize(const CirculantTensor& a, const AdmmParams& params,
                    std::optional<std::vector<double>> x0 = std::nullopt);

struct MultiStartResult {
  AdmmResult best;
  std::vector<double> values;  // per restart, in restart order
  std::vector<std::size_t> iterations;
  double iterations_mean = 0.0;
  double time_mean_ms = 0.0;
  /// Fraction of restarts within kSuccessTol of the supplied reference optimum.
  std::optional<double> success_rate;
};

inline constexpr double kSuccessTol = 1e-5;

/// Independent restarts from seeded random starts (restart r uses stream r).
/// Restarts may run on `threads` workers; results are merged in restart order
/// so the output does not depend on scheduling.
MultiStartResult multi_start(const DenseTensor& a, const AdmmParams& params, std::size_t restarts,
                             std::optional<double> reference = std::nullopt,
                             std::size_t threads = 1);
MultiStartResult multi_start(const CirculantTensor& a, const AdmmParams& params,
                             std::size_t restarts, std::optional<double> reference = std::nullopt,
                             std::size_t threads = 1);

}  // namespace ctensor
