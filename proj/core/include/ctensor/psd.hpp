#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctensor/admm.hpp"
#include "ctensor/circulant_tensor.hpp"
#include "ctensor/dense_tensor.hpp"

namespace ctensor {

enum class Decision { psd, psd_strict, not_psd, inconclusive };

/// What a decision rests on.
enum class Certificate {
  diag_dominance,             // c0 >= sum |associated entries|
  b0,                         // circulant B0 tensor
  b,                          // circulant B tensor (positive definite)
  nonpos_assoc,               // non-positive associated tensor: psd iff lambda_0 >= 0
  neg_alt,                    // negatively alternative associated tensor: psd iff lambda_{n/2} >= 0
  diag_root,                  // closed-form decision for diagonal root tensors
  doubly_circulant_reduction, // A x^m = (sum x)^2 q(x) for doubly circulant A
  numeric_evidence,           // multi-start ADMM
};

std::string_view to_string(Decision d);
std::string_view to_string(Certificate c);

struct PsdVerdict {
  Decision decision = Decision::inconclusive;
  std::optional<Certificate> certificate;
  /// For not_psd: a vector with A x^m < 0, re-verified before the verdict is emitted.
  std::optional<std::vector<double>> witness;
  /// Numeric trail, in insertion order.
  std::vector<std::pair<std::string, double>> details;
  std::string note;

  bool decided() const { return decision != Decision::inconclusive; }
  bool is_psd() const { return decision == Decision::psd || decision == Decision::psd_strict; }
  std::optional<double> detail(std::string_view key) const;
};

struct NecessaryCheck {
  std::string name;  // "c0", "lambda0", "lambda_half"
  double value = 0.0;
  bool pass = true;
  std::vector<double> witness;  // 1_1, 1 or the alternating vector
};

/// c0 >= 0, lambda_0 >= 0 and, for even n, lambda_{n/2} >= 0. Requires even order.
std::vector<NecessaryCheck> necessary_checks(const CirculantTensor& a);

std::optional<PsdVerdict> sufficient_diag_dominance(const CirculantTensor& a);

/// Circulant B0 -> psd, circulant B -> psd_strict.
std::optional<PsdVerdict> sufficient_b_class(const CirculantTensor& a);
/// Only circulant tensors qualify: a dense B0 tensor is not PSD in general.
std::optional<PsdVerdict> sufficient_b_class(const DenseTensor& a);

/// Exact decisions when the associated tensor is non-positive (lambda_0) or,
/// for even n, negatively alternative (lambda_{n/2}).
std::optional<PsdVerdict> exact_special_cases(const CirculantTensor& a);

enum class PsdMode { certificates_only, with_numeric };

struct PsdOptions {
  PsdMode mode = PsdMode::certificates_only;
  AdmmParams admm{.scale_beta = true};
  std::size_t restarts = 32;
  std::size_t threads = 1;
  /// Numeric refutation threshold relative to sum |root|.
  double numeric_threshold = 1e-6;
};

/// Decision chain: necessary checks, diagonal-root and doubly circulant exact
/// routes, diagonal dominance, B-class, the two exact special cases, and
/// finally (with_numeric) multi-start ADMM. Numeric evidence never yields psd.
PsdVerdict check_psd(const CirculantTensor& a, const PsdOptions& options = {});

struct BruteForceResult {
  double value = 0.0;
  std::vector<double> argmin;
  /// Lipschitz constant times grid spacing: value <= true min + error_bound.
  double error_bound = 0.0;
  std::size_t evaluations = 0;
};

/// Grid search over the unit sphere followed by local refinement. n = 2: angular
/// grid, default 2000 points; n = 3: Fibonacci lattice, default 10^4 points;
/// n = 4: hypercube faces with k = 20 subdivisions per edge. Test oracle only.
BruteForceResult brute_force_min(const DenseTensor& a, std::size_t resolution = 0);
BruteForceResult brute_force_min(const CirculantTensor& a, std::size_t resolution = 0);

/// Builds a not_psd verdict when apply_full(a, witness) < 0, otherwise an
/// inconclusive one recording the failed verification.
PsdVerdict refuted(const CirculantTensor& a, std::vector<double> witness,
                   std::optional<Certificate> certificate, std::string note);

}  // namespace ctensor
