#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ctensor/circulant_tensor.hpp"
#include "ctensor/psd.hpp"

namespace ctensor {

/// Circulant tensor whose root is diagonal: root(j,..,j) = c_{j-1}, zero elsewhere.
struct DiagRootSpec {
  std::size_t order = 2;
  std::vector<double> c;  // (c_0, .., c_{n-1}); indices wrap mod n

  std::size_t dim() const noexcept { return c.size(); }
  void validate() const;
};

CirculantTensor expand(const DiagRootSpec& spec);

/// The diagonal of the root when every off-diagonal root entry is zero.
std::optional<DiagRootSpec> diag_root_of(const CirculantTensor& a);

/// n x n circulant matrix with first column (c_0, .., c_{n-1}): C(i,j) = c_{(i-j) mod n}.
Eigen::MatrixXd circulant_matrix(std::span<const double> c);

/// mu_k = sum_j c_j omega_k^j for k = 0..n-1.
std::vector<std::complex<double>> circulant_matrix_eigenvalues(std::span<const double> c);

struct DiagRootEigenpair {
  std::size_t k = 0;
  std::size_t l = 0;
  std::complex<double> lambda;
  ComplexVector vector;  // y_j = eta^{j-1}, eta^{m-1} = omega_k
  double residual = 0.0;
};

/// For each k and l = 0..m-2 the pair (mu_k, y_kl) with
/// eta_kl = exp(2 pi i (k + l n) / (n (m-1))), so that y^[m-1] = v_k. Requires m >= 3.
std::vector<DiagRootEigenpair> diag_root_eigenpairs(const DiagRootSpec& spec);

/// A x^m = sum_{j,l} c_{l-j} x_j x_l^{m-1}.
double diag_root_form(const DiagRootSpec& spec, std::span<const double> x);

/// lambda_0 = sum c_j.
double diag_root_first_native(const DiagRootSpec& spec);
/// lambda_{n/2} = sum c_j (-1)^{j(m-1)}; requires even n.
double diag_root_alternative_native(const DiagRootSpec& spec);

/// Closed-form decision for even order: necessary conditions, then
/// c0 >= sum_{j>=1} |c_j| (sufficient), which is also necessary when the tail
/// is non-positive or k-alternative. Inconclusive otherwise.
PsdVerdict diag_root_psd(const DiagRootSpec& spec);

/// (sum_k x_k) * (A_1 x^{m-1}) for a doubly circulant A.
double doubly_reduce(const CirculantTensor& a, std::span<const double> x);

/// (sum_k x_k)^2 * (A_11 x^{m-2}) when the root is itself doubly circulant.
std::optional<double> doubly_reduce_twice(const CirculantTensor& a, std::span<const double> x);

/// Exact division of the root form A_1 x^{m-1} by (x_1 + .. + x_n).
struct SumFactorization {
  bool divisible = false;
  double remainder = 0.0;  // largest remainder coefficient
  /// Symmetric order m-2 tensor q with A x^m = (sum x)^2 q x^{m-2}; set when divisible.
  std::optional<DenseTensor> quotient;
};

SumFactorization factor_coordinate_sum(const CirculantTensor& a);

/// PSD decision for even-order doubly circulant tensors. A x^m = (sum x) A_1 x^{m-1}
/// is PSD exactly when A_1 x^{m-1} = (sum x) q(x) with q PSD; q is decided
/// exactly for order 2 and through the certificate chain when it is circulant.
PsdVerdict doubly_psd(const CirculantTensor& a);

}  // namespace ctensor
