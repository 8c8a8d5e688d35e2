#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ctensor/circulant_tensor.hpp"

namespace ctensor {

/// Native eigenvalues lambda_k = f_A(omega_k), omega_k = exp(2 pi i k / n), k = 0..n-1.
struct NativeSpectrum {
  std::vector<std::complex<double>> lambdas;
  /// Associated-polynomial coefficients with exponents reduced mod n.
  std::vector<double> coeffs;
};

struct GershgorinDisc {
  double center = 0.0;
  double radius = 0.0;

  bool contains(std::complex<double> z, double tol = 0.0) const {
    return std::abs(z - center) <= radius + tol;
  }
};

enum class ExtremeKind { largest, smallest };

/// Which sign pattern of the associated tensor pins the extreme H-eigenvalue.
enum class ExtremeBasis { nonnegative_assoc, nonpositive_assoc, alternative_assoc, neg_alternative_assoc };

struct ExtremeCertificate {
  double value = 0.0;
  ExtremeKind kind = ExtremeKind::largest;
  ExtremeBasis basis = ExtremeBasis::nonnegative_assoc;
};

std::string_view to_string(ExtremeKind kind);
std::string_view to_string(ExtremeBasis basis);

/// Root tensor with its (1,..,1) entry zeroed.
DenseTensor associated_tensor(const CirculantTensor& a);

/// coeffs[s] = sum of root entries whose exponent (j1+..+j_{m-1}-m+1) is s mod n.
/// The reduction is valid because f_A is only ever evaluated at n-th roots of unity.
std::vector<double> associated_coeffs(const CirculantTensor& a);

/// f_A(t) evaluated term by term with unreduced exponents.
std::complex<double> associated_polynomial(const CirculantTensor& a, std::complex<double> t);

std::complex<double> root_of_unity(std::size_t n, std::size_t k);

/// v_k = (1, omega_k, .., omega_k^{n-1}).
ComplexVector native_eigenvector(std::size_t n, std::size_t k);

NativeSpectrum native_eigenvalues(const CirculantTensor& a);

/// lambda_0: the sum of all root entries (H-eigenvector 1).
double first_native(const CirculantTensor& a);

/// lambda_{n/2}: the alternating root sum (H-eigenvector (1,-1,1,..)). Requires even n.
double alternative_native(const CirculantTensor& a);

GershgorinDisc gershgorin(const CirculantTensor& a);

/// ||A x^{m-1} - lambda x^[m-1]||_inf / max(1, ||x||_inf^{m-1}).
double eigen_residual(const CirculantTensor& a, std::complex<double> lambda,
                      std::span<const std::complex<double>> x);
double eigen_residual(const DenseTensor& a, std::complex<double> lambda,
                      std::span<const std::complex<double>> x);

/// Acceptance threshold for eigen_residual.
inline constexpr double kEigenResidualTol = 1e-8;

/// The largest or smallest H-eigenvalue when a sign pattern of the associated
/// tensor identifies it: nonnegative -> lambda_0 largest, non-positive -> lambda_0
/// smallest, and for even n alternative -> lambda_{n/2} largest, negatively
/// alternative -> lambda_{n/2} smallest.
std::optional<ExtremeCertificate> extreme_h_eigenvalue(const CirculantTensor& a);

}  // namespace ctensor
