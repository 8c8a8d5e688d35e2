#include "ctensor/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ctensor/multilinear.hpp"
#include "ctensor/structure.hpp"

namespace ctensor {

std::string_view to_string(ExtremeKind kind) {
  return kind == ExtremeKind::largest ? "largest" : "smallest";
}

std::string_view to_string(ExtremeBasis basis) {
  switch (basis) {
    case ExtremeBasis::nonnegative_assoc: return "nonnegative_associated";
    case ExtremeBasis::nonpositive_assoc: return "nonpositive_associated";
    case ExtremeBasis::alternative_assoc: return "alternative_associated";
    case ExtremeBasis::neg_alternative_assoc: return "negatively_alternative_associated";
  }
  return "unknown";
}

DenseTensor associated_tensor(const CirculantTensor& a) {
  DenseTensor assoc = a.root();
  assoc.set_flat(0, 0.0);
  return assoc;
}

std::vector<double> associated_coeffs(const CirculantTensor& a) {
  const std::size_t n = a.dim();
  const DenseTensor& root = a.root();
  std::vector<std::vector<double>> buckets(n);
  Index sigma(root.order(), 0);
  std::size_t flat = 0;
  do {
    std::size_t exponent = 0;
    for (std::size_t s : sigma) exponent += s;
    buckets[exponent % n].push_back(root.at_flat(flat++));
  } while (next_index(sigma, n));
  std::vector<double> coeffs(n);
  for (std::size_t s = 0; s < n; ++s) coeffs[s] = exact_sum(buckets[s]);
  return coeffs;
}

std::complex<double> associated_polynomial(const CirculantTensor& a, std::complex<double> t) {
  const DenseTensor& root = a.root();
  std::complex<double> value{};
  Index sigma(root.order(), 0);
  std::size_t flat = 0;
  do {
    std::size_t exponent = 0;
    for (std::size_t s : sigma) exponent += s;
    value += root.at_flat(flat++) * std::pow(t, static_cast<int>(exponent));
  } while (next_index(sigma, a.dim()));
  return value;
}

std::complex<double> root_of_unity(std::size_t n, std::size_t k) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

ComplexVector native_eigenvector(std::size_t n, std::size_t k) {
  ComplexVector v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = root_of_unity(n, (k * j) % n);
  return v;
}

NativeSpectrum native_eigenvalues(const CirculantTensor& a) {
  const std::size_t n = a.dim();
  NativeSpectrum spec;
  spec.coeffs = associated_coeffs(a);
  spec.lambdas.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> lambda{};
    for (std::size_t s = 0; s < n; ++s) lambda += spec.coeffs[s] * root_of_unity(n, (k * s) % n);
    spec.lambdas[k] = lambda;
  }
  // lambda_0 and lambda_{n/2} are real by construction; drop rounding noise.
  spec.lambdas[0] = first_native(a);
  if (n % 2 == 0) spec.lambdas[n / 2] = alternative_native(a);
  return spec;
}

double first_native(const CirculantTensor& a) { return exact_sum(a.root().entries()); }

double alternative_native(const CirculantTensor& a) {
  const std::size_t n = a.dim();
  if (n % 2 != 0) throw std::domain_error("the alternative native eigenvalue needs even n");
  const DenseTensor& root = a.root();
  std::vector<double> terms(root.size());
  Index sigma(root.order(), 0);
  std::size_t flat = 0;
  do {
    std::size_t exponent = 0;
    for (std::size_t s : sigma) exponent += s;
    const double v = root.at_flat(flat);
    terms[flat++] = exponent % 2 == 0 ? v : -v;
  } while (next_index(sigma, n));
  return exact_sum(terms);
}

GershgorinDisc gershgorin(const CirculantTensor& a) {
  const auto assoc = associated_tensor(a);
  std::vector<double> abs_entries(assoc.entries().begin(), assoc.entries().end());
  for (double& v : abs_entries) v = std::abs(v);
  return {a.diagonal_entry(), exact_sum(abs_entries)};
}

namespace {

template <typename Tensor>
double residual_impl(const Tensor& a, std::complex<double> lambda,
                     std::span<const std::complex<double>> x) {
  double xnorm = 0.0;
  for (const auto& v : x) xnorm = std::max(xnorm, std::abs(v));
  if (xnorm == 0.0) throw std::invalid_argument("eigen_residual: zero vector");
  const auto ax = apply_partial(a, x);
  const int power = static_cast<int>(a.order()) - 1;
  double worst = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, std::abs(ax[j] - lambda * std::pow(x[j], power)));
  }
  return worst / std::max(1.0, std::pow(xnorm, power));
}

}  // namespace

double eigen_residual(const CirculantTensor& a, std::complex<double> lambda,
                      std::span<const std::complex<double>> x) {
  return residual_impl(a, lambda, x);
}

double eigen_residual(const DenseTensor& a, std::complex<double> lambda,
                      std::span<const std::complex<double>> x) {
  return residual_impl(a, lambda, x);
}

std::optional<ExtremeCertificate> extreme_h_eigenvalue(const CirculantTensor& a) {
  const auto assoc = associated_tensor(a);
  if (is_nonnegative(assoc)) {
    return ExtremeCertificate{first_native(a), ExtremeKind::largest, ExtremeBasis::nonnegative_assoc};
  }
  if (is_nonpositive(assoc)) {
    return ExtremeCertificate{first_native(a), ExtremeKind::smallest, ExtremeBasis::nonpositive_assoc};
  }
  if (a.dim() % 2 == 0) {
    if (is_alternative(assoc)) {
      return ExtremeCertificate{alternative_native(a), ExtremeKind::largest,
                                ExtremeBasis::alternative_assoc};
    }
    if (is_negatively_alternative(assoc)) {
      return ExtremeCertificate{alternative_native(a), ExtremeKind::smallest,
                                ExtremeBasis::neg_alternative_assoc};
    }
  }
  return std::nullopt;
}

}  // namespace ctensor
