#include "ctensor/special_root.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "ctensor/multilinear.hpp"
#include "ctensor/numeric.hpp"
#include "ctensor/spectral.hpp"
#include "ctensor/structure.hpp"

namespace ctensor {
namespace {

using Monomial = std::vector<unsigned>;
// Descending lex order with x_1 > x_2 > .. > x_n; begin() is the leading term.
using Polynomial = std::map<Monomial, double, std::greater<Monomial>>;

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double coordinate_sum(std::span<const double> x) { return std::accumulate(x.begin(), x.end(), 0.0); }

Polynomial form_polynomial(const DenseTensor& t) {
  Polynomial p;
  Index idx(t.order(), 0);
  Monomial e(t.dim());
  std::size_t flat = 0;
  do {
    const double v = t.at_flat(flat++);
    if (v == 0.0) continue;
    std::fill(e.begin(), e.end(), 0u);
    for (std::size_t i : idx) ++e[i];
    p[e] += v;
  } while (next_index(idx, t.dim()));
  return p;
}

double factorial(unsigned k) {
  double f = 1.0;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

DenseTensor symmetric_tensor_of(const Polynomial& q, std::size_t order, std::size_t n) {
  DenseTensor t(order, n);
  Index idx(order, 0);
  Monomial e(n);
  std::size_t flat = 0;
  do {
    std::fill(e.begin(), e.end(), 0u);
    for (std::size_t i : idx) ++e[i];
    const auto it = q.find(e);
    if (it != q.end()) {
      double count = factorial(static_cast<unsigned>(order));
      for (unsigned k : e) count /= factorial(k);
      t.set_flat(flat, it->second / count);
    }
    ++flat;
  } while (next_index(idx, n));
  return t;
}

std::vector<double> with_offset(std::span<const double> z, double t) {
  std::vector<double> x(z.begin(), z.end());
  for (double& v : x) v += t;
  return x;
}

// Moves z along the all-ones direction until A x^m < 0 is confirmed.
std::optional<std::vector<double>> lift_witness(const CirculantTensor& a, std::span<const double> z,
                                                double direction) {
  const double scale = std::max(norm2(z), 1.0);
  if (direction == 0.0) {
    if (apply_full(a, z) < 0.0) return std::vector<double>(z.begin(), z.end());
    for (double tau = 0.25 * scale; tau > 1e-9 * scale; tau *= 0.5) {
      for (double t : {tau, -tau}) {
        auto x = with_offset(z, t);
        if (apply_full(a, x) < 0.0) return x;
      }
    }
    return std::nullopt;
  }
  for (double tau = 0.25 * scale; tau > 1e-9 * scale; tau *= 0.5) {
    auto x = with_offset(z, direction * tau);
    if (apply_full(a, x) < 0.0) return x;
  }
  return std::nullopt;
}

PsdVerdict lifted(const CirculantTensor& a, std::optional<std::vector<double>> x, std::string note) {
  if (!x) {
    PsdVerdict v;
    v.certificate = Certificate::doubly_circulant_reduction;
    v.note = "no verified witness found: " + note;
    return v;
  }
  return refuted(a, std::move(*x), Certificate::doubly_circulant_reduction, std::move(note));
}

// A vector with sum zero where the root form is far from zero.
std::vector<double> hyperplane_probe(const DenseTensor& root) {
  const std::size_t n = root.dim();
  std::vector<double> best(n, 0.0);
  double best_val = -1.0;
  auto consider = [&](std::vector<double> z) {
    const double nz = norm2(z);
    if (nz == 0.0) return;
    for (double& v : z) v /= nz;
    const double g = std::abs(apply_full(root, z));
    if (g > best_val) {
      best_val = g;
      best = std::move(z);
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<double> z(n, 0.0);
      z[i] = 1.0;
      z[j] = -1.0;
      consider(std::move(z));
    }
  }
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  for (int r = 0; r < 64; ++r) {
    std::vector<double> z(n);
    for (double& v : z) v = normal(rng);
    const double mean = coordinate_sum(z) / static_cast<double>(n);
    for (double& v : z) v -= mean;
    consider(std::move(z));
  }
  return best;
}

}  // namespace

void DiagRootSpec::validate() const {
  if (order < 2) throw std::invalid_argument("diagonal-root order must be at least 2");
  if (c.size() < 2) throw std::invalid_argument("diagonal-root dimension must be at least 2");
  for (double v : c) {
    if (!std::isfinite(v)) throw std::invalid_argument("diagonal-root coefficients must be finite");
  }
}

CirculantTensor expand(const DiagRootSpec& spec) {
  spec.validate();
  const std::size_t n = spec.dim();
  DenseTensor root(spec.order - 1, n);
  for (std::size_t j = 0; j < n; ++j) {
    Index idx(spec.order - 1, j);
    root.set_flat(root.flat_index_zero(idx), spec.c[j]);
  }
  return CirculantTensor(std::move(root));
}

std::optional<DiagRootSpec> diag_root_of(const CirculantTensor& a) {
  const DenseTensor& root = a.root();
  const std::size_t n = a.dim();
  DiagRootSpec spec{a.order(), std::vector<double>(n, 0.0)};
  Index idx(root.order(), 0);
  std::size_t flat = 0;
  do {
    const double v = root.at_flat(flat++);
    const bool diagonal = std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return i == idx[0]; });
    if (diagonal) {
      spec.c[idx[0]] = v;
    } else if (v != 0.0) {
      return std::nullopt;
    }
  } while (next_index(idx, n));
  return spec;
}

Eigen::MatrixXd circulant_matrix(std::span<const double> c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = c[static_cast<std::size_t>((i - j + n) % n)];
  }
  return m;
}

std::vector<std::complex<double>> circulant_matrix_eigenvalues(std::span<const double> c) {
  const std::size_t n = c.size();
  std::vector<std::complex<double>> mu(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += c[j] * root_of_unity(n, (j * k) % n);
    mu[k] = s;
  }
  return mu;
}

std::vector<DiagRootEigenpair> diag_root_eigenpairs(const DiagRootSpec& spec) {
  spec.validate();
  if (spec.order < 3) throw std::invalid_argument("diagonal-root eigenpairs need order >= 3");
  const std::size_t n = spec.dim();
  const std::size_t m = spec.order;
  const auto a = expand(spec);
  const auto mu = circulant_matrix_eigenvalues(spec.c);
  std::vector<DiagRootEigenpair> out;
  out.reserve(n * (m - 1));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l + 1 < m; ++l) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k + l * n) /
                           static_cast<double>(n * (m - 1));
      const std::complex<double> eta = std::polar(1.0, angle);
      DiagRootEigenpair p{k, l, mu[k], ComplexVector(n), 0.0};
      std::complex<double> y = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        p.vector[j] = y;
        y *= eta;
      }
      p.residual = eigen_residual(a, p.lambda, p.vector);
      out.push_back(std::move(p));
    }
  }
  return out;
}

double diag_root_form(const DiagRootSpec& spec, std::span<const double> x) {
  spec.validate();
  const std::size_t n = spec.dim();
  if (x.size() != n) throw std::invalid_argument("vector length does not match the dimension");
  std::vector<double> powered(n);
  for (std::size_t l = 0; l < n; ++l) powered[l] = std::pow(x[l], static_cast<double>(spec.order - 1));
  std::vector<double> terms;
  terms.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) terms.push_back(spec.c[(l + n - j) % n] * x[j] * powered[l]);
  }
  return exact_sum(terms);
}

double diag_root_first_native(const DiagRootSpec& spec) { return exact_sum(spec.c); }

double diag_root_alternative_native(const DiagRootSpec& spec) {
  const std::size_t n = spec.dim();
  if (n % 2 != 0) throw std::domain_error("lambda_{n/2} needs even n");
  std::vector<double> terms(n);
  for (std::size_t j = 0; j < n; ++j) terms[j] = (j * (spec.order - 1)) % 2 == 0 ? spec.c[j] : -spec.c[j];
  return exact_sum(terms);
}

PsdVerdict diag_root_psd(const DiagRootSpec& spec) {
  spec.validate();
  if (spec.order % 2 != 0) throw std::domain_error("PSD decisions need even order");
  const std::size_t n = spec.dim();
  const auto a = expand(spec);
  const double c0 = spec.c[0];
  const std::span<const double> tail(spec.c.data() + 1, n - 1);
  std::vector<double> abs_tail(tail.size());
  std::transform(tail.begin(), tail.end(), abs_tail.begin(), [](double v) { return std::abs(v); });
  const double tail_abs = exact_sum(abs_tail);
  const double lambda0 = diag_root_first_native(spec);

  std::vector<std::pair<std::string, double>> trail{{"c0", c0}, {"lambda0", lambda0}, {"tail_abs_sum", tail_abs}};
  auto finish = [&](PsdVerdict v) {
    v.details.insert(v.details.begin(), trail.begin(), trail.end());
    return v;
  };

  if (c0 < 0.0) {
    std::vector<double> e1(n, 0.0);
    e1[0] = 1.0;
    return finish(refuted(a, e1, Certificate::diag_root, "negative diagonal entry"));
  }
  if (lambda0 < 0.0) return finish(refuted(a, std::vector<double>(n, 1.0), Certificate::diag_root, "lambda0 < 0"));
  if (n % 2 == 0) {
    const double half = diag_root_alternative_native(spec);
    trail.emplace_back("lambda_half", half);
    if (half < 0.0) return finish(refuted(a, hat_one_k(n, 1), Certificate::diag_root, "lambda_{n/2} < 0"));
  }

  const bool dominant = c0 >= tail_abs;
  if (dominant) {
    PsdVerdict v;
    v.decision = Decision::psd;
    v.certificate = Certificate::diag_dominance;
    v.note = "c0 >= sum |c_j|";
    return finish(std::move(v));
  }

  if (std::all_of(tail.begin(), tail.end(), [](double v) { return v <= 0.0; })) {
    // Non-positive tail: c0 >= sum |c_j| is lambda0 >= 0, already refuted above.
    return finish(refuted(a, std::vector<double>(n, 1.0), Certificate::diag_root, "non-positive tail"));
  }
  for (std::size_t k = 1; 2 * k <= n; ++k) {
    if (n % (2 * k) != 0 || !is_k_alternative(tail, k)) continue;
    trail.emplace_back("k_alternative", static_cast<double>(k));
    auto v = refuted(a, hat_one_k(n, k), Certificate::diag_root, "k-alternative tail");
    return finish(std::move(v));
  }
  PsdVerdict v;
  v.note = "diagonal root outside the decided cases";
  return finish(std::move(v));
}

double doubly_reduce(const CirculantTensor& a, std::span<const double> x) {
  if (a.order() < 3 || !is_doubly_circulant(a)) throw std::invalid_argument("tensor is not doubly circulant");
  if (x.size() != a.dim()) throw std::invalid_argument("vector length does not match the dimension");
  return coordinate_sum(x) * apply_full(a.root(), x);
}

std::optional<double> doubly_reduce_twice(const CirculantTensor& a, std::span<const double> x) {
  if (a.order() < 3 || !is_doubly_circulant(a)) throw std::invalid_argument("tensor is not doubly circulant");
  if (x.size() != a.dim()) throw std::invalid_argument("vector length does not match the dimension");
  if (a.order() < 4) return std::nullopt;
  const auto a1 = CirculantTensor::from_dense(a.root());
  if (!is_doubly_circulant(a1)) return std::nullopt;
  const double s = coordinate_sum(x);
  return s * s * apply_full(a1.root(), x);
}

SumFactorization factor_coordinate_sum(const CirculantTensor& a) {
  if (a.order() < 3) throw std::invalid_argument("factorization needs order >= 3");
  const std::size_t n = a.dim();
  const std::size_t q_order = a.order() - 2;
  Polynomial p = form_polynomial(a.root());
  Polynomial quotient;
  double remainder = 0.0;
  const double tol = 1e-12 * std::max(a.root().abs_sum(), 1e-300);
  while (!p.empty()) {
    auto lead = p.begin();
    Monomial e = lead->first;
    const double coef = lead->second;
    p.erase(lead);
    if (std::abs(coef) <= tol) continue;
    if (e[0] == 0) {
      // No monomial that is left can contain x_1, so the rest is remainder.
      remainder = std::max(remainder, std::abs(coef));
      continue;
    }
    --e[0];
    quotient[e] += coef;
    for (std::size_t i = 1; i < n; ++i) {
      Monomial f = e;
      ++f[i];
      p[f] -= coef;
    }
  }
  SumFactorization out;
  out.remainder = remainder;
  out.divisible = remainder <= tol;
  if (out.divisible) out.quotient = symmetric_tensor_of(quotient, q_order, n);
  return out;
}

PsdVerdict doubly_psd(const CirculantTensor& a) {
  if (a.order() % 2 != 0) throw std::domain_error("PSD decisions need even order");
  const double tol = 1e-12 * a.root().abs_sum();
  if (a.order() < 4 || !is_doubly_circulant(a, tol)) {
    throw std::invalid_argument("tensor is not doubly circulant");
  }
  const std::size_t n = a.dim();
  const auto f = factor_coordinate_sum(a);
  if (!f.divisible) {
    // The root form does not vanish on sum x = 0, so A x^m changes sign across it.
    const auto z = hyperplane_probe(a.root());
    const double g = apply_full(a.root(), z);
    auto v = lifted(a, lift_witness(a, z, g > 0.0 ? -1.0 : 1.0), "root form not divisible by sum x");
    v.details.emplace_back("remainder", f.remainder);
    return v;
  }

  const DenseTensor& q = *f.quotient;
  const double q_scale = std::max(q.abs_sum(), 1e-300);
  if (q.order() == 2) {
    Eigen::MatrixXd qm(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) qm(i, j) = q.at_flat(i * n + j);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(qm);
    const double min_eig = eig.eigenvalues()(0);
    if (min_eig >= -1e-10 * q_scale) {
      PsdVerdict v;
      v.decision = Decision::psd;
      v.certificate = Certificate::doubly_circulant_reduction;
      v.note = "A x^m = (sum x)^2 q(x) with q positive semi-definite";
      v.details.emplace_back("quotient_min_eigenvalue", min_eig);
      return v;
    }
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = eig.eigenvectors()(static_cast<Eigen::Index>(i), 0);
    auto v = lifted(a, lift_witness(a, z, 0.0), "quotient form takes a negative value");
    v.details.emplace_back("quotient_min_eigenvalue", min_eig);
    return v;
  }

  if (!is_circulant(q, 1e-12 * q_scale)) {
    PsdVerdict v;
    v.certificate = Certificate::doubly_circulant_reduction;
    v.note = "quotient form is not circulant";
    return v;
  }
  const auto inner = check_psd(CirculantTensor::from_dense(q, 1e-12 * q_scale));
  if (inner.is_psd()) {
    PsdVerdict v;
    v.decision = Decision::psd;
    v.certificate = Certificate::doubly_circulant_reduction;
    v.note = "A x^m = (sum x)^2 q(x) with q certified";
    return v;
  }
  if (inner.decision == Decision::not_psd && inner.witness) {
    return lifted(a, lift_witness(a, *inner.witness, 0.0), "quotient form takes a negative value");
  }
  PsdVerdict v;
  v.certificate = Certificate::doubly_circulant_reduction;
  v.note = "quotient form undecided";
  return v;
}

}  // namespace ctensor
