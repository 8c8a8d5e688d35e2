#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ctensor/circulant_tensor.hpp"
#include "ctensor/dense_tensor.hpp"

namespace ctensor {

// Homogeneous form A x^m = sum a_{j1..jm} x_{j1} .. x_{jm}.
double apply_full(const DenseTensor& a, std::span<const double> x);
// Circulant overload works from the root: sum_k x_k (A_k x^{m-1}), no materialization.
double apply_full(const CirculantTensor& a, std::span<const double> x);
std::complex<double> apply_full(const CirculantTensor& a,
                                std::span<const std::complex<double>> x);

// (A x^{m-1})_j = sum a_{j j2..jm} x_{j2} .. x_{jm}.
std::vector<double> apply_partial(const DenseTensor& a, std::span<const double> x);
std::vector<double> apply_partial(const CirculantTensor& a, std::span<const double> x);
ComplexVector apply_partial(const DenseTensor& a, std::span<const std::complex<double>> x);
ComplexVector apply_partial(const CirculantTensor& a, std::span<const std::complex<double>> x);

/// B = A Q^m with b_{k1..km} = sum a_{j1..jm} q_{j1 k1} .. q_{jm km}.
///
/// Q may be rectangular (dim x N); the result then has dimension N. Satisfies
/// (A Q^m) x^m = A (Q x)^m.
DenseTensor matrix_product(const DenseTensor& a, const Eigen::MatrixXd& q,
                           std::size_t budget = kDefaultBudget);
DenseTensor matrix_product(const CirculantTensor& a, const Eigen::MatrixXd& q,
                           std::size_t budget = kDefaultBudget);

/// The unique symmetric tensor with the same homogeneous form. Averages over
/// all m! slot permutations, which equals the distinct-permutation average.
DenseTensor symmetrize(const DenseTensor& a, std::size_t budget = kDefaultBudget);
/// Symmetrization keeps the circulant structure, so only the root is computed.
CirculantTensor symmetrize(const CirculantTensor& a);

/// Diagonal tensor carrying the diagonal entries of `a`.
DenseTensor diagonal_part(const DenseTensor& a);
CirculantTensor diagonal_part(const CirculantTensor& a);

}  // namespace ctensor
