#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ctensor/dense_tensor.hpp"

namespace ctensor {

using ComplexVector = std::vector<std::complex<double>>;

/// Order-m, dimension-n circulant tensor held through its root tensor (the
/// first row tensor, order m-1). Every other entry follows from the cyclic
/// shift identity
///
///   a_{j1 j2..jm} = root_{((j2-j1) mod n)+1, .., ((jm-j1) mod n)+1}.
class CirculantTensor {
 public:
  /// Builds the unique circulant tensor whose first row tensor is `root`.
  explicit CirculantTensor(DenseTensor root);

  /// Reads row 1 of a dense tensor after confirming the shift identity within `tol`.
  static CirculantTensor from_dense(const DenseTensor& t, double tol = 0.0);

  std::size_t order() const noexcept { return root_.order() + 1; }
  std::size_t dim() const noexcept { return root_.dim(); }
  const DenseTensor& root() const noexcept { return root_; }

  /// The common diagonal entry c0 = root(1,..,1).
  double diagonal_entry() const noexcept { return root_.at_flat(0); }

  /// 1-based access to a_{j1..jm}.
  double entry(std::span<const std::size_t> idx) const;
  double entry(std::initializer_list<std::size_t> idx) const {
    return entry(std::span<const std::size_t>(idx.begin(), idx.size()));
  }
  double entry_zero(std::span<const std::size_t> idx) const noexcept;

  /// k-th row tensor (1-based); row_tensor(1) is the root.
  DenseTensor row_tensor(std::size_t k) const;

  DenseTensor materialize(std::size_t budget = kDefaultBudget) const;

  friend bool operator==(const CirculantTensor&, const CirculantTensor&) = default;

 private:
  DenseTensor root_;
};

/// The cyclic permutation matrix with ones on the superdiagonal and at (n,1).
Eigen::MatrixXd shift_matrix(std::size_t n);

/// The circulant tensor whose diagonal entries are `value` and which is zero elsewhere.
CirculantTensor scaled_identity(std::size_t order, std::size_t dim, double value = 1.0);

}  // namespace ctensor
