#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ctensor/numeric.hpp"

namespace ctensor {

/// Index tuple. Public accessors take 1-based components; helpers suffixed
/// `_zero` work with 0-based components.
using Index = std::vector<std::size_t>;

/// Order-m, dimension-n real multi-array stored row-major (last index fastest).
///
/// Order 1 is allowed so that the root of a circulant matrix is an ordinary
/// tensor. Entries are always finite.
class DenseTensor {
 public:
  /// Zero tensor.
  DenseTensor(std::size_t order, std::size_t dim, std::size_t budget = kDefaultBudget);
  DenseTensor(std::size_t order, std::size_t dim, std::vector<double> entries);

  /// Diagonal ones, zero elsewhere.
  static DenseTensor identity(std::size_t order, std::size_t dim,
                              std::size_t budget = kDefaultBudget);

  std::size_t order() const noexcept { return order_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const double> entries() const noexcept { return entries_; }

  double operator()(std::span<const std::size_t> idx) const;
  double operator()(std::initializer_list<std::size_t> idx) const {
    return (*this)(std::span<const std::size_t>(idx.begin(), idx.size()));
  }
  void set(std::span<const std::size_t> idx, double value);
  void set(std::initializer_list<std::size_t> idx, double value) {
    set(std::span<const std::size_t>(idx.begin(), idx.size()), value);
  }

  double at_flat(std::size_t flat) const { return entries_.at(flat); }
  void set_flat(std::size_t flat, double value);

  std::size_t flat_index_zero(std::span<const std::size_t> idx) const noexcept;
  void unravel_zero(std::size_t flat, std::span<std::size_t> out) const noexcept;

  /// Sum of |a| over all entries.
  double abs_sum() const noexcept;
  double max_abs_difference(const DenseTensor& other) const;

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  std::size_t order_;
  std::size_t dim_;
  std::vector<double> entries_;
};

/// Advances a 0-based index tuple in row-major order. Returns false after the last tuple.
bool next_index(std::span<std::size_t> idx, std::size_t dim) noexcept;

bool is_symmetric(const DenseTensor& t, double tol = 0.0);

/// a_{j1..jm} = a_{j1+1..jm+1} whenever every component stays in range.
bool is_toeplitz(const DenseTensor& t, double tol = 0.0);

/// a_{j1..jm} = a_{j1+1..jm+1} with indices taken mod n (order >= 2).
bool is_circulant(const DenseTensor& t, double tol = 0.0);

/// Largest violation of the cyclic shift identity.
double circulant_deviation(const DenseTensor& t);

DenseTensor operator-(const DenseTensor& t);
DenseTensor operator+(const DenseTensor& a, const DenseTensor& b);
DenseTensor operator-(const DenseTensor& a, const DenseTensor& b);
DenseTensor operator*(double s, const DenseTensor& t);

}  // namespace ctensor
