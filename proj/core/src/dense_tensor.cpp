#include "ctensor/dense_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ctensor {
namespace {

std::size_t entry_count(std::size_t order, std::size_t dim, std::size_t budget) {
  if (order < 1) throw std::invalid_argument("tensor order must be at least 1");
  if (dim < 2) throw std::invalid_argument("tensor dimension must be at least 2");
  const auto count = checked_power(dim, order);
  if (count == 0 || count > budget) {
    throw std::length_error("tensor with dim " + std::to_string(dim) + " and order " +
                            std::to_string(order) + " exceeds the materialization budget of " +
                            std::to_string(budget) + " entries");
  }
  return count;
}

void require_same_shape(const DenseTensor& a, const DenseTensor& b) {
  if (a.order() != b.order() || a.dim() != b.dim()) {
    throw std::invalid_argument("tensor shapes differ");
  }
}

}  // namespace

DenseTensor::DenseTensor(std::size_t order, std::size_t dim, std::size_t budget)
    : order_(order), dim_(dim), entries_(entry_count(order, dim, budget), 0.0) {}

DenseTensor::DenseTensor(std::size_t order, std::size_t dim, std::vector<double> entries)
    : order_(order), dim_(dim), entries_(std::move(entries)) {
  const auto expected = entry_count(order, dim, static_cast<std::size_t>(-1));
  if (entries_.size() != expected) {
    throw std::invalid_argument("expected " + std::to_string(expected) + " entries, got " +
                                std::to_string(entries_.size()));
  }
  for (double v : entries_) {
    if (!std::isfinite(v)) throw std::invalid_argument("tensor entries must be finite");
  }
}

DenseTensor DenseTensor::identity(std::size_t order, std::size_t dim, std::size_t budget) {
  DenseTensor t(order, dim, budget);
  Index idx(order);
  for (std::size_t j = 0; j < dim; ++j) {
    std::fill(idx.begin(), idx.end(), j);
    t.entries_[t.flat_index_zero(idx)] = 1.0;
  }
  return t;
}

std::size_t DenseTensor::flat_index_zero(std::span<const std::size_t> idx) const noexcept {
  std::size_t flat = 0;
  for (std::size_t v : idx) flat = flat * dim_ + v;
  return flat;
}

void DenseTensor::unravel_zero(std::size_t flat, std::span<std::size_t> out) const noexcept {
  for (std::size_t l = order_; l-- > 0;) {
    out[l] = flat % dim_;
    flat /= dim_;
  }
}

double DenseTensor::operator()(std::span<const std::size_t> idx) const {
  if (idx.size() != order_) throw std::invalid_argument("index arity does not match tensor order");
  std::size_t flat = 0;
  for (std::size_t v : idx) {
    if (v < 1 || v > dim_) throw std::out_of_range("tensor index out of range");
    flat = flat * dim_ + (v - 1);
  }
  return entries_[flat];
}

void DenseTensor::set(std::span<const std::size_t> idx, double value) {
  if (idx.size() != order_) throw std::invalid_argument("index arity does not match tensor order");
  std::size_t flat = 0;
  for (std::size_t v : idx) {
    if (v < 1 || v > dim_) throw std::out_of_range("tensor index out of range");
    flat = flat * dim_ + (v - 1);
  }
  set_flat(flat, value);
}

void DenseTensor::set_flat(std::size_t flat, double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("tensor entries must be finite");
  entries_.at(flat) = value;
}

double DenseTensor::abs_sum() const noexcept {
  double s = 0.0;
  for (double v : entries_) s += std::abs(v);
  return s;
}

double DenseTensor::max_abs_difference(const DenseTensor& other) const {
  require_same_shape(*this, other);
  double worst = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
  }
  return worst;
}

bool next_index(std::span<std::size_t> idx, std::size_t dim) noexcept {
  for (std::size_t l = idx.size(); l-- > 0;) {
    if (++idx[l] < dim) return true;
    idx[l] = 0;
  }
  return false;
}

bool is_symmetric(const DenseTensor& t, double tol) {
  Index idx(t.order(), 0);
  Index perm(t.order());
  do {
    const double base = t.at_flat(t.flat_index_zero(idx));
    // Adjacent transpositions generate the symmetric group.
    for (std::size_t l = 0; l + 1 < t.order(); ++l) {
      perm = idx;
      std::swap(perm[l], perm[l + 1]);
      if (std::abs(t.at_flat(t.flat_index_zero(perm)) - base) > tol) return false;
    }
  } while (next_index(idx, t.dim()));
  return true;
}

bool is_toeplitz(const DenseTensor& t, double tol) {
  const std::size_t n = t.dim();
  Index idx(t.order(), 0);
  Index shifted(t.order());
  do {
    if (std::any_of(idx.begin(), idx.end(), [n](std::size_t v) { return v + 1 >= n; })) continue;
    for (std::size_t l = 0; l < idx.size(); ++l) shifted[l] = idx[l] + 1;
    if (std::abs(t.at_flat(t.flat_index_zero(idx)) - t.at_flat(t.flat_index_zero(shifted))) > tol) {
      return false;
    }
  } while (next_index(idx, n));
  return true;
}

double circulant_deviation(const DenseTensor& t) {
  if (t.order() < 2) throw std::invalid_argument("circulant check needs order >= 2");
  const std::size_t n = t.dim();
  Index idx(t.order(), 0);
  Index shifted(t.order());
  double worst = 0.0;
  do {
    for (std::size_t l = 0; l < idx.size(); ++l) shifted[l] = (idx[l] + 1) % n;
    worst = std::max(worst, std::abs(t.at_flat(t.flat_index_zero(idx)) -
                                     t.at_flat(t.flat_index_zero(shifted))));
  } while (next_index(idx, n));
  return worst;
}

bool is_circulant(const DenseTensor& t, double tol) { return circulant_deviation(t) <= tol; }

DenseTensor operator-(const DenseTensor& t) { return -1.0 * t; }

DenseTensor operator+(const DenseTensor& a, const DenseTensor& b) {
  require_same_shape(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.at_flat(i) + b.at_flat(i);
  return DenseTensor(a.order(), a.dim(), std::move(out));
}

DenseTensor operator-(const DenseTensor& a, const DenseTensor& b) { return a + (-1.0 * b); }

DenseTensor operator*(double s, const DenseTensor& t) {
  std::vector<double> out(t.entries().begin(), t.entries().end());
  for (double& v : out) v *= s;
  return DenseTensor(t.order(), t.dim(), std::move(out));
}

}  // namespace ctensor
