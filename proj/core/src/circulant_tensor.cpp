#include "ctensor/circulant_tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ctensor {
namespace {

DenseTensor validated_root(DenseTensor root) {
  if (root.size() == 0) throw std::invalid_argument("root tensor is empty");
  return root;
}

}  // namespace

CirculantTensor::CirculantTensor(DenseTensor root) : root_(validated_root(std::move(root))) {}

CirculantTensor CirculantTensor::from_dense(const DenseTensor& t, double tol) {
  if (t.order() < 2) throw std::invalid_argument("a circulant tensor has order >= 2");
  const double dev = circulant_deviation(t);
  if (dev > tol) {
    throw std::invalid_argument("tensor is not circulant (shift deviation " + std::to_string(dev) +
                                ")");
  }
  const std::size_t row_size = t.size() / t.dim();
  std::vector<double> root(t.entries().begin(), t.entries().begin() + static_cast<long>(row_size));
  return CirculantTensor(DenseTensor(t.order() - 1, t.dim(), std::move(root)));
}

double CirculantTensor::entry_zero(std::span<const std::size_t> idx) const noexcept {
  const std::size_t n = dim();
  const std::size_t first = idx[0];
  std::size_t flat = 0;
  for (std::size_t l = 1; l < idx.size(); ++l) flat = flat * n + (idx[l] + n - first) % n;
  return root_.at_flat(flat);
}

double CirculantTensor::entry(std::span<const std::size_t> idx) const {
  if (idx.size() != order()) throw std::invalid_argument("index arity does not match tensor order");
  Index zero(idx.size());
  for (std::size_t l = 0; l < idx.size(); ++l) {
    if (idx[l] < 1 || idx[l] > dim()) throw std::out_of_range("tensor index out of range");
    zero[l] = idx[l] - 1;
  }
  return entry_zero(zero);
}

DenseTensor CirculantTensor::row_tensor(std::size_t k) const {
  if (k < 1 || k > dim()) throw std::out_of_range("row index out of range");
  const std::size_t n = dim();
  std::vector<double> out(root_.size());
  Index rest(root_.order(), 0);
  std::size_t flat = 0;
  do {
    std::size_t src = 0;
    for (std::size_t v : rest) src = src * n + (v + n - (k - 1)) % n;
    out[flat++] = root_.at_flat(src);
  } while (next_index(rest, n));
  return DenseTensor(root_.order(), n, std::move(out));
}

DenseTensor CirculantTensor::materialize(std::size_t budget) const {
  DenseTensor full(order(), dim(), budget);
  const std::size_t row_size = root_.size();
  for (std::size_t k = 1; k <= dim(); ++k) {
    const auto row = row_tensor(k);
    for (std::size_t i = 0; i < row_size; ++i) full.set_flat((k - 1) * row_size + i, row.at_flat(i));
  }
  return full;
}

Eigen::MatrixXd shift_matrix(std::size_t n) {
  if (n < 2) throw std::invalid_argument("shift matrix needs n >= 2");
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j + 1 < n; ++j) p(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j + 1)) = 1.0;
  p(static_cast<Eigen::Index>(n - 1), 0) = 1.0;
  return p;
}

CirculantTensor scaled_identity(std::size_t order, std::size_t dim, double value) {
  if (order < 2) throw std::invalid_argument("a circulant tensor has order >= 2");
  DenseTensor root(order - 1, dim);
  root.set_flat(0, value);
  return CirculantTensor(std::move(root));
}

}  // namespace ctensor
