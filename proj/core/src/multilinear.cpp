#include "ctensor/multilinear.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ctensor {
namespace {

void require_length(std::size_t dim, std::size_t got) {
  if (dim != got) {
    throw std::invalid_argument("vector length " + std::to_string(got) +
                                " does not match tensor dimension " + std::to_string(dim));
  }
}

// Contracts the trailing modes of a row-major (n, .., n) array with x until keep modes remain.
template <typename T>
std::vector<T> contract_trailing(std::span<const double> data, std::size_t order, std::size_t n,
                                 std::span<const T> x, std::size_t keep) {
  std::size_t size = data.size() / n;
  std::vector<T> cur(size, T{});
  for (std::size_t o = 0; o < size; ++o) {
    T s{};
    for (std::size_t j = 0; j < n; ++j) s += data[o * n + j] * x[j];
    cur[o] = s;
  }
  for (std::size_t mode = order - 1; mode > keep; --mode) {
    size /= n;
    for (std::size_t o = 0; o < size; ++o) {
      T s{};
      for (std::size_t j = 0; j < n; ++j) s += cur[o * n + j] * x[j];
      cur[o] = s;
    }
    cur.resize(size);
  }
  return cur;
}

template <typename T>
std::vector<T> partial_dense(const DenseTensor& a, std::span<const T> x) {
  require_length(a.dim(), x.size());
  if (a.order() == 1) return std::vector<T>(a.entries().begin(), a.entries().end());
  return contract_trailing<T>(a.entries(), a.order(), a.dim(), x, 1);
}

template <typename T>
std::vector<T> partial_circulant(const CirculantTensor& a, std::span<const T> x) {
  require_length(a.dim(), x.size());
  const std::size_t n = a.dim();
  const DenseTensor& root = a.root();
  std::vector<T> out(n, T{});
  std::vector<T> shifted(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) shifted[i] = x[(i + k) % n];
    out[k] = contract_trailing<T>(root.entries(), root.order(), n, shifted, 0)[0];
  }
  return out;
}

template <typename T>
T dot(std::span<const T> x, const std::vector<T>& y) {
  T s{};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// Contracts every mode of a row-major array of shape (n, .., n) with q (n x cols).
std::vector<double> contract_all_modes(std::span<const double> data, std::size_t order,
                                       std::size_t n, const Eigen::MatrixXd& q) {
  const auto cols = static_cast<std::size_t>(q.cols());
  std::vector<std::size_t> shape(order, n);
  std::vector<double> cur(data.begin(), data.end());
  for (std::size_t mode = 0; mode < order; ++mode) {
    std::size_t outer = 1;
    for (std::size_t l = 0; l < mode; ++l) outer *= shape[l];
    std::size_t inner = 1;
    for (std::size_t l = mode + 1; l < order; ++l) inner *= shape[l];
    std::vector<double> next(outer * cols * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t j = 0; j < n; ++j) {
        const double* src = cur.data() + (o * n + j) * inner;
        for (std::size_t k = 0; k < cols; ++k) {
          const double w = q(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
          if (w == 0.0) continue;
          double* dst = next.data() + (o * cols + k) * inner;
          for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
        }
      }
    }
    cur = std::move(next);
    shape[mode] = cols;
  }
  return cur;
}

}  // namespace

double apply_full(const DenseTensor& a, std::span<const double> x) {
  return dot(x, partial_dense<double>(a, x));
}

double apply_full(const CirculantTensor& a, std::span<const double> x) {
  return dot(x, partial_circulant<double>(a, x));
}

std::complex<double> apply_full(const CirculantTensor& a,
                                std::span<const std::complex<double>> x) {
  return dot(x, partial_circulant<std::complex<double>>(a, x));
}

std::vector<double> apply_partial(const DenseTensor& a, std::span<const double> x) {
  return partial_dense<double>(a, x);
}

std::vector<double> apply_partial(const CirculantTensor& a, std::span<const double> x) {
  return partial_circulant<double>(a, x);
}

ComplexVector apply_partial(const DenseTensor& a, std::span<const std::complex<double>> x) {
  return partial_dense<std::complex<double>>(a, x);
}

ComplexVector apply_partial(const CirculantTensor& a, std::span<const std::complex<double>> x) {
  return partial_circulant<std::complex<double>>(a, x);
}

DenseTensor matrix_product(const DenseTensor& a, const Eigen::MatrixXd& q, std::size_t budget) {
  if (static_cast<std::size_t>(q.rows()) != a.dim()) {
    throw std::invalid_argument("matrix row count must equal the tensor dimension");
  }
  const auto cols = static_cast<std::size_t>(q.cols());
  const auto out_size = checked_power(cols, a.order());
  if (cols < 2 || out_size == 0 || out_size > budget) {
    throw std::length_error("matrix product result exceeds the materialization budget");
  }
  return DenseTensor(a.order(), cols, contract_all_modes(a.entries(), a.order(), a.dim(), q));
}

DenseTensor matrix_product(const CirculantTensor& a, const Eigen::MatrixXd& q, std::size_t budget) {
  return matrix_product(a.materialize(budget), q, budget);
}

DenseTensor symmetrize(const DenseTensor& a, std::size_t budget) {
  if (a.size() > budget) throw std::length_error("symmetrize exceeds the materialization budget");
  const std::size_t n = a.dim();
  // Accumulate every entry into the slot of its sorted index tuple.
  std::vector<double> sums(a.size(), 0.0);
  std::vector<std::size_t> counts(a.size(), 0);
  Index idx(a.order(), 0);
  Index sorted(a.order());
  std::vector<std::size_t> key_of(a.size());
  std::size_t flat = 0;
  do {
    sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    const auto key = a.flat_index_zero(sorted);
    key_of[flat] = key;
    sums[key] += a.at_flat(flat);
    ++counts[key];
    ++flat;
  } while (next_index(idx, n));
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = sums[key_of[i]] / static_cast<double>(counts[key_of[i]]);
  }
  return DenseTensor(a.order(), n, std::move(out));
}

CirculantTensor symmetrize(const CirculantTensor& a) {
  const std::size_t n = a.dim();
  const std::size_t m = a.order();
  const DenseTensor& root = a.root();
  std::vector<double> out(root.size());
  Index sigma(root.order(), 0);
  Index full(m);
  std::size_t flat = 0;
  do {
    full[0] = 0;
    std::copy(sigma.begin(), sigma.end(), full.begin() + 1);
    std::sort(full.begin(), full.end());
    double sum = 0.0;
    std::size_t count = 0;
    do {
      sum += a.entry_zero(full);
      ++count;
    } while (std::next_permutation(full.begin(), full.end()));
    out[flat++] = sum / static_cast<double>(count);
  } while (next_index(sigma, n));
  return CirculantTensor(DenseTensor(root.order(), n, std::move(out)));
}

DenseTensor diagonal_part(const DenseTensor& a) {
  DenseTensor d(a.order(), a.dim(), a.size());
  Index idx(a.order());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    std::fill(idx.begin(), idx.end(), j);
    const auto flat = a.flat_index_zero(idx);
    d.set_flat(flat, a.at_flat(flat));
  }
  return d;
}

CirculantTensor diagonal_part(const CirculantTensor& a) {
  return scaled_identity(a.order(), a.dim(), a.diagonal_entry());
}

}  // namespace ctensor
