#include "ctensor/structure.hpp"

#include <algorithm>
#include <stdexcept>

#include "ctensor/spectral.hpp"

namespace ctensor {
namespace {

// (-1)^{sum of 0-based indices} equals (-1)^{j1+..+jm-m} for 1-based indices.
int parity_sign(std::span<const std::size_t> idx) {
  std::size_t s = 0;
  for (std::size_t v : idx) s += v;
  return s % 2 == 0 ? 1 : -1;
}

bool alternating_pattern(const DenseTensor& t, int orientation) {
  Index idx(t.order(), 0);
  std::size_t flat = 0;
  do {
    if (orientation * parity_sign(idx) * t.at_flat(flat++) < 0.0) return false;
  } while (next_index(idx, t.dim()));
  return true;
}

bool alternating_pattern(const CirculantTensor& a, int orientation) {
  Index idx(a.order(), 0);
  do {
    if (orientation * parity_sign(idx) * a.entry_zero(idx) < 0.0) return false;
  } while (next_index(idx, a.dim()));
  return true;
}

}  // namespace

std::string_view to_string(SignClass c) {
  switch (c) {
    case SignClass::nonnegative: return "nonnegative";
    case SignClass::nonpositive: return "nonpositive";
    case SignClass::alternative: return "alternative";
    case SignClass::negatively_alternative: return "negatively_alternative";
    case SignClass::none: return "none";
  }
  return "none";
}

bool is_nonnegative(const DenseTensor& t) {
  return std::all_of(t.entries().begin(), t.entries().end(), [](double v) { return v >= 0.0; });
}

bool is_nonpositive(const DenseTensor& t) {
  return std::all_of(t.entries().begin(), t.entries().end(), [](double v) { return v <= 0.0; });
}

bool is_alternative(const DenseTensor& t) { return alternating_pattern(t, 1); }
bool is_negatively_alternative(const DenseTensor& t) { return alternating_pattern(t, -1); }

// Every full entry is a root entry, so the entrywise sign tests reduce to the root.
bool is_nonnegative(const CirculantTensor& t) { return is_nonnegative(t.root()); }
bool is_nonpositive(const CirculantTensor& t) { return is_nonpositive(t.root()); }
bool is_alternative(const CirculantTensor& t) { return alternating_pattern(t, 1); }
bool is_negatively_alternative(const CirculantTensor& t) { return alternating_pattern(t, -1); }

template <typename Tensor>
static SignClass classify_impl(const Tensor& t) {
  if (is_nonnegative(t)) return SignClass::nonnegative;
  if (is_nonpositive(t)) return SignClass::nonpositive;
  if (is_alternative(t)) return SignClass::alternative;
  if (is_negatively_alternative(t)) return SignClass::negatively_alternative;
  return SignClass::none;
}

SignClass classify_sign(const DenseTensor& t) { return classify_impl(t); }
SignClass classify_sign(const CirculantTensor& t) { return classify_impl(t); }

bool RowSignReport::consistent() const {
  if (full_alternative != rows_alternating) return false;
  if (full_neg_alternative != rows_neg_alternating) return false;
  if (root_equivalence_applies) {
    if (full_alternative != root_alternative) return false;
    if (full_neg_alternative != root_neg_alternative) return false;
  }
  // The first row of an alternative tensor is alternative in every case.
  if (full_alternative && !root_alternative) return false;
  if (full_neg_alternative && !root_neg_alternative) return false;
  return true;
}

RowSignReport row_sign_decomposition(const CirculantTensor& a) {
  RowSignReport r;
  r.full_alternative = is_alternative(a);
  r.full_neg_alternative = is_negatively_alternative(a);
  r.root_alternative = is_alternative(a.root());
  r.root_neg_alternative = is_negatively_alternative(a.root());
  r.rows_alternating = true;
  r.rows_neg_alternating = true;
  for (std::size_t k = 1; k <= a.dim(); ++k) {
    const auto row = a.row_tensor(k);
    const bool odd = k % 2 == 1;
    const bool alt = is_alternative(row);
    const bool neg = is_negatively_alternative(row);
    r.rows_alternating = r.rows_alternating && (odd ? alt : neg);
    r.rows_neg_alternating = r.rows_neg_alternating && (odd ? neg : alt);
  }
  r.root_equivalence_applies = a.order() % 2 == 0 && a.dim() % 2 == 0;
  return r;
}

BClassReport b_class(const DenseTensor& t) {
  if (t.order() < 2) throw std::invalid_argument("B-class test needs order >= 2");
  const std::size_t n = t.dim();
  const std::size_t row_size = t.size() / n;
  const double row_scale = static_cast<double>(row_size);
  BClassReport r;
  r.row_sums.resize(n);
  r.is_b0 = true;
  r.is_b = true;
  bool have_offdiag = false;
  Index rest(t.order() - 1);
  for (std::size_t j = 0; j < n; ++j) {
    const auto row = t.entries().subspan(j * row_size, row_size);
    r.row_sums[j] = exact_sum(row);
    std::fill(rest.begin(), rest.end(), j);
    const std::size_t diag = t.flat_index_zero(rest);  // offset of (j,..,j) inside the row
    double row_max = 0.0;
    bool row_has = false;
    for (std::size_t i = 0; i < row_size; ++i) {
      if (i == diag) continue;
      row_max = row_has ? std::max(row_max, row[i]) : row[i];
      row_has = true;
    }
    r.max_offdiag = have_offdiag ? std::max(r.max_offdiag, row_max) : row_max;
    have_offdiag = true;
    const double mean = r.row_sums[j] / row_scale;
    r.is_b0 = r.is_b0 && r.row_sums[j] >= 0.0 && mean >= row_max;
    r.is_b = r.is_b && r.row_sums[j] > 0.0 && mean > row_max;
  }
  return r;
}

BClassReport b_class(const CirculantTensor& a) {
  const std::size_t n = a.dim();
  const DenseTensor& root = a.root();
  // Every row is a rearrangement of the root, so each row sum is lambda_0 and
  // (1/n^m) * total = lambda_0 / n^{m-1}.
  const double row_sum = first_native(a);
  const auto tail = root.entries().subspan(1);
  const double max_off = *std::max_element(tail.begin(), tail.end());
  const double mean = row_sum / static_cast<double>(root.size());
  BClassReport r;
  r.row_sums.assign(n, row_sum);
  r.max_offdiag = max_off;
  r.is_b0 = row_sum >= 0.0 && mean >= max_off;
  r.is_b = row_sum > 0.0 && mean > max_off;
  return r;
}

bool is_k_alternative(std::span<const double> c, std::size_t k) {
  const std::size_t n = c.size() + 1;
  if (k < 1 || 2 * k > n) throw std::out_of_range("k must satisfy 1 <= k <= n/2");
  if (n % (2 * k) != 0) return false;
  for (std::size_t j = 1; j < n; ++j) {
    const double v = c[j - 1];
    if (j % k != 0) {
      if (v != 0.0) return false;
    } else if ((j / k) % 2 == 1) {
      if (v < 0.0) return false;
    } else if (v > 0.0) {
      return false;
    }
  }
  return true;
}

std::vector<double> hat_one_k(std::size_t n, std::size_t k) {
  if (k < 1 || n % (2 * k) != 0) throw std::invalid_argument("hat_one_k needs n divisible by 2k");
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = (j / k) % 2 == 0 ? 1.0 : -1.0;
  return v;
}

bool is_doubly_circulant(const CirculantTensor& a, double tol) {
  if (a.order() < 3) throw std::invalid_argument("doubly circulant test needs order >= 3");
  return is_circulant(a.root(), tol);
}

}  // namespace ctensor
