#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ctensor/circulant_tensor.hpp"
#include "ctensor/dense_tensor.hpp"

namespace ctensor {

/// Sign pattern of a tensor. Reported in the priority order of the enumerators;
/// the zero tensor is nonnegative.
enum class SignClass { nonnegative, nonpositive, alternative, negatively_alternative, none };

std::string_view to_string(SignClass c);

bool is_nonnegative(const DenseTensor& t);
bool is_nonpositive(const DenseTensor& t);
/// b_{j1..jm} (-1)^{j1+..+jm-m} >= 0 (1-based indices).
bool is_alternative(const DenseTensor& t);
bool is_negatively_alternative(const DenseTensor& t);

bool is_nonnegative(const CirculantTensor& t);
bool is_nonpositive(const CirculantTensor& t);
bool is_alternative(const CirculantTensor& t);
bool is_negatively_alternative(const CirculantTensor& t);

SignClass classify_sign(const DenseTensor& t);
SignClass classify_sign(const CirculantTensor& t);

/// Row-parity view of the alternative property.
struct RowSignReport {
  bool full_alternative = false;
  bool full_neg_alternative = false;
  bool root_alternative = false;
  bool root_neg_alternative = false;
  /// Odd rows alternative and even rows negatively alternative.
  bool rows_alternating = false;
  /// Odd rows negatively alternative and even rows alternative.
  bool rows_neg_alternating = false;
  /// Root-level equivalence is only claimed for even order and even dimension.
  bool root_equivalence_applies = false;

  /// Every identity that applies to this tensor holds.
  bool consistent() const;
};

RowSignReport row_sign_decomposition(const CirculantTensor& a);

/// B0 / B tensor test. `row_sums` are the row-tensor sums; `max_offdiag` is the
/// largest entry off the generalized diagonal.
struct BClassReport {
  bool is_b0 = false;
  bool is_b = false;
  std::vector<double> row_sums;
  double max_offdiag = 0.0;
};

/// Row-by-row test for an arbitrary tensor.
BClassReport b_class(const DenseTensor& t);
/// Two-inequality test for circulant tensors: total sum >= 0 and
/// (1/n^m) total >= max off-diagonal entry.
BClassReport b_class(const CirculantTensor& a);

/// c holds (c_1, .., c_{n-1}). True iff n = 2pk, c_{(2q-1)k} >= 0, c_{2qk} <= 0
/// for q in [p] and every other c_j is 0. Position n lies outside c and is ignored.
bool is_k_alternative(std::span<const double> c, std::size_t k);

/// Blocks of k ones and k minus-ones repeated n/(2k) times.
std::vector<double> hat_one_k(std::size_t n, std::size_t k);

/// Root tensor is itself circulant (requires order >= 3); then every row tensor equals the root.
bool is_doubly_circulant(const CirculantTensor& a, double tol = 0.0);

}  // namespace ctensor
