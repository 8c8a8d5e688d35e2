#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ctensor/circulant_tensor.hpp"
#include "ctensor/dense_tensor.hpp"
#include "ctensor/hypergraph.hpp"
#include "ctensor/numeric.hpp"
#include "ctensor/special_root.hpp"

namespace ctensor {

/// A tensor document:
///   {"kind":"circulant","order":m,"dim":n,"root":[..]}
///   {"kind":"dense","order":m,"dim":n,"entries":[..]}
///   {"kind":"diag_root","order":m,"c":[..]}
/// Arrays are row-major. Numbers may also be given as decimal strings.
struct TensorDocument {
  std::string kind;
  std::optional<CirculantTensor> circulant;  // set for circulant and diag_root
  std::optional<DenseTensor> dense;          // set for dense
  std::optional<DiagRootSpec> diag_root;

  /// The circulant form: as given, or recovered from a circulant dense tensor.
  std::optional<CirculantTensor> as_circulant() const;
  std::size_t order() const;
  std::size_t dim() const;
};

/// Throws std::invalid_argument on malformed input and std::length_error when
/// the tensor exceeds `budget` entries.
TensorDocument parse_tensor(std::string_view text, std::size_t budget = budget_from_environment());
TensorDocument load_tensor(const std::filesystem::path& path, std::size_t budget = budget_from_environment());

/// {"n":..,"m":..,"directed":bool,"generators":[[..],..]}; m is optional.
Hypergraph parse_hypergraph(std::string_view text);
Hypergraph load_hypergraph(const std::filesystem::path& path);

std::string to_json(const CirculantTensor& a);
std::string to_json(const DenseTensor& t);
std::string to_json(const DiagRootSpec& spec);

/// 17 significant digits; non-finite values become null.
std::string format_double(double v);

/// Whole file as a string; throws std::runtime_error when unreadable.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace ctensor
