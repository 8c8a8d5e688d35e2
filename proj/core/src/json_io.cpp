#include "ctensor/json_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ctensor {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t read_size(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw std::invalid_argument(std::string("field \"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

double read_number(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec == std::errc() && ptr == s.data() + s.size()) return out;
  }
  throw std::invalid_argument("expected a number or a decimal string");
}

std::vector<double> read_numbers(const json& doc, const char* key) {
  const json& arr = field(doc, key);
  if (!arr.is_array()) throw std::invalid_argument(std::string("field \"") + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) out.push_back(read_number(v));
  return out;
}

json parse_object(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("expected a JSON object");
  return doc;
}

void check_budget(std::size_t order, std::size_t dim, std::size_t budget) {
  const std::size_t count = checked_power(dim, order);
  if (count == 0 || count > budget) throw std::length_error("tensor exceeds the materialization budget");
}

std::string number_array(std::span<const double> values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += format_double(values[i]);
  }
  return s + "]";
}

}  // namespace

std::optional<CirculantTensor> TensorDocument::as_circulant() const {
  if (circulant) return circulant;
  if (dense && is_circulant(*dense)) return CirculantTensor::from_dense(*dense);
  return std::nullopt;
}

std::size_t TensorDocument::order() const { return circulant ? circulant->order() : dense->order(); }
std::size_t TensorDocument::dim() const { return circulant ? circulant->dim() : dense->dim(); }

TensorDocument parse_tensor(std::string_view text, std::size_t budget) {
  const json doc = parse_object(text);
  const json& kind = field(doc, "kind");
  if (!kind.is_string()) throw std::invalid_argument("field \"kind\" must be a string");
  TensorDocument out;
  out.kind = kind.get<std::string>();
  const std::size_t order = read_size(doc, "order");
  if (out.kind == "diag_root") {
    DiagRootSpec spec{order, read_numbers(doc, "c")};
    spec.validate();
    check_budget(order - 1, spec.dim(), budget);
    out.circulant = expand(spec);
    out.diag_root = std::move(spec);
    return out;
  }
  if (order < 2) throw std::invalid_argument("tensor order must be at least 2");
  const std::size_t dim = read_size(doc, "dim");
  if (dim < 2) throw std::invalid_argument("tensor dimension must be at least 2");
  if (out.kind == "circulant") {
    check_budget(order - 1, dim, budget);
    out.circulant = CirculantTensor(DenseTensor(order - 1, dim, read_numbers(doc, "root")));
  } else if (out.kind == "dense") {
    check_budget(order, dim, budget);
    out.dense = DenseTensor(order, dim, read_numbers(doc, "entries"));
  } else {
    throw std::invalid_argument("unknown tensor kind \"" + out.kind + "\"");
  }
  return out;
}

TensorDocument load_tensor(const std::filesystem::path& path, std::size_t budget) {
  return parse_tensor(read_text_file(path), budget);
}

Hypergraph parse_hypergraph(std::string_view text) {
  const json doc = parse_object(text);
  const std::size_t n = read_size(doc, "n");
  bool directed = false;
  if (const auto it = doc.find("directed"); it != doc.end()) {
    if (!it->is_boolean()) throw std::invalid_argument("field \"directed\" must be a boolean");
    directed = it->get<bool>();
  }
  const json& gens = field(doc, "generators");
  if (!gens.is_array()) throw std::invalid_argument("field \"generators\" must be an array");
  std::vector<std::vector<std::size_t>> generators;
  for (const auto& g : gens) {
    if (!g.is_array()) throw std::invalid_argument("each generator must be an array");
    std::vector<std::size_t> e;
    for (const auto& v : g) {
      if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw std::invalid_argument("vertices must be positive integers");
      }
      e.push_back(v.get<std::size_t>());
    }
    generators.push_back(std::move(e));
  }
  Hypergraph g = orbit_closure(generators, n, directed);
  if (doc.contains("m") && read_size(doc, "m") != g.m) {
    throw std::invalid_argument("field \"m\" does not match the generator size");
  }
  return g;
}

Hypergraph load_hypergraph(const std::filesystem::path& path) { return parse_hypergraph(read_text_file(path)); }

std::string to_json(const CirculantTensor& a) {
  return "{\"kind\":\"circulant\",\"order\":" + std::to_string(a.order()) + ",\"dim\":" +
         std::to_string(a.dim()) + ",\"root\":" + number_array(a.root().entries()) + "}";
}

std::string to_json(const DenseTensor& t) {
  return "{\"kind\":\"dense\",\"order\":" + std::to_string(t.order()) + ",\"dim\":" +
         std::to_string(t.dim()) + ",\"entries\":" + number_array(t.entries()) + "}";
}

std::string to_json(const DiagRootSpec& spec) {
  return "{\"kind\":\"diag_root\",\"order\":" + std::to_string(spec.order) + ",\"c\":" + number_array(spec.c) +
         "}";
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("cannot read " + path.string());
  return ss.str();
}

}  // namespace ctensor
