#include "ctensor/moments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "ctensor/multilinear.hpp"
#include "ctensor/numeric.hpp"

namespace ctensor {

void ProcessSample::validate() const {
  if (period < 2) throw std::invalid_argument("period must be at least 2");
  if (trajectories.empty()) throw std::invalid_argument("sample has no trajectories");
  for (const auto& t : trajectories) {
    if (t.size() < period) throw std::invalid_argument("trajectory shorter than the period");
    for (std::size_t i = 0; i < period; ++i) {
      if (!std::isfinite(t[i])) throw std::invalid_argument("trajectory values must be finite");
    }
  }
}

MomentEstimate moment_tensor(const ProcessSample& sample, std::size_t order) {
  sample.validate();
  if (order < 2) throw std::invalid_argument("moment order must be at least 2");
  const std::size_t n = sample.period;
  const std::size_t count = sample.trajectories.size();
  const double N = static_cast<double>(count);
  MomentEstimate est{DenseTensor(order, n), DenseTensor(order, n), count};

  std::map<Index, std::pair<double, double>> cache;
  std::vector<double> products(count);
  std::vector<double> squares(count);
  Index idx(order, 0);
  std::size_t flat = 0;
  do {
    Index key(idx);
    std::sort(key.begin(), key.end());
    auto it = cache.find(key);
    if (it == cache.end()) {
      for (std::size_t s = 0; s < count; ++s) {
        double p = 1.0;
        for (std::size_t i : key) p *= sample.trajectories[s][i];
        products[s] = p;
      }
      const double mean = exact_sum(products) / N;
      for (std::size_t s = 0; s < count; ++s) squares[s] = (products[s] - mean) * (products[s] - mean);
      const double var = count > 1 ? exact_sum(squares) / (N - 1.0) : 0.0;
      it = cache.emplace(std::move(key), std::pair{mean, std::sqrt(var / N)}).first;
    }
    est.mean.set_flat(flat, it->second.first);
    est.std_error.set_flat(flat, it->second.second);
    ++flat;
  } while (next_index(idx, n));
  return est;
}

DenseTensor moment_pushforward(const DenseTensor& m, const Eigen::MatrixXd& b) {
  if (static_cast<std::size_t>(b.rows()) != m.dim()) {
    throw std::invalid_argument("matrix row count must equal the tensor dimension");
  }
  return matrix_product(m, b);
}

ProcessSample read_samples_csv(std::istream& in, std::size_t period) {
  ProcessSample sample;
  sample.period = period;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      std::size_t a = pos;
      std::size_t z = end;
      while (a < z && (line[a] == ' ' || line[a] == '\t')) ++a;
      while (z > a && (line[z - 1] == ' ' || line[z - 1] == '\t' || line[z - 1] == '\r')) --z;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(line.data() + a, line.data() + z, v);
      if (a == z || ec != std::errc() || ptr != line.data() + z) {
        throw std::invalid_argument("malformed number on line " + std::to_string(line_no));
      }
      row.push_back(v);
      pos = end + 1;
    }
    sample.trajectories.push_back(std::move(row));
  }
  sample.validate();
  return sample;
}

}  // namespace ctensor
