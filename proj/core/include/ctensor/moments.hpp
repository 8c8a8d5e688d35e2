#pragma once

#include <cstddef>
#include <istream>
#include <vector>

#include <Eigen/Core>

#include "ctensor/dense_tensor.hpp"

namespace ctensor {

/// Realizations of a period-n process; each trajectory contributes its first n values.
struct ProcessSample {
  std::size_t period = 0;
  std::vector<std::vector<double>> trajectories;

  void validate() const;
};

struct MomentEstimate {
  DenseTensor mean;       // sample average of x_{i1} .. x_{im}
  DenseTensor std_error;  // sample standard deviation / sqrt(N)
  std::size_t samples = 0;
};

/// Empirical order-m moment tensor. Symmetric by construction; each entry is a
/// compensated sum, so the result does not depend on trajectory order.
MomentEstimate moment_tensor(const ProcessSample& sample, std::size_t order);

/// M B^m, the moment tensor of y = B^T x. B is n x N.
DenseTensor moment_pushforward(const DenseTensor& m, const Eigen::MatrixXd& b);

/// One trajectory per line, comma separated. Blank lines and lines starting with '#' are skipped.
ProcessSample read_samples_csv(std::istream& in, std::size_t period);

}  // namespace ctensor
