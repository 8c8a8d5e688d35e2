#pragma once

#include <vector>

#include "ctensor/circulant_tensor.hpp"
#include "ctensor/dense_tensor.hpp"
#include "ctensor/special_root.hpp"

namespace fixtures {

inline constexpr double kA = 5.91395;
inline constexpr double kB = 2.47255;
inline constexpr double kC = 2.92646;
inline constexpr double kD = 8.49514;

/// Order 3, dimension 3 tensor generated by the 3x3 root [[a,b,c],[b,c,d],[c,d,b]].
inline ctensor::CirculantTensor example1() {
  return ctensor::CirculantTensor(ctensor::DenseTensor(2, 3, {kA, kB, kC, kB, kC, kD, kC, kD, kB}));
}

/// Order 3, dimension 2 with root [[1,-1],[-1,3]].
inline ctensor::CirculantTensor example2() {
  return ctensor::CirculantTensor(ctensor::DenseTensor(2, 2, {1.0, -1.0, -1.0, 3.0}));
}

inline ctensor::DiagRootSpec example3() { return {4, {1.0, 1.0}}; }

/// Doubly circulant order 4, dimension 2: root rows A_11 = diag(d1, d2), A_12 = diag(d2, d1).
inline ctensor::CirculantTensor example4(double d1, double d2) {
  return ctensor::CirculantTensor(ctensor::DenseTensor(3, 2, {d1, 0.0, 0.0, d2, d2, 0.0, 0.0, d1}));
}

inline ctensor::DiagRootSpec example5() { return {4, {-4.75046, 3.58365, 8.252}}; }
inline ctensor::DiagRootSpec example6() { return {4, {3.30134, -9.68746, 2.31954, 7.60276}}; }

inline constexpr double kExample5Min = -6.39448;
inline constexpr double kExample6Min = -1.79658;

}  // namespace fixtures
