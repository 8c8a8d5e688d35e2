#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "ctensor/circulant_tensor.hpp"
#include "ctensor/dense_tensor.hpp"
#include "ctensor/multilinear.hpp"
#include "ctensor/numeric.hpp"
#include "ctensor/special_root.hpp"
#include "ctensor/structure.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace {

using namespace ctensor;

Eigen::MatrixXd random_circulant_matrix(std::size_t n, oracle::Rng& rng) {
  return circulant_matrix(rng.vector(n));
}

TEST(CirculantFromRoot, Example1HasOrderThreeDimThree) {
  const auto a = fixtures::example1();
  EXPECT_EQ(a.order(), 3u);
  EXPECT_EQ(a.dim(), 3u);
  EXPECT_DOUBLE_EQ(a.diagonal_entry(), fixtures::kA);
}

TEST(CirculantFromRoot, ZeroVectorRootGivesZeroMatrixRow) {
  const CirculantTensor a(DenseTensor(1, 4));
  EXPECT_EQ(a.order(), 2u);
  const auto dense = a.materialize();
  for (double v : dense.entries()) EXPECT_EQ(v, 0.0);
}

TEST(CirculantFromRoot, DiagonalRootOfExample3) {
  const auto a = expand(fixtures::example3());
  EXPECT_EQ(a.order(), 4u);
  EXPECT_EQ(a.dim(), 2u);
  EXPECT_EQ(a.entry({1, 1, 1, 1}), 1.0);
  EXPECT_EQ(a.entry({1, 2, 2, 2}), 1.0);
  EXPECT_EQ(a.entry({1, 1, 2, 2}), 0.0);
}

TEST(CirculantFromRoot, RejectsNonFiniteEntries) {
  EXPECT_THROW(CirculantTensor(DenseTensor(1, 2, {1.0, NAN})), std::invalid_argument);
  EXPECT_THROW(CirculantTensor(DenseTensor(1, 2, {1.0, INFINITY})), std::invalid_argument);
  EXPECT_THROW(DenseTensor(2, 2, {1.0, 2.0}), std::invalid_argument);
}

TEST(Entry, Example1CanonicalShiftReduction) {
  const auto a = fixtures::example1();
  EXPECT_DOUBLE_EQ(a.entry({1, 2, 3}), fixtures::kD);
  EXPECT_DOUBLE_EQ(a.entry({2, 3, 1}), fixtures::kD);
  EXPECT_DOUBLE_EQ(a.entry({1, 1, 3}), fixtures::kC);
  EXPECT_DOUBLE_EQ(a.entry({3, 1, 1}), fixtures::kC);
}

TEST(Entry, DiagonalIsConstant) {
  const auto a = fixtures::example1();
  for (std::size_t j = 1; j <= 3; ++j) EXPECT_EQ(a.entry({j, j, j}), fixtures::kA);
}

TEST(Entry, OutOfRangeAndArity) {
  const auto a = fixtures::example1();
  EXPECT_THROW(a.entry({0, 1, 1}), std::out_of_range);
  EXPECT_THROW(a.entry({1, 4, 1}), std::out_of_range);
  EXPECT_THROW(a.entry({1, 1}), std::invalid_argument);
}

TEST(Entry, MatchesShiftOracleEverywhere) {
  oracle::Rng rng(11);
  for (std::size_t m = 2; m <= 4; ++m) {
    for (std::size_t n = 2; n <= 5; ++n) {
      const auto a = rng.circulant(m, n);
      Index idx(m, 0);
      do {
        ASSERT_EQ(a.entry_zero(idx), oracle::shifted_entry(a.root(), idx));
      } while (oracle::advance(idx, n));
    }
  }
}

TEST(RowTensor, Example2SecondRow) {
  const auto r2 = fixtures::example2().row_tensor(2);
  EXPECT_EQ(r2, DenseTensor(2, 2, {3.0, -1.0, -1.0, 1.0}));
}

TEST(RowTensor, FirstRowIsRoot) {
  const auto a = fixtures::example1();
  EXPECT_EQ(a.row_tensor(1), a.root());
  EXPECT_THROW(a.row_tensor(0), std::out_of_range);
  EXPECT_THROW(a.row_tensor(4), std::out_of_range);
}

TEST(RowTensor, Example1RowTwoIsRootTimesShift) {
  const auto a = fixtures::example1();
  const auto expected = matrix_product(a.root(), shift_matrix(3));
  EXPECT_LE(a.row_tensor(2).max_abs_difference(expected), 1e-12);
}

TEST(RowTensor, RecursionPropertyOnRandomTensors) {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 2 + rng.below(3);
    const std::size_t n = 2 + rng.below(4);
    const auto a = rng.circulant(m, n);
    const auto p = shift_matrix(n);
    for (std::size_t k = 1; k < n; ++k) {
      const auto next = matrix_product(a.row_tensor(k), p);
      ASSERT_LE(a.row_tensor(k + 1).max_abs_difference(next), 1e-12 * std::max(1.0, a.root().abs_sum()));
    }
  }
}

TEST(ShiftMatrix, MapsUnitVectorsBackCyclicallyAndIsOrthogonal) {
  const auto p = shift_matrix(5);
  for (std::size_t j = 0; j < 5; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(5);
    e(static_cast<Eigen::Index>(j)) = 1.0;
    const Eigen::VectorXd pe = p * e;
    const std::size_t prev = (j + 4) % 5;
    EXPECT_EQ(pe(static_cast<Eigen::Index>(prev)), 1.0);
    EXPECT_EQ(pe.sum(), 1.0);
  }
  EXPECT_TRUE((p.transpose() * p).isIdentity(0.0));
}

TEST(Materialize, MatrixCaseIsCirculantMatrix) {
  const std::vector<double> row{1.0, 2.0, 3.0, 4.0};
  const CirculantTensor a(DenseTensor(1, 4, row));
  const auto dense = a.materialize();
  for (std::size_t i = 1; i <= 4; ++i) {
    for (std::size_t j = 1; j <= 4; ++j) {
      EXPECT_EQ(dense({i, j}), row[(j + 4 - i) % 4]);
    }
  }
}

TEST(Materialize, Example1MatchesEntryAndShiftOracle) {
  const auto a = fixtures::example1();
  const auto dense = a.materialize();
  EXPECT_EQ(dense.size(), 27u);
  EXPECT_EQ(dense, oracle::materialize_by_shift(a.root()));
  Index idx(3, 1);
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; j <= 3; ++j)
      for (std::size_t k = 1; k <= 3; ++k) EXPECT_EQ(dense({i, j, k}), a.entry({i, j, k}));
}

TEST(Materialize, IdentityHasDeltaPattern) {
  const auto dense = scaled_identity(3, 3).materialize();
  EXPECT_EQ(dense, DenseTensor::identity(3, 3));
}

TEST(Materialize, BudgetExceeded) {
  const CirculantTensor a(DenseTensor(2, 10));
  EXPECT_THROW(a.materialize(100), std::length_error);
  EXPECT_NO_THROW(a.materialize(1000));
}

TEST(IsCirculant, PositiveAndNegativeCases) {
  const auto dense = fixtures::example1().materialize();
  EXPECT_TRUE(is_circulant(dense));
  EXPECT_TRUE(is_circulant(DenseTensor::identity(4, 3)));
  auto perturbed = dense;
  perturbed.set({2, 3, 1}, perturbed({2, 3, 1}) + 1.0);
  EXPECT_FALSE(is_circulant(perturbed));
  EXPECT_TRUE(is_circulant(perturbed, 1.0));
  EXPECT_DOUBLE_EQ(circulant_deviation(perturbed), 1.0);
}

TEST(IsCirculant, EquivalentToShiftProductFixedPoint) {
  oracle::Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 2 + rng.below(3);
    const std::size_t n = 2 + rng.below(3);
    DenseTensor t = trial % 2 == 0 ? rng.circulant(m, n).materialize() : rng.tensor(m, n);
    const bool fixed = matrix_product(t, shift_matrix(n)).max_abs_difference(t) == 0.0;
    EXPECT_EQ(is_circulant(t), fixed);
  }
}

TEST(FromDense, RoundTripsAndRejectsNonCirculant) {
  const auto a = fixtures::example1();
  EXPECT_EQ(CirculantTensor::from_dense(a.materialize()), a);
  EXPECT_THROW(CirculantTensor::from_dense(DenseTensor(2, 2, {1.0, 2.0, 3.0, 4.0})), std::invalid_argument);
}

TEST(ApplyFull, Example3AtOnes) {
  const auto a = expand(fixtures::example3());
  const std::vector<double> x{1.0, 1.0};
  EXPECT_DOUBLE_EQ(apply_full(a, x), 4.0);
}

TEST(ApplyFull, ZeroVector) {
  oracle::Rng rng(14);
  const auto a = rng.circulant(4, 3);
  const std::vector<double> x(3, 0.0);
  EXPECT_EQ(apply_full(a, x), 0.0);
  EXPECT_EQ(apply_full(a.materialize(), x), 0.0);
}

TEST(ApplyFull, Example1AtOnesIsThreeLambdaZero) {
  const auto a = fixtures::example1();
  const std::vector<double> x(3, 1.0);
  const double lambda0 = fixtures::kA + 3 * fixtures::kB + 3 * fixtures::kC + 2 * fixtures::kD;
  EXPECT_NEAR(apply_full(a, x), 3.0 * lambda0, 1e-12);
  EXPECT_NEAR(apply_full(a, x), 117.30378, 1e-9);
  EXPECT_NEAR(oracle::form(a.materialize(), x), 117.30378, 1e-9);
}

TEST(ApplyFull, CirculantPathMatchesNaiveForm) {
  oracle::Rng rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 2 + rng.below(4);
    const std::size_t n = 2 + rng.below(4);
    const auto a = rng.circulant(m, n);
    const auto x = rng.vector(n);
    const double expected = oracle::form(oracle::materialize_by_shift(a.root()), x);
    EXPECT_NEAR(apply_full(a, x), expected, 1e-12 * std::max(1.0, a.root().abs_sum() * n));
  }
}

TEST(ApplyFull, DimensionMismatch) {
  const auto a = fixtures::example1();
  const std::vector<double> x(2, 1.0);
  EXPECT_THROW(apply_full(a, x), std::invalid_argument);
  EXPECT_THROW(apply_full(a.materialize(), x), std::invalid_argument);
}

TEST(ApplyPartial, Example1AtOnes) {
  const auto a = fixtures::example1();
  const std::vector<std::complex<double>> x(3, 1.0);
  for (const auto& v : apply_partial(a, x)) {
    EXPECT_NEAR(v.real(), 39.1013, 1e-3);
    EXPECT_EQ(v.imag(), 0.0);
  }
}

TEST(ApplyPartial, UnitVectorSelectsEntries) {
  const auto a = fixtures::example1();
  for (std::size_t j = 1; j <= 3; ++j) {
    std::vector<double> e(3, 0.0);
    e[j - 1] = 1.0;
    const auto y = apply_partial(a, e);
    for (std::size_t k = 1; k <= 3; ++k) EXPECT_EQ(y[k - 1], a.entry({k, j, j}));
  }
}

TEST(ApplyPartial, Example2AlternatingEigenpair) {
  const auto a = fixtures::example2();
  const std::vector<double> x{1.0, -1.0};
  const auto y = apply_partial(a, x);
  EXPECT_DOUBLE_EQ(y[0], 6.0 * x[0] * x[0]);
  EXPECT_DOUBLE_EQ(y[1], 6.0 * x[1] * x[1]);
}

TEST(ApplyPartial, CirculantMatchesDenseAndOracle) {
  oracle::Rng rng(16);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 2 + rng.below(3);
    const std::size_t n = 2 + rng.below(4);
    const auto a = rng.circulant(m, n);
    std::vector<std::complex<double>> x(n);
    for (auto& v : x) v = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const auto expected = oracle::partial(oracle::materialize_by_shift(a.root()), x);
    const auto got = apply_partial(a, x);
    const auto dense = apply_partial(a.materialize(), x);
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_LE(std::abs(got[j] - expected[j]), 1e-12 * a.root().abs_sum());
      EXPECT_LE(std::abs(dense[j] - expected[j]), 1e-12 * a.root().abs_sum());
    }
  }
}

TEST(MatrixProduct, ShiftFixesCirculant) {
  const auto a = fixtures::example1();
  EXPECT_LE(matrix_product(a, shift_matrix(3)).max_abs_difference(a.materialize()), 0.0);
}

TEST(MatrixProduct, IdentityIsNoOp) {
  oracle::Rng rng(17);
  const auto t = rng.tensor(3, 4);
  EXPECT_EQ(matrix_product(t, Eigen::MatrixXd::Identity(4, 4)), t);
}

TEST(MatrixProduct, CirculantMatricesPreserveCirculance) {
  oracle::Rng rng(18);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + rng.below(3);
    const std::size_t n = 2 + rng.below(4);
    const auto a = rng.circulant(m, n);
    const auto b = matrix_product(a, random_circulant_matrix(n, rng));
    EXPECT_TRUE(is_circulant(b, 1e-12 * a.root().abs_sum() * std::pow(n, m)));
  }
}

TEST(MatrixProduct, FormIdentity) {
  oracle::Rng rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 2 + rng.below(3);
    const std::size_t n = 2 + rng.below(3);
    const std::size_t cols = 2 + rng.below(3);
    const auto t = rng.tensor(m, n);
    Eigen::MatrixXd q = Eigen::MatrixXd::Random(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(cols));
    const auto b = matrix_product(t, q);
    ASSERT_EQ(b.dim(), cols);
    const auto x = rng.vector(cols);
    const Eigen::VectorXd qx = q * Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(cols));
    const std::vector<double> qxv(qx.data(), qx.data() + qx.size());
    EXPECT_NEAR(oracle::form(b, x), oracle::form(t, qxv), 1e-10);
  }
}

TEST(MatrixProduct, DimensionMismatch) {
  EXPECT_THROW(matrix_product(DenseTensor(2, 3), Eigen::MatrixXd::Identity(2, 2)), std::invalid_argument);
}

TEST(Symmetrize, Example2Root) {
  const auto s = symmetrize(fixtures::example2());
  const auto r = s.root();
  EXPECT_NEAR(r({1, 1}), 1.0, 1e-15);
  EXPECT_NEAR(r({1, 2}), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r({2, 1}), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r({2, 2}), 1.0 / 3.0, 1e-15);
}

TEST(Symmetrize, SymmetricInputIsFixed) {
  oracle::Rng rng(20);
  const auto s = oracle::symmetrize_by_permutations(rng.tensor(3, 3));
  EXPECT_LE(symmetrize(s).max_abs_difference(s), 1e-15);
}

TEST(Symmetrize, MatchesPermutationAverageOracle) {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + rng.below(3);
    const std::size_t n = 2 + rng.below(3);
    const auto t = rng.tensor(m, n);
    EXPECT_LE(symmetrize(t).max_abs_difference(oracle::symmetrize_by_permutations(t)), 1e-14);
  }
}

TEST(Symmetrize, CirculantFormEquality) {
  oracle::Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + rng.below(4);
    const std::size_t n = 2 + rng.below(4);
    const auto a = rng.circulant(m, n);
    const auto s = symmetrize(a);
    const auto x = rng.vector(n);
    const double scale = a.materialize().abs_sum() * std::pow(oracle::max_abs(x), static_cast<double>(m));
    EXPECT_LE(std::abs(apply_full(a, x) - apply_full(s, x)), 1e-10 * scale);
    EXPECT_TRUE(is_symmetric(s.materialize(), 1e-14));
  }
}

TEST(Symmetrize, CirculantRootMatchesDensePath) {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = rng.circulant(2 + rng.below(3), 2 + rng.below(3));
    EXPECT_LE(symmetrize(a).materialize().max_abs_difference(symmetrize(a.materialize())), 1e-14);
  }
}

TEST(Symmetrize, PreservesCirculantAndToeplitz) {
  oracle::Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 3 + rng.below(2);
    const std::size_t n = 2 + rng.below(3);
    EXPECT_TRUE(is_circulant(symmetrize(rng.circulant(m, n).materialize()), 1e-14));
    // Toeplitz: entries depend only on the offsets (j2-j1, .., jm-j1) without wraparound.
    DenseTensor t(m, n);
    std::map<std::vector<long>, double> value;
    Index idx(m, 0);
    std::size_t f = 0;
    do {
      std::vector<long> key;
      for (std::size_t l = 1; l < m; ++l) key.push_back(static_cast<long>(idx[l]) - static_cast<long>(idx[0]));
      auto [it, inserted] = value.emplace(key, 0.0);
      if (inserted) it->second = rng.uniform(-1, 1);
      t.set_flat(f++, it->second);
    } while (oracle::advance(idx, n));
    ASSERT_TRUE(is_toeplitz(t));
    EXPECT_TRUE(is_toeplitz(symmetrize(t), 1e-14));
  }
}

TEST(Symmetrize, SignClassOfOffDiagonalPartIsPreserved) {
  oracle::Rng rng(25);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 3 + rng.below(2);
    const std::size_t n = 2 + rng.below(3);
    auto t = rng.tensor(m, n, 0.0, 1.0);
    Index idx(m, 0);
    std::size_t f = 0;
    do {
      std::size_t s = 0;
      for (std::size_t i : idx) s += i;
      double v = t.at_flat(f);
      switch (trial % 4) {
        case 1: v = -v; break;
        case 2: v = (s % 2 == 0) ? v : -v; break;
        case 3: v = (s % 2 == 0) ? -v : v; break;
        default: break;
      }
      t.set_flat(f++, v);
    } while (oracle::advance(idx, n));
    const auto off = t - diagonal_part(t);
    const auto s = symmetrize(t);
    const auto sym_off = s - diagonal_part(s);
    EXPECT_EQ(classify_sign(sym_off), classify_sign(off)) << "trial " << trial;
  }
}

TEST(DiagonalPart, Example1AllDiagonalsEqualA) {
  const auto d = diagonal_part(fixtures::example1());
  EXPECT_EQ(d.root().at_flat(0), fixtures::kA);
  EXPECT_EQ(d.materialize(), (fixtures::kA * DenseTensor::identity(3, 3)));
}

TEST(DiagonalPart, ZeroTensor) {
  const DenseTensor z(3, 2);
  EXPECT_EQ(diagonal_part(z), z);
}

TEST(DiagonalPart, InvariantUnderSymmetrization) {
  oracle::Rng rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = rng.tensor(2 + rng.below(3), 2 + rng.below(3));
    EXPECT_EQ(diagonal_part(symmetrize(t)), diagonal_part(t));
  }
}

TEST(ShiftInvariance, ExactForRandomCirculants) {
  oracle::Rng rng(27);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 2 + rng.below(4);
    const std::size_t n = 2 + rng.below(4);
    const auto a = rng.circulant(m, n);
    Index idx(m, 0);
    do {
      Index shifted = idx;
      for (auto& v : shifted) v = (v + 1) % n;
      ASSERT_EQ(a.entry_zero(idx), a.entry_zero(shifted));
    } while (oracle::advance(idx, n));
  }
}

TEST(ExactSum, IsOrderIndependent) {
  std::vector<double> v{1e16, 1.0, -1e16, 3.0, 1e-3};
  const double s = exact_sum(v);
  EXPECT_EQ(s, 4.001);
  std::reverse(v.begin(), v.end());
  EXPECT_EQ(exact_sum(v), s);
}

TEST(Budget, CheckedPowerOverflowIsZero) {
  EXPECT_EQ(checked_power(10, 3), 1000u);
  EXPECT_EQ(checked_power(1u << 20, 4), 0u);
  EXPECT_THROW(DenseTensor(8, 100), std::length_error);
}

}  // namespace
