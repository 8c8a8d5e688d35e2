#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ctensor/hypergraph.hpp"
#include "ctensor/multilinear.hpp"
#include "ctensor/numeric.hpp"
#include "ctensor/psd.hpp"
#include "ctensor/special_root.hpp"
#include "ctensor/spectral.hpp"
#include "ctensor/structure.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace {

using namespace ctensor;

PsdOptions numeric_options(std::size_t restarts = 32) {
  PsdOptions o;
  o.mode = PsdMode::with_numeric;
  o.restarts = restarts;
  return o;
}

void expect_verified_witness(const CirculantTensor& a, const PsdVerdict& v) {
  ASSERT_EQ(v.decision, Decision::not_psd);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_LT(apply_full(a, *v.witness), 0.0);
}

TEST(NecessaryChecks, NegativeDiagonal) {
  const CirculantTensor a(DenseTensor(3, 2, {-1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}));
  const auto checks = necessary_checks(a);
  ASSERT_EQ(checks.size(), 3u);
  EXPECT_EQ(checks[0].name, "c0");
  EXPECT_FALSE(checks[0].pass);
  EXPECT_EQ(checks[0].witness, (std::vector<double>{1.0, 0.0}));
  const auto v = check_psd(a);
  expect_verified_witness(a, v);
  EXPECT_EQ(*v.witness, (std::vector<double>{1.0, 0.0}));
}

TEST(NecessaryChecks, DirectedLaplacianPassesAll) {
  const auto g = orbit_closure({{1, 2, 3, 5}, {1, 3, 4, 6}}, 6, true);
  for (const auto& c : necessary_checks(laplacian_tensor(g))) EXPECT_TRUE(c.pass) << c.name;
}

TEST(NecessaryChecks, DiagRootLambdaZeroNegative) {
  const auto a = expand(DiagRootSpec{4, {1.0, -3.0}});
  const auto checks = necessary_checks(a);
  EXPECT_TRUE(checks[0].pass);
  EXPECT_EQ(checks[1].name, "lambda0");
  EXPECT_DOUBLE_EQ(checks[1].value, -2.0);
  EXPECT_FALSE(checks[1].pass);
  EXPECT_EQ(checks[1].witness, (std::vector<double>{1.0, 1.0}));
}

TEST(NecessaryChecks, OddOrderRejected) {
  EXPECT_THROW(necessary_checks(fixtures::example1()), std::domain_error);
  EXPECT_THROW(check_psd(fixtures::example2()), std::domain_error);
}

TEST(NecessaryChecks, OddDimensionHasNoLambdaHalf) {
  const auto checks = necessary_checks(expand(fixtures::example5()));
  EXPECT_EQ(checks.size(), 2u);
}

TEST(DiagDominance, Certifies) {
  const auto v = sufficient_diag_dominance(expand(DiagRootSpec{4, {5.0, 1.0, -2.0, 1.0}}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->decision, Decision::psd);
  EXPECT_EQ(v->certificate, Certificate::diag_dominance);
  EXPECT_EQ(v->detail("associated_abs_sum"), 4.0);
}

TEST(DiagDominance, Example3Boundary) {
  const auto v = sufficient_diag_dominance(expand(fixtures::example3()));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->detail("c0"), 1.0);
  EXPECT_EQ(v->detail("associated_abs_sum"), 1.0);
}

TEST(DiagDominance, ZeroDiagonalWithOffDiagonalMass) {
  EXPECT_FALSE(sufficient_diag_dominance(expand(DiagRootSpec{4, {0.0, 0.1}})).has_value());
}

TEST(BClassCertificate, DirectedGraphSignlessLaplacian) {
  const auto g = orbit_closure({{1, 2}, {1, 3}}, 4, true);
  const auto v = sufficient_b_class(signless_laplacian_tensor(g));
  ASSERT_TRUE(v.has_value());
  EXPECT_TRUE(v->is_psd());
  const auto l = sufficient_b_class(laplacian_tensor(g));
  ASSERT_TRUE(l.has_value());
  EXPECT_EQ(l->decision, Decision::psd);
}

TEST(BClassCertificate, IdentityIsStrict) {
  const auto v = sufficient_b_class(scaled_identity(4, 3));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->decision, Decision::psd_strict);
  EXPECT_EQ(v->certificate, Certificate::b);
}

TEST(BClassCertificate, NonCirculantB0MatrixIsNotCertified) {
  const DenseTensor a(2, 2, {10.0, 10.0, 1.0, 1.0});
  ASSERT_TRUE(b_class(a).is_b0);
  EXPECT_FALSE(sufficient_b_class(a).has_value());
  EXPECT_DOUBLE_EQ(oracle::form(a, {1.0, -9.0}), -8.0);
}

TEST(BClassCertificate, DenseCirculantInputIsAccepted) {
  const auto v = sufficient_b_class(scaled_identity(2, 3).materialize());
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->decision, Decision::psd_strict);
}

TEST(BClassCertificate, FourUniformSignlessLaplacianIsNotB0) {
  const auto g = orbit_closure({{1, 2, 3, 5}, {1, 3, 4, 6}}, 6, true);
  const auto q = signless_laplacian_tensor(g);
  const auto r = b_class(q);
  EXPECT_FALSE(r.is_b0);
  EXPECT_NEAR(r.max_offdiag, 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(first_native(q) / std::pow(6.0, 3), 4.0 / 216.0, 1e-15);
  EXPECT_TRUE(b_class(laplacian_tensor(g)).is_b0);
}

TEST(ExactSpecialCases, NonPositiveTailBoundary) {
  const auto v = exact_special_cases(expand(DiagRootSpec{4, {3.0, -1.0, -1.0, -1.0}}));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->decision, Decision::psd);
  EXPECT_EQ(v->certificate, Certificate::nonpos_assoc);
  EXPECT_EQ(v->detail("lambda0"), 0.0);
}

TEST(ExactSpecialCases, NonPositiveTailFailure) {
  const auto a = expand(DiagRootSpec{4, {2.0, -2.0, -2.0, -2.0}});
  const auto v = exact_special_cases(a);
  ASSERT_TRUE(v.has_value());
  expect_verified_witness(a, *v);
  EXPECT_EQ(*v->witness, (std::vector<double>(4, 1.0)));
  EXPECT_DOUBLE_EQ(apply_full(a, *v->witness), 4.0 * -4.0);
}

TEST(ExactSpecialCases, NegativelyAlternativeBoundary) {
  // Associated entries carry sign -(-1)^{sum of 0-based indices}; lambda_{n/2} = 0.
  const CirculantTensor a(DenseTensor(3, 2, {3.0, 1.0, 1.0, -0.0, 1.0, -0.0, -0.0, 0.0}));
  ASSERT_TRUE(is_negatively_alternative(associated_tensor(a)));
  ASSERT_EQ(alternative_native(a), 0.0);
  const auto v = exact_special_cases(a);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->decision, Decision::psd);
  EXPECT_EQ(v->certificate, Certificate::neg_alt);
  EXPECT_GE(brute_force_min(a).value, -1e-12);
}

TEST(ExactSpecialCases, NotApplicable) {
  EXPECT_FALSE(exact_special_cases(expand(fixtures::example6())).has_value());
}

TEST(CheckPsd, Example3ViaDiagDominance) {
  const auto v = check_psd(expand(fixtures::example3()));
  EXPECT_EQ(v.decision, Decision::psd);
  EXPECT_EQ(v.certificate, Certificate::diag_dominance);
}

TEST(CheckPsd, Example5NumericWitnessReachesTableValue) {
  const auto a = expand(fixtures::example5());
  const auto cert = check_psd(a);
  expect_verified_witness(a, cert);
  const auto v = check_psd(a, numeric_options());
  expect_verified_witness(a, v);
  EXPECT_NEAR(apply_full(a, *v.witness), fixtures::kExample5Min, 1e-4);
  const auto& w = *v.witness;
  EXPECT_NEAR(std::hypot(w[0], w[1], w[2]), 1.0, 1e-9);
}

TEST(CheckPsd, Example4CaseTwoViaReduction) {
  const auto v = check_psd(fixtures::example4(1.0, -0.5));
  EXPECT_EQ(v.decision, Decision::psd);
  EXPECT_EQ(v.certificate, Certificate::doubly_circulant_reduction);
}

TEST(CheckPsd, Example4CaseOneRefuted) {
  const auto a = fixtures::example4(1.0, 5.0);
  const auto v = check_psd(a);
  expect_verified_witness(a, v);
  EXPECT_DOUBLE_EQ(apply_full(a, std::vector<double>{1.0, -2.0}), -3.0);
}

TEST(CheckPsd, Example6NeedsNumericFallback) {
  const auto a = expand(fixtures::example6());
  const auto cert = check_psd(a);
  EXPECT_EQ(cert.decision, Decision::inconclusive);
  const auto v = check_psd(a, numeric_options());
  expect_verified_witness(a, v);
  EXPECT_EQ(v.certificate, Certificate::numeric_evidence);
  EXPECT_NEAR(*v.detail("numeric_min"), fixtures::kExample6Min, 1e-4);
}

TEST(CheckPsd, NumericEvidenceNeverClaimsPsd) {
  const CirculantTensor a(DenseTensor(3, 2, {1.0, 0.3, -0.2, 0.25, 0.25, -0.2, 0.3, 0.0}));
  const auto b = brute_force_min(a);
  const auto v = check_psd(a, numeric_options());
  if (b.value > 1e-3) {
    EXPECT_EQ(v.decision, Decision::inconclusive);
    EXPECT_EQ(v.certificate, Certificate::numeric_evidence);
  }
  EXPECT_NE(v.decision, Decision::psd);
}

TEST(CheckPsd, NumericModeIsDeterministic) {
  const auto a = expand(fixtures::example6());
  auto o = numeric_options(8);
  o.admm.seed = 7;
  const auto v1 = check_psd(a, o);
  o.threads = 3;
  const auto v2 = check_psd(a, o);
  EXPECT_EQ(v1.witness, v2.witness);
  EXPECT_EQ(v1.details, v2.details);
}

TEST(Refuted, FailedVerificationIsInconclusive) {
  const auto a = scaled_identity(4, 2);
  const auto v = refuted(a, {1.0, 1.0}, Certificate::numeric_evidence, "probe");
  EXPECT_EQ(v.decision, Decision::inconclusive);
  EXPECT_FALSE(v.witness.has_value());
  EXPECT_NE(v.note.find("failed verification"), std::string::npos);
}

TEST(BruteForce, Example3MinimumIsZeroOnAntiDiagonal) {
  const auto b = brute_force_min(expand(fixtures::example3()));
  EXPECT_NEAR(b.value, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(b.argmin[0] + b.argmin[1]), 0.0, 1e-5);
  EXPECT_GT(b.error_bound, 0.0);
}

TEST(BruteForce, Example6) {
  const auto a = expand(fixtures::example6());
  const auto b = brute_force_min(a);
  EXPECT_NEAR(b.value, fixtures::kExample6Min, 1e-3);
  EXPECT_NEAR(apply_full(a, b.argmin), b.value, 1e-12);
  const auto dense = brute_force_min(a.materialize());
  EXPECT_NEAR(dense.value, b.value, 1e-9);
}

TEST(BruteForce, Example5ThreeDimensional) {
  const auto b = brute_force_min(expand(fixtures::example5()));
  EXPECT_NEAR(b.value, fixtures::kExample5Min, 1e-3);
  EXPECT_NEAR(std::hypot(b.argmin[0], b.argmin[1], b.argmin[2]), 1.0, 1e-12);
}

TEST(BruteForce, IdentityOnCircle) {
  const auto b = brute_force_min(scaled_identity(4, 2));
  EXPECT_NEAR(b.value, 0.5, 1e-12);
  EXPECT_NEAR(std::abs(b.argmin[0]), std::sqrt(0.5), 1e-6);
  EXPECT_NEAR(std::abs(b.argmin[1]), std::sqrt(0.5), 1e-6);
}

TEST(BruteForce, NeverBelowSampledMinimumAndWithinBound) {
  oracle::Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    const auto a = rng.circulant(4, n, -10, 10);
    const auto b = brute_force_min(a);
    const double sampled = oracle::sampled_min([&](const std::vector<double>& x) { return apply_full(a, x); }, n, 20000, rng);
    EXPECT_LE(b.value, sampled + 1e-9);
    EXPECT_GE(b.value, sampled - b.error_bound);
    EXPECT_NEAR(apply_full(a, b.argmin), b.value, 1e-9 * a.root().abs_sum());
  }
}

TEST(BruteForce, UnsupportedInputs) {
  EXPECT_THROW(brute_force_min(scaled_identity(4, 5)), std::invalid_argument);
  EXPECT_THROW(brute_force_min(scaled_identity(3, 2)), std::domain_error);
}

TEST(Certificates, DiagDominanceWithoutB0) {
  const CirculantTensor a(DenseTensor(3, 2, {1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}));
  EXPECT_TRUE(sufficient_diag_dominance(a).has_value());
  EXPECT_FALSE(b_class(a).is_b0);
  EXPECT_EQ(check_psd(a).certificate, Certificate::diag_dominance);
  EXPECT_GE(brute_force_min(a).value, -1e-12);
}

TEST(Certificates, B0WithoutDiagDominance) {
  const CirculantTensor a(DenseTensor(3, 2, {1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}));
  EXPECT_FALSE(sufficient_diag_dominance(a).has_value());
  const auto b = sufficient_b_class(a);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->certificate, Certificate::b0);
  EXPECT_GE(brute_force_min(a).value, -1e-12);
  const CirculantTensor strict(DenseTensor(3, 2, {2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0}));
  EXPECT_FALSE(sufficient_diag_dominance(strict).has_value());
  EXPECT_EQ(check_psd(strict).certificate, Certificate::b);
  EXPECT_EQ(check_psd(strict).decision, Decision::psd_strict);
}

TEST(Certificates, ConsistentWithBruteForceOnRandomCertifiedTensors) {
  oracle::Rng rng(72);
  int certified = 0;
  for (int attempt = 0; attempt < 20000 && certified < 200; ++attempt) {
    const std::size_t n = 2 + rng.below(3);
    auto root = rng.tensor(3, n, -1.0, 1.0);
    switch (attempt % 3) {
      case 0: root.set_flat(0, rng.uniform(0.0, 2.0 * root.abs_sum())); break;
      case 1:
        for (std::size_t f = 1; f < root.size(); ++f) root.set_flat(f, -std::abs(root.at_flat(f)));
        root.set_flat(0, rng.uniform(0.0, root.abs_sum()));
        break;
      default:
        for (std::size_t f = 1; f < root.size(); ++f) root.set_flat(f, rng.uniform(-0.2, 1.0));
        root.set_flat(0, rng.uniform(0.0, 3.0));
        break;
    }
    const CirculantTensor a(root);
    const auto v = check_psd(a);
    if (!v.is_psd()) continue;
    ++certified;
    EXPECT_GE(brute_force_min(a).value, -1e-6) << "certificate " << to_string(*v.certificate);
  }
  EXPECT_EQ(certified, 200);
}

TEST(Certificates, NonPositiveAssociatedDecidedBySignOfLambdaZero) {
  oracle::Rng rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    auto root = rng.tensor(3, n, -1.0, 0.0);
    root.set_flat(0, rng.uniform(0.0, root.abs_sum() * 1.2));
    const CirculantTensor a(root);
    const auto v = check_psd(a);
    ASSERT_TRUE(v.decided());
    EXPECT_EQ(v.is_psd(), first_native(a) >= 0.0);
    if (!v.is_psd()) expect_verified_witness(a, v);
  }
}

TEST(Certificates, DiagDominanceEqualityCase) {
  oracle::Rng rng(74);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(3);
    auto root = rng.tensor(3, n, -1.0, 1.0);
    root.set_flat(0, 0.0);
    std::vector<double> abs_entries(root.entries().begin(), root.entries().end());
    for (double& e : abs_entries) e = std::abs(e);
    root.set_flat(0, exact_sum(abs_entries));
    const CirculantTensor a(root);
    const auto v = check_psd(a);
    EXPECT_EQ(v.certificate, Certificate::diag_dominance);
    EXPECT_TRUE(v.is_psd());
    EXPECT_GE(brute_force_min(a).value, -1e-6);
  }
}

TEST(ToString, Names) {
  EXPECT_EQ(to_string(Decision::psd_strict), "psd_strict");
  EXPECT_EQ(to_string(Certificate::doubly_circulant_reduction), "DoublyCirculantReduction");
  EXPECT_EQ(to_string(Certificate::b0), "B0");
}

}  // namespace
