#include "ctensor/psd.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <numbers>
#include <stdexcept>

#include <Eigen/QR>

#include "ctensor/multilinear.hpp"
#include "ctensor/numeric.hpp"
#include "ctensor/special_root.hpp"
#include "ctensor/spectral.hpp"
#include "ctensor/structure.hpp"

namespace ctensor {
namespace {

void require_even(std::size_t order) {
  if (order % 2 != 0) throw std::domain_error("PSD decisions need even order");
}

PsdVerdict certified(Decision d, Certificate c, std::string note) {
  PsdVerdict v;
  v.decision = d;
  v.certificate = c;
  v.note = std::move(note);
  return v;
}

double associated_abs_sum(const CirculantTensor& a) {
  const auto tail = a.root().entries().subspan(1);
  std::vector<double> abs_tail(tail.size());
  std::transform(tail.begin(), tail.end(), abs_tail.begin(), [](double v) { return std::abs(v); });
  return exact_sum(abs_tail);
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::psd: return "psd";
    case Decision::psd_strict: return "psd_strict";
    case Decision::not_psd: return "not_psd";
    case Decision::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(Certificate c) {
  switch (c) {
    case Certificate::diag_dominance: return "DiagDominance";
    case Certificate::b0: return "B0";
    case Certificate::b: return "B";
    case Certificate::nonpos_assoc: return "NonPosAssoc";
    case Certificate::neg_alt: return "NegAlt";
    case Certificate::diag_root: return "DiagRoot";
    case Certificate::doubly_circulant_reduction: return "DoublyCirculantReduction";
    case Certificate::numeric_evidence: return "NumericEvidence";
  }
  return "NumericEvidence";
}

std::optional<double> PsdVerdict::detail(std::string_view key) const {
  for (const auto& [k, v] : details) {
    if (k == key) return v;
  }
  return std::nullopt;
}

PsdVerdict refuted(const CirculantTensor& a, std::vector<double> witness,
                   std::optional<Certificate> certificate, std::string note) {
  PsdVerdict v;
  v.certificate = certificate;
  const double value = apply_full(a, witness);
  v.details.emplace_back("witness_value", value);
  if (value < 0.0) {
    v.decision = Decision::not_psd;
    v.witness = std::move(witness);
    v.note = std::move(note);
  } else {
    v.note = "witness failed verification: " + note;
  }
  return v;
}

std::vector<NecessaryCheck> necessary_checks(const CirculantTensor& a) {
  require_even(a.order());
  const std::size_t n = a.dim();
  std::vector<NecessaryCheck> out;
  std::vector<double> e1(n, 0.0);
  e1[0] = 1.0;
  const double c0 = a.diagonal_entry();
  out.push_back({"c0", c0, c0 >= 0.0, std::move(e1)});
  const double l0 = first_native(a);
  out.push_back({"lambda0", l0, l0 >= 0.0, std::vector<double>(n, 1.0)});
  if (n % 2 == 0) {
    const double half = alternative_native(a);
    out.push_back({"lambda_half", half, half >= 0.0, hat_one_k(n, 1)});
  }
  return out;
}

std::optional<PsdVerdict> sufficient_diag_dominance(const CirculantTensor& a) {
  require_even(a.order());
  const double c0 = a.diagonal_entry();
  const double off = associated_abs_sum(a);
  if (c0 < off) return std::nullopt;
  auto v = certified(Decision::psd, Certificate::diag_dominance, "c0 >= sum of |associated entries|");
  v.details = {{"c0", c0}, {"associated_abs_sum", off}};
  return v;
}

std::optional<PsdVerdict> sufficient_b_class(const CirculantTensor& a) {
  require_even(a.order());
  const auto r = b_class(a);
  std::optional<PsdVerdict> v;
  if (r.is_b) {
    v = certified(Decision::psd_strict, Certificate::b, "circulant B tensor");
  } else if (r.is_b0) {
    v = certified(Decision::psd, Certificate::b0, "circulant B0 tensor");
  } else {
    return std::nullopt;
  }
  v->details = {{"row_sum", r.row_sums.front()}, {"max_offdiag", r.max_offdiag}};
  return v;
}

std::optional<PsdVerdict> sufficient_b_class(const DenseTensor& a) {
  require_even(a.order());
  if (!is_circulant(a)) return std::nullopt;
  return sufficient_b_class(CirculantTensor::from_dense(a));
}

std::optional<PsdVerdict> exact_special_cases(const CirculantTensor& a) {
  require_even(a.order());
  const std::size_t n = a.dim();
  const auto assoc = associated_tensor(a);
  if (is_nonpositive(assoc)) {
    const double l0 = first_native(a);
    PsdVerdict v = l0 >= 0.0
        ? certified(Decision::psd, Certificate::nonpos_assoc, "non-positive associated tensor, lambda0 >= 0")
        : refuted(a, std::vector<double>(n, 1.0), Certificate::nonpos_assoc,
                  "non-positive associated tensor, lambda0 < 0");
    v.details.emplace_back("lambda0", l0);
    return v;
  }
  if (n % 2 == 0 && is_negatively_alternative(assoc)) {
    const double half = alternative_native(a);
    PsdVerdict v = half >= 0.0
        ? certified(Decision::psd, Certificate::neg_alt,
                    "negatively alternative associated tensor, lambda_{n/2} >= 0")
        : refuted(a, hat_one_k(n, 1), Certificate::neg_alt,
                  "negatively alternative associated tensor, lambda_{n/2} < 0");
    v.details.emplace_back("lambda_half", half);
    return v;
  }
  return std::nullopt;
}

namespace {

PsdVerdict run_chain(const CirculantTensor& a, const PsdOptions& options) {
  for (const auto& c : necessary_checks(a)) {
    if (!c.pass) {
      auto v = refuted(a, c.witness, std::nullopt, "necessary condition " + c.name + " < 0");
      v.details.emplace_back(c.name, c.value);
      return v;
    }
  }

  if (const auto spec = diag_root_of(a)) {
    auto v = diag_root_psd(*spec);
    if (v.decided()) return v;
  }
  if (a.order() >= 4 && is_doubly_circulant(a, 1e-12 * a.root().abs_sum())) {
    auto v = doubly_psd(a);
    if (v.decided()) return v;
  }
  if (auto v = sufficient_diag_dominance(a)) return *v;
  if (auto v = sufficient_b_class(a)) return *v;
  if (auto v = exact_special_cases(a)) {
    if (v->decided()) return *v;
  }

  PsdVerdict out;
  if (options.mode == PsdMode::certificates_only) {
    out.note = "no certificate applies";
    return out;
  }
  const auto ms = multi_start(a, options.admm, options.restarts, std::nullopt, options.threads);
  const double scale = a.root().abs_sum();
  if (ms.best.value < -options.numeric_threshold * scale) {
    out = refuted(a, ms.best.point, Certificate::numeric_evidence, "multi-start minimum is negative");
  } else {
    out.certificate = Certificate::numeric_evidence;
    out.note = "multi-start minimum is nonnegative; not a proof";
  }
  out.details.emplace_back("numeric_min", ms.best.value);
  out.details.emplace_back("restarts", static_cast<double>(options.restarts));
  out.details.emplace_back("iterations_mean", ms.iterations_mean);
  return out;
}

/// Replaces a certificate witness by the multi-start minimizer when the latter
/// is more negative on the unit sphere.
void sharpen_witness(const CirculantTensor& a, const PsdOptions& options, PsdVerdict& v) {
  std::vector<double> w = *v.witness;
  const double norm = norm2(w);
  for (double& x : w) x /= norm;
  const double current = apply_full(a, w);
  const auto ms = multi_start(a, options.admm, options.restarts, std::nullopt, options.threads);
  v.details.emplace_back("numeric_min", ms.best.value);
  if (ms.best.value < current && apply_full(a, ms.best.point) < 0.0) {
    v.witness = ms.best.point;
    for (auto& [key, value] : v.details) {
      if (key == "witness_value") value = apply_full(a, ms.best.point);
    }
  }
}

}  // namespace

PsdVerdict check_psd(const CirculantTensor& a, const PsdOptions& options) {
  require_even(a.order());
  auto v = run_chain(a, options);
  if (options.mode == PsdMode::with_numeric && v.decision == Decision::not_psd &&
      v.certificate != Certificate::numeric_evidence) {
    sharpen_witness(a, options, v);
  }
  return v;
}

namespace {

struct Evaluator {
  std::function<double(std::span<const double>)> f;
  std::size_t calls = 0;

  double operator()(std::span<const double> x) {
    ++calls;
    return f(x);
  }
};

std::vector<double> circle_point(double theta) { return {std::cos(theta), std::sin(theta)}; }

BruteForceResult brute_circle(Evaluator& f, std::size_t resolution, double lipschitz) {
  const std::size_t N = resolution == 0 ? 2000 : resolution;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(N);
  std::vector<double> vals(N);
  for (std::size_t i = 0; i < N; ++i) vals[i] = f(circle_point(h * static_cast<double>(i)));

  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < N; ++i) {
    if (vals[i] <= vals[(i + N - 1) % N] && vals[i] <= vals[(i + 1) % N]) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  if (minima.size() > 8) minima.resize(8);

  BruteForceResult r;
  const std::size_t arg = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  r.value = vals[arg];
  r.argmin = circle_point(h * static_cast<double>(arg));
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i : minima) {
    double lo = h * static_cast<double>(i) - h;
    double hi = h * static_cast<double>(i) + h;
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = f(circle_point(x1));
    double f2 = f(circle_point(x2));
    while (hi - lo > 1e-12) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = f(circle_point(x1));
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = f(circle_point(x2));
      }
    }
    const double t = 0.5 * (lo + hi);
    const double v = f(circle_point(t));
    if (v < r.value) {
      r.value = v;
      r.argmin = circle_point(t);
    }
  }
  r.error_bound = lipschitz * h / 2.0;
  return r;
}

// Nelder-Mead in the tangent space at p; points are mapped back to the sphere.
std::pair<double, std::vector<double>> refine_sphere(Evaluator& f, const std::vector<double>& p, double size) {
  const auto n = static_cast<Eigen::Index>(p.size());
  const Eigen::Index d = n - 1;
  const Eigen::Map<const Eigen::VectorXd> base(p.data(), n);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(base).householderQ();
  const Eigen::MatrixXd tangent = q.rightCols(d);
  auto point = [&](const Eigen::VectorXd& y) {
    const Eigen::VectorXd x = (base + tangent * y).normalized();
    return std::vector<double>(x.data(), x.data() + n);
  };
  std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(d + 1), Eigen::VectorXd::Zero(d));
  for (Eigen::Index i = 0; i < d; ++i) simplex[static_cast<std::size_t>(i + 1)](i) = size;
  std::vector<double> vals(simplex.size());
  for (std::size_t i = 0; i < simplex.size(); ++i) vals[i] = f(point(simplex[i]));
  std::vector<std::size_t> order(simplex.size());
  for (int iter = 0; iter < 300 * static_cast<int>(d); ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    double diameter = 0.0;
    for (const auto& v : simplex) diameter = std::max(diameter, (v - simplex[best]).norm());
    if (diameter < 1e-13) break;
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= static_cast<double>(d);
    auto along = [&](double k) { return Eigen::VectorXd(centroid + k * (simplex[worst] - centroid)); };
    const Eigen::VectorXd refl = along(-1.0);
    const double frefl = f(point(refl));
    if (frefl < vals[best]) {
      const Eigen::VectorXd exp = along(-2.0);
      const double fexp = f(point(exp));
      if (fexp < frefl) {
        simplex[worst] = exp;
        vals[worst] = fexp;
      } else {
        simplex[worst] = refl;
        vals[worst] = frefl;
      }
    } else if (frefl < vals[second]) {
      simplex[worst] = refl;
      vals[worst] = frefl;
    } else {
      const Eigen::VectorXd con = frefl < vals[worst] ? along(-0.5) : along(0.5);
      const double fcon = f(point(con));
      if (fcon < std::min(frefl, vals[worst])) {
        simplex[worst] = con;
        vals[worst] = fcon;
      } else {
        for (std::size_t i = 0; i < simplex.size(); ++i) {
          if (i == best) continue;
          simplex[i] = 0.5 * (simplex[i] + simplex[best]);
          vals[i] = f(point(simplex[i]));
        }
      }
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  return {*it, point(simplex[static_cast<std::size_t>(it - vals.begin())])};
}

/// Best grid points that are pairwise farther apart than `separation`.
std::vector<std::size_t> separated_seeds(const std::vector<std::vector<double>>& pts, const std::vector<double>& vals,
                                         std::size_t count, double separation) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  std::vector<std::size_t> seeds;
  for (std::size_t i : order) {
    if (seeds.size() >= count) break;
    const bool far = std::all_of(seeds.begin(), seeds.end(), [&](std::size_t s) {
      double d = 0.0;
      for (std::size_t k = 0; k < pts[i].size(); ++k) d += (pts[i][k] - pts[s][k]) * (pts[i][k] - pts[s][k]);
      return std::sqrt(d) > separation;
    });
    if (far) seeds.push_back(i);
  }
  return seeds;
}

BruteForceResult refine_grid(Evaluator& f, const std::vector<std::vector<double>>& pts, const std::vector<double>& vals,
                             double spacing, std::size_t seed_count, double lipschitz) {
  const auto seeds = separated_seeds(pts, vals, seed_count, 3.0 * spacing);
  BruteForceResult r;
  r.value = vals[seeds.front()];
  r.argmin = pts[seeds.front()];
  for (std::size_t s : seeds) {
    auto [val, x] = refine_sphere(f, pts[s], spacing);
    if (val < r.value) {
      r.value = val;
      r.argmin = std::move(x);
    }
  }
  r.error_bound = lipschitz * spacing;
  return r;
}

BruteForceResult brute_sphere(Evaluator& f, std::size_t resolution, double lipschitz) {
  const std::size_t N = resolution == 0 ? 10000 : resolution;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<std::vector<double>> pts(N);
  std::vector<double> vals(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(N);
    const double r = std::sqrt(1.0 - z * z);
    const double phi = golden * static_cast<double>(i);
    pts[i] = {r * std::cos(phi), r * std::sin(phi), z};
    vals[i] = f(pts[i]);
  }
  const double spacing = std::sqrt(4.0 * std::numbers::pi / static_cast<double>(N));
  return refine_grid(f, pts, vals, spacing, 12, lipschitz);
}

// Points of the faces of [-1,1]^4 on a k-grid, projected to the sphere. A face
// cell has half-diagonal sqrt(3)/k and projection does not stretch distances.
BruteForceResult brute_hypersphere(Evaluator& f, std::size_t resolution, double lipschitz) {
  const std::size_t k = resolution == 0 ? 20 : resolution;
  std::vector<std::vector<double>> pts;
  std::vector<double> vals;
  for (std::size_t axis = 0; axis < 4; ++axis) {
    for (double sign : {-1.0, 1.0}) {
      std::array<std::size_t, 3> c{0, 0, 0};
      do {
        std::vector<double> x(4);
        std::size_t free = 0;
        for (std::size_t i = 0; i < 4; ++i) {
          x[i] = i == axis ? sign : -1.0 + 2.0 * static_cast<double>(c[free++]) / static_cast<double>(k);
        }
        const double nx = norm2(x);
        for (double& v : x) v /= nx;
        vals.push_back(f(x));
        pts.push_back(std::move(x));
        std::size_t l = 0;
        while (l < 3 && ++c[l] > k) c[l++] = 0;
        if (l == 3) break;
      } while (true);
    }
  }
  const double spacing = std::sqrt(3.0) / static_cast<double>(k);
  return refine_grid(f, pts, vals, spacing, 16, lipschitz);
}

template <typename Tensor>
BruteForceResult brute_impl(const Tensor& a, std::size_t resolution, double abs_sum_full) {
  if (a.order() % 2 != 0) throw std::domain_error("brute force needs even order");
  const std::size_t n = a.dim();
  if (n < 2 || n > 4) throw std::invalid_argument("brute force supports n = 2, 3 or 4 only");
  Evaluator f{[&](std::span<const double> x) { return apply_full(a, x); }};
  // |grad A x^m| <= m * sum |a| on the unit sphere.
  const double lipschitz = static_cast<double>(a.order()) * abs_sum_full;
  auto r = n == 2   ? brute_circle(f, resolution, lipschitz)
           : n == 3 ? brute_sphere(f, resolution, lipschitz)
                    : brute_hypersphere(f, resolution, lipschitz);
  r.evaluations = f.calls;
  const double nx = norm2(r.argmin);
  for (double& v : r.argmin) v /= nx;
  return r;
}

}  // namespace

BruteForceResult brute_force_min(const DenseTensor& a, std::size_t resolution) {
  return brute_impl(a, resolution, a.abs_sum());
}

BruteForceResult brute_force_min(const CirculantTensor& a, std::size_t resolution) {
  // Each root entry appears n times in the full tensor.
  return brute_impl(a, resolution, static_cast<double>(a.dim()) * a.root().abs_sum());
}

}  // namespace ctensor
