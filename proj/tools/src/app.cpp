#include "ctensor_cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctensor/ctensor.hpp"

#ifndef CTENSOR_DATA_DIR
#define CTENSOR_DATA_DIR "data"
#endif

namespace ctensor::cli {
namespace {

using Json = nlohmann::ordered_json;

enum class Format { json, csv };

struct Common {
  std::string format = "json";
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  std::string output;
  std::uint64_t seed = 0;
  bool timings = false;

  Format fmt() const { return format == "csv" ? Format::csv : Format::json; }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void dump(const Json& j, std::string& s, int level) {
  const std::string pad(static_cast<std::size_t>(2 * (level + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * level), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        s += "{}";
        return;
      }
      s += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) s += ",\n";
        first = false;
        s += pad + Json(k).dump() + ": ";
        dump(v, s, level + 1);
      }
      s += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        s += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
      if (flat) {
        s += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) s += ", ";
          dump(j[i], s, level + 1);
        }
        s += "]";
        return;
      }
      s += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) s += ",\n";
        s += pad;
        dump(j[i], s, level + 1);
      }
      s += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      s += format_double(j.get<double>());
      return;
    default:
      s += j.dump();
  }
}

std::string render(const Json& j) {
  std::string s;
  dump(j, s, 0);
  return s + "\n";
}

std::string csv_field(const Json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) {
    const auto& str = v.get_ref<const std::string&>();
    if (str.find_first_of(",\"\n") == std::string::npos) return str;
    std::string q = "\"";
    for (char c : str) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

// Rows must be objects sharing the first row's keys.
std::string render_csv(const Json& rows) {
  std::string s;
  if (rows.empty()) return s;
  bool first = true;
  for (const auto& [k, v] : rows.front().items()) {
    (void)v;
    if (!first) s += ',';
    first = false;
    s += k;
  }
  s += '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& [k, v] : row.items()) {
      (void)k;
      if (!first) s += ',';
      first = false;
      s += csv_field(v);
    }
    s += '\n';
  }
  return s;
}

Json numbers(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json tensor_json(const CirculantTensor& a) {
  return Json{{"kind", "circulant"}, {"order", a.order()}, {"dim", a.dim()}, {"root", numbers(a.root().entries())}};
}

CirculantTensor require_circulant(const TensorDocument& doc, const char* what) {
  auto a = doc.as_circulant();
  if (!a) throw UsageError(std::string(what) + " needs a circulant tensor");
  return *a;
}

Json verdict_json(const PsdVerdict& v) {
  Json out;
  out["decision"] = std::string(to_string(v.decision));
  out["certificate"] = v.certificate ? Json(std::string(to_string(*v.certificate))) : Json(nullptr);
  out["witness"] = v.witness ? numbers(*v.witness) : Json(nullptr);
  Json evidence = Json::object();
  for (const auto& [k, x] : v.details) evidence[k] = x;
  evidence["note"] = v.note;
  out["evidence"] = std::move(evidence);
  return out;
}

// ---- subcommands -------------------------------------------------------------

std::string cmd_eig(const std::string& path, const Common& c) {
  const auto a = require_circulant(load_tensor(path), "eig");
  const auto spec = native_eigenvalues(a);
  Json rows = Json::array();
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const auto v = native_eigenvector(a.dim(), k);
    rows.push_back(Json{{"k", k},
                        {"re", spec.lambdas[k].real()},
                        {"im", spec.lambdas[k].imag()},
                        {"residual", eigen_residual(a, spec.lambdas[k], v)}});
  }
  if (c.fmt() == Format::csv) return render_csv(rows);
  const auto disc = gershgorin(a);
  Json out;
  out["order"] = a.order();
  out["dim"] = a.dim();
  out["lambdas"] = rows;
  out["gershgorin"] = Json{{"center", disc.center}, {"radius", disc.radius}};
  if (const auto ext = extreme_h_eigenvalue(a)) {
    out["extreme"] = Json{{"value", ext->value},
                          {"kind", std::string(to_string(ext->kind))},
                          {"basis", std::string(to_string(ext->basis))}};
  } else {
    out["extreme"] = nullptr;
  }
  return render(out);
}

std::string cmd_classify(const std::string& path, const Common& c) {
  if (c.fmt() == Format::csv) throw UsageError("classify has no csv output");
  const auto doc = load_tensor(path);
  Json out;
  if (const auto a = doc.as_circulant()) {
    const auto b = b_class(*a);
    out["circulant"] = true;
    out["sign"] = std::string(to_string(classify_sign(*a)));
    out["b0"] = b.is_b0;
    out["b"] = b.is_b;
    out["doubly_circulant"] = a->order() >= 3 && is_doubly_circulant(*a);
    out["toeplitz"] = true;
  } else {
    const auto& t = *doc.dense;
    const auto b = b_class(t);
    out["circulant"] = false;
    out["sign"] = std::string(to_string(classify_sign(t)));
    out["b0"] = b.is_b0;
    out["b"] = b.is_b;
    out["doubly_circulant"] = false;
    out["toeplitz"] = is_toeplitz(t);
  }
  out["symmetric"] = is_symmetric(doc.dense ? *doc.dense : doc.circulant->materialize());
  return render(out);
}

std::string cmd_psd(const std::string& path, bool numeric, std::size_t restarts, const Common& c) {
  if (c.fmt() == Format::csv) throw UsageError("psd has no csv output");
  const auto a = require_circulant(load_tensor(path), "psd");
  if (a.order() % 2 != 0) throw UsageError("psd needs an even-order tensor");
  PsdOptions opt;
  opt.mode = numeric ? PsdMode::with_numeric : PsdMode::certificates_only;
  opt.admm.seed = c.seed;
  opt.restarts = restarts;
  opt.threads = c.threads;
  return render(verdict_json(check_psd(a, opt)));
}

std::string cmd_minimize(const std::string& path, const AdmmParams& params, std::size_t restarts,
                         std::optional<double> reference, const Common& c) {
  const auto doc = load_tensor(path);
  const DenseTensor t = doc.dense ? *doc.dense : doc.circulant->materialize();
  const auto ms = multi_start(t, params, restarts, reference, c.threads);
  if (c.fmt() == Format::csv) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < restarts; ++r) {
      rows.push_back(Json{{"restart", r}, {"value", ms.values[r]}, {"iterations", ms.iterations[r]}});
    }
    return render_csv(rows);
  }
  Json out;
  out["restarts"] = restarts;
  out["seed"] = params.seed;
  out["beta"] = ms.best.beta;
  out["scale_beta"] = params.scale_beta;
  out["epsilon"] = params.epsilon;
  out["best_value"] = ms.best.value;
  out["point"] = numbers(ms.best.point);
  out["best_iterations"] = ms.best.iterations;
  out["converged"] = ms.best.converged;
  out["consensus_gap"] = ms.best.consensus_gap;
  out["iterations_mean"] = ms.iterations_mean;
  out["success_rate"] = ms.success_rate ? Json(*ms.success_rate) : Json(nullptr);
  out["values"] = numbers(ms.values);
  if (c.timings) out["time_mean_ms"] = ms.time_mean_ms;
  return render(out);
}

std::string cmd_hypergraph(const std::string& path, const std::string& which, const Common& c) {
  if (c.fmt() == Format::csv) throw UsageError("hypergraph has no csv output");
  const auto g = load_hypergraph(path);
  CirculantTensor t = which == "laplacian"  ? laplacian_tensor(g)
                      : which == "signless" ? signless_laplacian_tensor(g)
                                            : adjacency_tensor(g);
  Json edges = Json::array();
  for (const auto& e : g.edges) edges.push_back(e);
  Json out;
  out["n"] = g.n;
  out["m"] = g.m;
  out["directed"] = g.directed;
  out["edges"] = std::move(edges);
  out["degrees"] = g.degrees();
  out["tensor_kind"] = which;
  out["tensor"] = tensor_json(t);
  return render(out);
}

std::string cmd_moments(const std::string& path, std::size_t order, std::size_t period, const Common& c) {
  if (c.fmt() == Format::csv) throw UsageError("moments has no csv output");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  const auto sample = read_samples_csv(in, period);
  const auto est = moment_tensor(sample, order);
  const auto se = est.std_error.entries();
  const double max_se = se.empty() ? 0.0 : *std::max_element(se.begin(), se.end());
  const double tol = 3.0 * std::sqrt(2.0) * max_se;
  Json out;
  out["order"] = order;
  out["period"] = period;
  out["samples"] = est.samples;
  out["is_circulant"] = is_circulant(est.mean, tol);
  out["circulant_tolerance"] = tol;
  out["circulant_deviation"] = circulant_deviation(est.mean);
  out["max_std_error"] = max_se;
  out["tensor"] = Json{{"kind", "dense"}, {"order", order}, {"dim", period}, {"entries", numbers(est.mean.entries())}};
  out["std_error"] = numbers(se);
  return render(out);
}

// ---- reproduce ---------------------------------------------------------------

struct Report {
  Json checks = Json::array();
  bool pass = true;

  void add(const std::string& name, bool ok, Json value, Json expected) {
    pass = pass && ok;
    checks.push_back(Json{{"name", name}, {"pass", ok}, {"value", std::move(value)}, {"expected", std::move(expected)}});
  }
};

CirculantTensor fixture(const std::filesystem::path& dir, const char* name) {
  return require_circulant(load_tensor(dir / name), "reproduce");
}

void reproduce_example1(const std::filesystem::path& dir, Report& r) {
  const auto a = fixture(dir, "example1.json");
  const auto spec = native_eigenvalues(a);
  const auto& l = spec.lambdas;
  r.add("lambda0", std::abs(l[0] - 39.1013) <= 1e-3, l[0].real(), 39.1013);
  const double re = 14.8057;
  const double im = 1.1793;
  const bool pair = std::abs(l[1].real() - re) <= 1e-3 && std::abs(l[2].real() - re) <= 1e-3 &&
                    std::abs(std::abs(l[1].imag()) - im) <= 1e-3 && std::abs(l[1].imag() + l[2].imag()) <= 1e-12;
  r.add("lambda1_lambda2_conjugate_pair", pair, Json{l[1].real(), l[1].imag(), l[2].real(), l[2].imag()},
        Json{re, im});
  for (std::size_t k = 0; k < 3; ++k) {
    const double res = eigen_residual(a, l[k], native_eigenvector(3, k));
    r.add("residual_" + std::to_string(k), res <= kEigenResidualTol, res, kEigenResidualTol);
  }
}

void reproduce_example2(const std::filesystem::path& dir, Report& r) {
  const auto a = fixture(dir, "example2.json");
  const auto s = symmetrize(a);
  const std::vector<double> expected{1.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  double dev = 0.0;
  for (std::size_t i = 0; i < 4; ++i) dev = std::max(dev, std::abs(s.root().at_flat(i) - expected[i]));
  r.add("sym_root", dev <= 1e-12, numbers(s.root().entries()), numbers(expected));
  const auto la = native_eigenvalues(a).lambdas;
  const auto ls = native_eigenvalues(s).lambdas;
  r.add("lambda0_A", std::abs(la[0] - 2.0) <= 1e-12, la[0].real(), 2.0);
  r.add("lambda0_symA", std::abs(ls[0] - 2.0) <= 1e-12, ls[0].real(), 2.0);
  r.add("lambda1_A", std::abs(la[1] - 6.0) <= 1e-12, la[1].real(), 6.0);
  r.add("lambda1_symA", std::abs(ls[1] - 2.0 / 3.0) <= 1e-12, ls[1].real(), 2.0 / 3.0);
  r.add("lambda1_differs", std::abs(la[1] - ls[1]) > 1e-6, std::abs(la[1] - ls[1]), "> 0");
}

void reproduce_example3(const std::filesystem::path& dir, Report& r) {
  const auto v = check_psd(fixture(dir, "example3.json"));
  const bool ok = v.decision == Decision::psd && v.certificate == Certificate::diag_dominance;
  r.add("psd_by_diag_dominance", ok, verdict_json(v), Json{{"decision", "psd"}, {"certificate", "DiagDominance"}});
}

void reproduce_example4(const std::filesystem::path& dir, Report& r) {
  const auto a1 = fixture(dir, "example4_case1.json");
  const std::vector<double> x{1.0, -2.0};
  const double value = apply_full(a1, x);
  r.add("case1_form_at_(1,-2)", std::abs(value + 3.0) <= 1e-12, value, -3.0);
  const auto v1 = check_psd(a1);
  r.add("case1_not_psd", v1.decision == Decision::not_psd && v1.witness && apply_full(a1, *v1.witness) < 0.0,
        verdict_json(v1), Json{{"decision", "not_psd"}});
  const auto v2 = check_psd(fixture(dir, "example4_case2.json"));
  r.add("case2_psd", v2.is_psd(), verdict_json(v2), Json{{"decision", "psd"}});
}

Json reproduce_table1(const std::filesystem::path& dir, std::size_t restarts, const Common& c, Report& r) {
  struct Row {
    const char* name;
    const char* file;
    double reference;
  };
  const Row rows[] = {{"example5", "example5.json", -6.39448}, {"example6", "example6.json", -1.79658}};
  Json table = Json::array();
  for (const auto& row : rows) {
    AdmmParams p;
    p.seed = c.seed;
    const auto ms = multi_start(fixture(dir, row.file), p, restarts, row.reference, c.threads);
    Json entry{{"example", row.name},
               {"reference", row.reference},
               {"best", ms.best.value},
               {"success_rate", *ms.success_rate},
               {"iterations_mean", ms.iterations_mean}};
    double mean_value = 0.0;
    for (double v : ms.values) mean_value += v;
    entry["value_mean"] = mean_value / static_cast<double>(restarts);
    if (c.timings) entry["time_mean_ms"] = ms.time_mean_ms;
    table.push_back(entry);
    r.add(std::string(row.name) + "_best", std::abs(ms.best.value - row.reference) <= 1e-4, ms.best.value,
          row.reference);
    r.add(std::string(row.name) + "_success_rate", *ms.success_rate >= 0.9, *ms.success_rate, ">= 0.9");
  }
  return table;
}

std::string cmd_reproduce(const std::string& target, const std::string& data_dir, std::size_t restarts,
                          const Common& c) {
  const std::filesystem::path dir = data_dir.empty() ? default_data_dir() : std::filesystem::path(data_dir);
  Report r;
  Json out;
  out["target"] = target;
  if (target == "example1") {
    reproduce_example1(dir, r);
  } else if (target == "example2") {
    reproduce_example2(dir, r);
  } else if (target == "example3") {
    reproduce_example3(dir, r);
  } else if (target == "example4") {
    reproduce_example4(dir, r);
  } else if (target == "table1") {
    out["restarts"] = restarts;
    out["seed"] = c.seed;
    const Json table = reproduce_table1(dir, restarts, c, r);
    if (c.fmt() == Format::csv) return render_csv(table);
    out["rows"] = table;
  } else {
    throw UsageError("unknown reproduce target \"" + target + "\"");
  }
  if (c.fmt() == Format::csv) {
    Json rows = Json::array();
    for (const auto& ch : r.checks) {
      rows.push_back(Json{{"name", ch["name"]}, {"pass", ch["pass"]}, {"value", ch["value"].is_primitive() ? ch["value"] : Json(ch["value"].dump())}});
    }
    return render_csv(rows);
  }
  out["checks"] = r.checks;
  out["pass"] = r.pass;
  return render(out);
}

}  // namespace

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("CTENSOR_DATA_DIR"); env && *env) return env;
  return CTENSOR_DATA_DIR;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circulant tensor toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--format", c.format, "Output format for tabular results")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", c.threads, "Worker threads for multi-start")->check(CLI::PositiveNumber);
  app.add_option("--output,-o", c.output, "Write the document to this file instead of stdout");
  app.add_option("--seed", c.seed, "Seed for all random starts");
  app.add_flag("--timings", c.timings, "Include wall-clock timings (output is then not reproducible)");

  std::string path;
  std::function<std::string()> action;

  auto* eig = app.add_subcommand("eig", "Native eigenvalues, Gershgorin disc, extreme H-eigenvalue");
  eig->add_option("tensor", path, "Tensor JSON file")->required();
  eig->callback([&] { action = [&] { return cmd_eig(path, c); }; });

  auto* classify = app.add_subcommand("classify", "Sign class, B0/B, doubly circulant and Toeplitz tests");
  classify->add_option("tensor", path, "Tensor JSON file")->required();
  classify->callback([&] { action = [&] { return cmd_classify(path, c); }; });

  bool numeric = false;
  std::size_t psd_restarts = 32;
  auto* psd = app.add_subcommand("psd", "Positive semi-definiteness decision");
  psd->add_option("tensor", path, "Tensor JSON file")->required();
  psd->add_flag("--numeric", numeric, "Fall back to multi-start ADMM");
  psd->add_option("--restarts", psd_restarts, "Restarts for the numeric fallback")->check(CLI::PositiveNumber);
  psd->add_option("--seed", c.seed, "Seed for the numeric fallback");
  psd->callback([&] { action = [&] { return cmd_psd(path, numeric, psd_restarts, c); }; });

  AdmmParams params;
  std::size_t restarts = 10;
  std::optional<double> reference;
  auto* minimize = app.add_subcommand("minimize", "Multi-start ADMM for min A x^m on the unit sphere");
  minimize->add_option("tensor", path, "Tensor JSON file")->required();
  minimize->add_option("--restarts", restarts)->check(CLI::PositiveNumber);
  minimize->add_option("--seed", c.seed);
  minimize->add_option("--beta", params.beta)->check(CLI::PositiveNumber);
  minimize->add_option("--eps", params.epsilon)->check(CLI::PositiveNumber);
  minimize->add_option("--max-iters", params.max_iters)->check(CLI::PositiveNumber);
  minimize->add_flag("--scale-beta", params.scale_beta, "Raise beta to 2 ||sym A||_F when smaller");
  minimize->add_option("--reference", reference, "Known optimum for the success rate");
  minimize->callback([&] {
    action = [&] {
      params.seed = c.seed;
      return cmd_minimize(path, params, restarts, reference, c);
    };
  });

  std::string which = "adjacency";
  auto* hyper = app.add_subcommand("hypergraph", "Adjacency or Laplacian tensor of a circulant hypergraph");
  hyper->add_option("graph", path, "Hypergraph JSON file")->required();
  hyper->add_option("--tensor", which)->check(CLI::IsMember({"adjacency", "laplacian", "signless"}));
  hyper->callback([&] { action = [&] { return cmd_hypergraph(path, which, c); }; });

  std::size_t order = 0;
  std::size_t period = 0;
  auto* moments = app.add_subcommand("moments", "Empirical moment tensor of a periodic process");
  moments->add_option("samples", path, "CSV file, one trajectory per row")->required();
  moments->add_option("--order", order)->required()->check(CLI::Range(2, 64));
  moments->add_option("--period", period)->required()->check(CLI::Range(2, 1 << 20));
  moments->callback([&] { action = [&] { return cmd_moments(path, order, period, c); }; });

  std::string target;
  std::string data_dir;
  std::size_t table_restarts = 100;
  auto* reproduce = app.add_subcommand("reproduce", "Regression checks on the bundled worked examples");
  reproduce->add_option("target", target, "example1|example2|example3|example4|table1")
      ->required()
      ->check(CLI::IsMember({"example1", "example2", "example3", "example4", "table1"}));
  reproduce->add_option("--restarts", table_restarts)->check(CLI::PositiveNumber);
  reproduce->add_option("--seed", c.seed);
  reproduce->add_option("--data-dir", data_dir, "Fixture directory");
  reproduce->callback([&] { action = [&] { return cmd_reproduce(target, data_dir, table_restarts, c); }; });

  std::vector<const char*> argv{"ctensor"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "ctensor: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string document;
  try {
    document = action();
  } catch (const std::exception& e) {
    err << "ctensor: " << e.what() << "\n";
    return kExitUsage;
  }
  if (c.output.empty()) {
    out << document;
    return kExitOk;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file || !(file << document)) {
    err << "ctensor: cannot write " << c.output << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace ctensor::cli
