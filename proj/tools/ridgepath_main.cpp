// Command-line driver: regularization paths, solver benchmarks, adaptive
// sketch-dimension estimation and dataset generation, with CSV output.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ridgepath/adaptive.hpp"
#include "ridgepath/baselines.hpp"
#include "ridgepath/data_io.hpp"
#include "ridgepath/matrix.hpp"
#include "ridgepath/path_solver.hpp"
#include "ridgepath/sketch.hpp"
#include "ridgepath/spectrum.hpp"

namespace {

using namespace ridgepath;

constexpr int kExitBadFlags = 2;
constexpr int kExitDataError = 3;
constexpr int kExitSolverError = 4;

class FlagError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::map<std::string, std::string> parse_kv_spec(const std::string& spec) {
  std::map<std::string, std::string> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw FlagError("expected key=value in spec, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double kv_double(const std::map<std::string, std::string>& kv,
                 const std::string& key, std::optional<double> fallback = {}) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    if (fallback) return *fallback;
    throw FlagError("missing key '" + key + "' in spec");
  }
  return std::stod(it->second);
}

long long kv_int(const std::map<std::string, std::string>& kv,
                 const std::string& key,
                 std::optional<long long> fallback = {}) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    if (fallback) return *fallback;
    throw FlagError("missing key '" + key + "' in spec");
  }
  return std::stoll(it->second);
}

struct DataFlags {
  std::string data_file;
  std::string synthetic_spec;
  std::string kernel_spec;
  long long features = 0;
  bool rescale = false;
  long long split_seed = -1;

  void add_to(CLI::App& app) {
    app.add_option("--data", data_file, "LIBSVM text file");
    app.add_option("--gen-synthetic", synthetic_spec,
                   "synthetic spec: n=..,d=..,alpha=..,sigma=..,seed=..");
    app.add_option("--kernel", kernel_spec,
                   "kernel spec: file=points.libsvm,h=..[,split=SEED]");
    app.add_option("--features", features,
                   "declared feature count for LIBSVM input");
    app.add_flag("--rescale", rescale, "rescale features into [-1,1]");
    app.add_option("--split", split_seed,
                   "split --data rows in half (train/test) with this seed");
  }

  Dataset load() const {
    const int sources = (!data_file.empty()) + (!synthetic_spec.empty()) +
                        (!kernel_spec.empty());
    if (sources != 1)
      throw FlagError(
          "exactly one of --data, --gen-synthetic, --kernel is required");
    Dataset ds;
    if (!synthetic_spec.empty()) {
      const auto kv = parse_kv_spec(synthetic_spec);
      ds = gen_synthetic(kv_int(kv, "n"), kv_int(kv, "d"),
                         kv_double(kv, "alpha", 0.99),
                         kv_double(kv, "sigma", 0.0),
                         static_cast<std::uint64_t>(kv_int(kv, "seed", 0)));
    } else if (!kernel_spec.empty()) {
      const auto kv = parse_kv_spec(kernel_spec);
      const auto it = kv.find("file");
      if (it == kv.end()) throw FlagError("kernel spec needs file=...");
      Dataset points = load_libsvm_file(it->second);
      if (kv.count("split"))
        points = split_half(points.a_train, points.b_train,
                            static_cast<std::uint64_t>(kv_int(kv, "split")));
      ds = kernelize(points, kv_double(kv, "h", 1000.0));
    } else {
      std::optional<Index> override;
      if (features > 0) override = static_cast<Index>(features);
      ds = load_libsvm_file(data_file, override);
      if (split_seed >= 0)
        ds = split_half(ds.a_train, ds.b_train,
                        static_cast<std::uint64_t>(split_seed));
    }
    if (rescale) {
      ds.a_train = rescale_features(ds.a_train);
      if (ds.a_test) ds.a_test = rescale_features(*ds.a_test);
    }
    return ds;
  }
};

struct GridFlags {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int num_lambdas = 0;
  std::string grid = "log";
  double eps = 1e-6;
  std::string intervals = "auto";

  void add_to(CLI::App& app) {
    app.add_option("--lambda-min", lambda_min, "smallest lambda")->required();
    app.add_option("--lambda-max", lambda_max, "largest lambda")->required();
    app.add_option("--num-lambdas", num_lambdas, "grid size")->required();
    app.add_option("--grid", grid, "grid spacing: log or linear")
        ->check(CLI::IsMember({"log", "linear"}));
    app.add_option("--eps", eps, "target relative suboptimality");
    app.add_option("--intervals", intervals, "interval count or 'auto'");
  }

  PathConfig config() const {
    PathConfig cfg;
    cfg.lambda_min = lambda_min;
    cfg.lambda_max = lambda_max;
    cfg.lambdas = grid == "log"
                      ? log_grid(lambda_min, lambda_max, num_lambdas)
                      : linear_grid(lambda_min, lambda_max, num_lambdas);
    cfg.epsilon = eps;
    if (intervals != "auto") {
      try {
        cfg.num_intervals = std::stoi(intervals);
      } catch (const std::exception&) {
        throw FlagError("--intervals expects an integer or 'auto'");
      }
    }
    return cfg;
  }
};

struct SketchFlags {
  std::string kind = "identity";
  long long dim = 0;
  int sjlt_s = 1;
  long long seed = 0;
  double rho1 = 0.0;
  double rho2 = 0.0;
  bool rho_auto = false;
  double sigma_d = -1.0;

  void add_to(CLI::App& app) {
    app.add_option("--sketch", kind, "sketch family")
        ->check(CLI::IsMember(
            {"gaussian", "countsketch", "sjlt", "srht", "identity"}));
    app.add_option("--sketch-dim", dim, "sketch rows m");
    app.add_option("--sjlt-s", sjlt_s, "SJLT column sparsity");
    app.add_option("--seed", seed, "sketch / data pipeline seed");
    app.add_option("--rho1", rho1, "upper eigenvalue envelope");
    app.add_option("--rho2", rho2, "lower eigenvalue envelope");
    app.add_flag("--rho-auto", rho_auto,
                 "derive the envelope from the sketched spectrum");
    app.add_option("--sigma-d", sigma_d,
                   "smallest singular value of A, tightens the tuning");
  }

  SketchSpec spec(Index n) const {
    SketchSpec s;
    s.kind = sketch_kind_from_string(kind);
    s.n = n;
    s.seed = static_cast<std::uint64_t>(seed);
    s.s = sjlt_s;
    if (s.kind == SketchKind::Identity) {
      s.m = n;
    } else {
      if (dim <= 0) throw FlagError("--sketch-dim is required for this sketch");
      s.m = static_cast<Index>(dim);
    }
    s.validate();
    return s;
  }

  std::optional<double> sigma_d_opt() const {
    if (sigma_d < 0.0) return std::nullopt;
    return sigma_d;
  }
};

// Plug-in envelope from the sketched spectrum. Uses the singular values of
// SA as stand-ins for those of A, evaluates the effective dimension at the
// geometric center of the lambda range, and feeds the family's bound.
// Heuristic by construction; the derived values are printed, and manual
// --rho1/--rho2 always win.
RhoBounds derive_rho(const SketchSpec& spec, const Matrix& a,
                     const PathConfig& cfg, bool verbose) {
  if (spec.kind == SketchKind::Identity) return RhoBounds::identity();
  const SketchedMatrix sa = sketch_apply(spec, a);
  const SvdFactors svd = thin_svd(sa.product);
  const double lambda0 = std::sqrt(cfg.lambda_min * cfg.lambda_max);
  const double de = effective_dimension(svd.sigma, lambda0);
  const double top = svd.sigma[0] * svd.sigma[0];
  const double dnorm_sq = top / (top + lambda0);
  const double m = static_cast<double>(spec.m);

  RhoBounds bounds = RhoBounds::identity();
  switch (spec.kind) {
    case SketchKind::Gaussian: {
      const double rho = std::min(0.95, de / m);
      const double eta =
          0.5 * (1.0 - std::sqrt(rho)) * (1.0 - std::sqrt(rho)) / 4.0;
      auto res = rho_gaussian(rho, eta, dnorm_sq, spec.m);
      bounds = res.bounds;
      if (verbose && res.success_probability)
        std::fprintf(stderr, "rho-auto: gaussian success probability %.3f\n",
                     *res.success_probability);
      break;
    }
    case SketchKind::Srht: {
      const double c =
          16.0 / 3.0 *
          std::pow(1.0 + std::sqrt(8.0 *
                                   std::log(de * static_cast<double>(spec.n)) /
                                   de),
                   2.0);
      double rho = c * de * std::max(1.0, std::log(de)) / m;
      rho = std::min(rho, 0.95 / std::max(dnorm_sq, 1e-12));
      rho = std::clamp(rho, 1e-6, 0.95);
      bounds = rho_srht(rho, dnorm_sq).bounds;
      break;
    }
    case SketchKind::CountSketch:
    case SketchKind::Sjlt: {
      // CountSketch is the single-block SJLT; same envelope.
      const double alpha = 4.0, delta = 0.1;
      const double log_term = std::log(std::max(de / delta, 1.5)) / std::log(alpha);
      double eps = std::sqrt(alpha * de * log_term / m);
      eps = std::clamp(eps, 1e-6, 0.49);
      auto res = rho_sjlt(eps, std::make_tuple(alpha, delta, de));
      bounds = res.bounds;
      if (verbose && res.recommended_m)
        std::fprintf(stderr,
                     "rho-auto: sjlt bound suggests m >= %lld, s >= %d "
                     "(unit constants)\n",
                     static_cast<long long>(*res.recommended_m),
                     *res.recommended_s);
      break;
    }
    default:
      break;
  }
  if (verbose)
    std::fprintf(stderr, "rho-auto: d_e ~ %.2f, envelope (%.4f, %.4f)\n", de,
                 bounds.rho1, bounds.rho2);
  return bounds;
}

RhoBounds resolve_rho(const SketchFlags& sk, const SketchSpec& spec,
                      const Matrix& a, const PathConfig& cfg) {
  if (sk.rho1 > 0.0 || sk.rho2 > 0.0) {
    if (sk.rho1 <= 0.0 || sk.rho2 <= 0.0)
      throw FlagError("--rho1 and --rho2 must be given together");
    if (sk.rho_auto) throw FlagError("--rho-auto conflicts with --rho1/--rho2");
    return RhoBounds::manual(sk.rho1, sk.rho2);
  }
  return derive_rho(spec, a, cfg, true);
}

DenseMatrix load_text_matrix(const std::string& path, Index expected_rows) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::vector<double> row;
    double v;
    while (ss >> v) row.push_back(v);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("empty matrix file: " + path);
  const std::size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols)
      throw std::runtime_error("ragged rows in matrix file: " + path);
  DenseMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols));
  for (Index i = 0; i < out.rows(); ++i)
    for (Index j = 0; j < out.cols(); ++j)
      out(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  if (expected_rows > 0 && out.rows() != expected_rows)
    throw std::runtime_error("matrix file row count does not match the data");
  return out;
}

void write_output(const std::string& path,
                  const std::vector<RegPathResult>& results) {
  if (path.empty()) {
    write_csv(std::cout, results);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_csv(out, results);
}

void write_kernel_block(const std::string& path, const DenseMatrix& block) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  const char magic[8] = {'R', 'P', 'K', 'E', 'R', 'N', '0', '1'};
  out.write(magic, sizeof(magic));
  const std::int64_t rows = block.rows(), cols = block.cols();
  out.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
  out.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) {
      const double v = block(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof(v));
    }
}

RegPathResult run_solver(const std::string& solver, const Dataset& ds,
                         const PathConfig& cfg, const SketchFlags& sk,
                         const std::string& dual_mode,
                         const std::string& matrix_rhs_file) {
  const Matrix& a = ds.a_train;
  const Matrix* a_test = ds.test_matrix();
  const Vector* b_test = ds.test_labels();

  if (!matrix_rhs_file.empty()) {
    if (solver != "ihs-bin")
      throw FlagError("--matrix-rhs is only supported with --solver ihs-bin");
    const DenseMatrix rhs = load_text_matrix(matrix_rhs_file, a.rows());
    const SketchSpec spec = sk.spec(a.rows());
    const RhoBounds rho = resolve_rho(sk, spec, a, cfg);
    return ihs_bin_path_matrix(a, rhs, cfg, spec, rho, sk.sigma_d_opt());
  }

  if (solver == "svd") return svd_path(a, ds.b_train, cfg, a_test, b_test);
  if (solver == "direct")
    return direct_path(a, ds.b_train, cfg, a_test, b_test);
  if (solver == "cg") return warm_cg_path(a, ds.b_train, cfg, a_test, b_test);
  if (solver == "gd-bin")
    return gd_bin_path(a, ds.b_train, cfg, a_test, b_test);
  if (solver == "ihs") {
    const SketchSpec spec = sk.spec(a.rows());
    const RhoBounds rho = resolve_rho(sk, spec, a, cfg);
    return warm_ihs_path(a, ds.b_train, cfg, spec, rho, a_test, b_test);
  }
  if (solver == "ihs-bin") {
    const bool use_dual =
        dual_mode == "dual" || (dual_mode == "auto" && a.rows() < a.cols());
    if (use_dual) {
      const SketchSpec spec = sk.spec(a.cols());
      const RhoBounds rho = resolve_rho(sk, spec, transpose(a), cfg);
      return dual_path(a, ds.b_train, cfg, spec, rho, sk.sigma_d_opt(), a_test,
                       b_test);
    }
    const SketchSpec spec = sk.spec(a.rows());
    const RhoBounds rho = resolve_rho(sk, spec, a, cfg);
    return ihs_bin_path(a, ds.b_train, cfg, spec, rho, sk.sigma_d_opt(), a_test,
                        b_test);
  }
  throw FlagError("unknown solver: " + solver);
}

int main_checked(int argc, char** argv) {
  CLI::App app{"ridge regularization paths via sketched binomial bases"};
  app.require_subcommand(1);

  // ---- path -----------------------------------------------------------
  auto* path_cmd =
      app.add_subcommand("path", "solve the path with one solver, emit CSV");
  DataFlags path_data;
  GridFlags path_grid;
  SketchFlags path_sketch;
  std::string path_solver_name = "ihs-bin";
  std::string path_out, path_dual = "auto", path_matrix_rhs;
  path_data.add_to(*path_cmd);
  path_grid.add_to(*path_cmd);
  path_sketch.add_to(*path_cmd);
  path_cmd->add_option("--solver", path_solver_name, "solver")
      ->check(CLI::IsMember({"ihs-bin", "gd-bin", "svd", "direct", "cg", "ihs"}));
  path_cmd->add_option("--dual", path_dual, "route: auto, primal or dual")
      ->check(CLI::IsMember({"auto", "primal", "dual"}));
  path_cmd->add_option("--matrix-rhs", path_matrix_rhs,
                       "text file with a matrix right-hand side");
  path_cmd->add_option("--out", path_out, "output CSV (stdout if absent)");

  // ---- bench ----------------------------------------------------------
  auto* bench_cmd =
      app.add_subcommand("bench", "run a solver set, one CSV per solver");
  DataFlags bench_data;
  GridFlags bench_grid;
  SketchFlags bench_sketch;
  std::string bench_solvers = "ihs-bin,svd,direct,cg,ihs";
  std::string bench_out_dir = ".";
  bench_data.add_to(*bench_cmd);
  bench_grid.add_to(*bench_cmd);
  bench_sketch.add_to(*bench_cmd);
  bench_cmd->add_option("--solvers", bench_solvers, "comma-separated solver list");
  bench_cmd->add_option("--out-dir", bench_out_dir, "directory for CSV files");

  // ---- sketch-dim -----------------------------------------------------
  auto* dim_cmd = app.add_subcommand(
      "sketch-dim", "estimate a sufficient sketching dimension");
  DataFlags dim_data;
  SketchFlags dim_sketch;
  double dim_lmin = 0.0, dim_lmax = 0.0, dim_eps = 1e-8;
  double dim_g1 = 0.5, dim_g2 = 1e-4, dim_g3 = 0.9;
  long long dim_m_init = 0, dim_m_cap = 0;
  int dim_iter_cap = 200;
  dim_data.add_to(*dim_cmd);
  dim_sketch.add_to(*dim_cmd);
  dim_cmd->add_option("--lambda-min", dim_lmin)->required();
  dim_cmd->add_option("--lambda-max", dim_lmax,
                      "used only to report d_e at the geometric center");
  dim_cmd->add_option("--adaptive-eps", dim_eps, "stopping threshold");
  dim_cmd->add_option("--gamma1", dim_g1);
  dim_cmd->add_option("--gamma2", dim_g2);
  dim_cmd->add_option("--gamma3", dim_g3);
  dim_cmd->add_option("--m-initial", dim_m_init);
  dim_cmd->add_option("--m-cap", dim_m_cap);
  dim_cmd->add_option("--iteration-cap", dim_iter_cap);

  // ---- gen-data -------------------------------------------------------
  auto* gen_cmd =
      app.add_subcommand("gen-data", "write a synthetic dataset as LIBSVM text");
  std::string gen_spec, gen_out, gen_test_out;
  gen_cmd->add_option("--gen-synthetic", gen_spec, "synthetic spec")->required();
  gen_cmd->add_option("--out", gen_out, "train output file")->required();
  gen_cmd->add_option("--test-out", gen_test_out, "test output file");

  // ---- kernel ---------------------------------------------------------
  auto* kernel_cmd = app.add_subcommand(
      "kernel", "build Gaussian-kernel blocks, write dense binary files");
  std::string kernel_file, kernel_out_prefix;
  double kernel_h = 1000.0;
  long long kernel_split = -1;
  kernel_cmd->add_option("--data", kernel_file, "LIBSVM points file")->required();
  kernel_cmd->add_option("--bandwidth", kernel_h, "kernel bandwidth h");
  kernel_cmd->add_option("--out", kernel_out_prefix, "output prefix")->required();
  kernel_cmd->add_option("--split", kernel_split, "split seed (train/test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadFlags;
  }

  if (*path_cmd) {
    const Dataset ds = path_data.load();
    const PathConfig cfg = path_grid.config();
    const RegPathResult result = run_solver(path_solver_name, ds, cfg,
                                            path_sketch, path_dual,
                                            path_matrix_rhs);
    write_output(path_out, {result});
    std::fprintf(stderr, "%s: setup %.4fs, total %.4fs, %zu grid points\n",
                 result.solver.c_str(), result.setup_seconds,
                 result.total_seconds, result.points.size());
    return 0;
  }

  if (*bench_cmd) {
    const Dataset ds = bench_data.load();
    const PathConfig cfg = bench_grid.config();
    std::vector<std::string> solvers;
    std::stringstream ss(bench_solvers);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) solvers.push_back(item);
    }
    if (solvers.empty()) throw FlagError("--solvers list is empty");
    std::printf("%-10s %12s %12s %12s\n", "solver", "setup_s", "eval_s",
                "total_s");
    for (const auto& solver : solvers) {
      const RegPathResult result =
          run_solver(solver, ds, cfg, bench_sketch, "primal", "");
      double eval = 0.0;
      for (const auto& pt : result.points) eval += pt.seconds;
      std::printf("%-10s %12.5f %12.5f %12.5f\n", result.solver.c_str(),
                  result.setup_seconds, eval, result.total_seconds);
      std::ofstream out(bench_out_dir + "/" + result.solver + ".csv");
      if (!out)
        throw std::runtime_error("cannot write CSV in " + bench_out_dir);
      write_csv(out, {result});
    }
    return 0;
  }

  if (*dim_cmd) {
    const Dataset ds = dim_data.load();
    AdaptiveConfig cfg;
    cfg.gamma1 = dim_g1;
    cfg.gamma2 = dim_g2;
    cfg.gamma3 = dim_g3;
    cfg.epsilon = dim_eps;
    cfg.m_initial = static_cast<Index>(dim_m_init);
    cfg.m_cap = static_cast<Index>(dim_m_cap);
    cfg.iteration_cap = dim_iter_cap;
    SketchSpec tmpl = dim_sketch.spec(ds.a_train.rows());
    if (tmpl.kind != SketchKind::Identity && dim_sketch.dim <= 0)
      tmpl.m = cfg.initial_m(ds.a_train.cols());
    const AdaptiveResult res =
        adaptive_sketch_dim(ds.a_train, ds.b_train, dim_lmin, cfg, tmpl);
    std::printf("estimated_m %lld\n", static_cast<long long>(res.m));
    std::printf("iterations %d\ndoublings %d\nconverged %d\n", res.iterations,
                res.doublings, res.converged ? 1 : 0);
    if (ds.a_train.cols() <= 2048 && dim_lmax > dim_lmin) {
      const SvdFactors svd = thin_svd(ds.a_train.to_dense());
      const double lambda0 = std::sqrt(dim_lmin * dim_lmax);
      std::printf("effective_dimension %.6f (at lambda0 %.6g)\n",
                  effective_dimension(svd.sigma, lambda0), lambda0);
    }
    return 0;
  }

  if (*gen_cmd) {
    const auto kv = parse_kv_spec(gen_spec);
    const Dataset ds = gen_synthetic(
        kv_int(kv, "n"), kv_int(kv, "d"), kv_double(kv, "alpha", 0.99),
        kv_double(kv, "sigma", 0.0),
        static_cast<std::uint64_t>(kv_int(kv, "seed", 0)));
    std::ofstream out(gen_out);
    if (!out) throw std::runtime_error("cannot open output file: " + gen_out);
    write_libsvm(out, ds.a_train, ds.b_train);
    if (!gen_test_out.empty()) {
      std::ofstream test_out(gen_test_out);
      if (!test_out)
        throw std::runtime_error("cannot open output file: " + gen_test_out);
      write_libsvm(test_out, *ds.a_test, *ds.b_test);
    }
    return 0;
  }

  if (*kernel_cmd) {
    Dataset points = load_libsvm_file(kernel_file);
    if (kernel_split >= 0)
      points = split_half(points.a_train, points.b_train,
                          static_cast<std::uint64_t>(kernel_split));
    const Dataset ds = kernelize(points, kernel_h);
    write_kernel_block(kernel_out_prefix + ".train.bin", ds.a_train.to_dense());
    {
      std::ofstream lab(kernel_out_prefix + ".train_labels.txt");
      for (Index i = 0; i < ds.b_train.size(); ++i)
        lab << format_double(ds.b_train[i]) << '\n';
    }
    if (ds.a_test) {
      write_kernel_block(kernel_out_prefix + ".test.bin", ds.a_test->to_dense());
      std::ofstream lab(kernel_out_prefix + ".test_labels.txt");
      for (Index i = 0; i < ds.b_test->size(); ++i)
        lab << format_double((*ds.b_test)[i]) << '\n';
    }
    return 0;
  }

  return kExitBadFlags;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return main_checked(argc, argv);
  } catch (const FlagError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadFlags;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadFlags;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitDataError;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return kExitSolverError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitDataError;
  }
}
