#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "cuntzwave/cuntz.hpp"
#include "cuntzwave/debranges.hpp"
#include "cuntzwave/error.hpp"
#include "cuntzwave/filters.hpp"
#include "cuntzwave/json_io.hpp"
#include "cuntzwave/kernels.hpp"

namespace cuntzwave::cli {

namespace {

namespace fs = std::filesystem;
using io::Json;

struct Options {
  std::string input;
  std::string bank;
  std::string P;
  std::string J;
  std::string theta;
  std::string spec;
  std::string m;
  std::string grid;
  std::string out;
  double tol = 0.0;
  int N = 0;
  int degree = 0;
  int points = 64;
  int trials = 50;
  int max_points = 12;
  std::uint64_t seed = 0;
  double radius = 0.95;
  bool nonsquare = false;
  bool timing = false;

  CLI::Option* tol_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* max_points_opt = nullptr;
  CLI::Option* radius_opt = nullptr;
  CLI::Option* J_opt = nullptr;

  bool report_to_err = false;
  std::string csv;

  double tol_or(double fallback) const {
    return tol_opt != nullptr && tol_opt->count() > 0 ? tol : fallback;
  }
};

/// Reads every input file once and keeps the bytes for the digest.
class Inputs {
 public:
  Json load(const fs::path& path) {
    std::string text = io::read_text_file(path);
    bytes_ += text;
    bytes_.push_back('\0');
    return io::parse_json(text, path.string());
  }

  Json resolve(const Json& j, const fs::path& base) {
    if (!j.is_string()) return j;
    fs::path p = j.get<std::string>();
    if (p.is_relative()) p = base / p;
    return load(p);
  }

  /// Inlines the file references of a kernel spec.
  Json resolve_spec(const Json& spec, const fs::path& base) {
    Json s = resolve(spec, base);
    if (!s.is_object()) fail(ErrorCode::MalformedJSON, "kernel spec: expected an object");
    for (const char* key : {"function", "J", "J1", "J2"}) {
      if (s.contains(key)) s[key] = resolve(s[key], base);
    }
    return s;
  }

  const std::string& bytes() const { return bytes_; }

 private:
  std::string bytes_;
};

fs::path base_of(const std::string& path) {
  fs::path parent = fs::path(path).parent_path();
  return parent.empty() ? fs::path(".") : parent;
}

bool is_verdict_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInCN:
    case ErrorCode::NoSimilarity:
    case ErrorCode::ResidualTooLarge:
    case ErrorCode::NotPeriodicSymmetric:
    case ErrorCode::ExponentNotMultipleOfN:
    case ErrorCode::DeterminantVanishes:
    case ErrorCode::PowerNotIdentity:
    case ErrorCode::PNotJUnitary:
    case ErrorCode::TNotInvertible:
    case ErrorCode::HSingular:
    case ErrorCode::NoSolution:
      return true;
    default:
      return false;
  }
}

void add_grid_options(CLI::App& app, Options& o) {
  o.trials_opt = app.add_option("--trials", o.trials, "number of random grids");
  o.seed_opt = app.add_option("--seed", o.seed, "base seed; trial t uses seed + t");
  o.max_points_opt = app.add_option("--max-points", o.max_points, "points per grid");
  o.radius_opt = app.add_option("--radius", o.radius, "sampling radius");
  o.tol_opt = app.add_option("--tol", o.tol, "eigenvalue tolerance");
  app.add_option("--grid", o.grid, "grid config file");
}

GridConfig grid_config(const Options& o, Inputs& in, const Json* embedded) {
  GridConfig cfg;
  if (embedded != nullptr) cfg = io::grid_from_json(*embedded, cfg);
  if (!o.grid.empty()) cfg = io::grid_from_json(in.load(o.grid), cfg);
  if (o.trials_opt->count() > 0) cfg.trials = o.trials;
  if (o.seed_opt->count() > 0) cfg.seed = o.seed;
  if (o.max_points_opt->count() > 0) cfg.max_points = o.max_points;
  if (o.radius_opt->count() > 0) cfg.radius = o.radius;
  if (o.tol_opt->count() > 0) cfg.tol = o.tol;
  return io::grid_from_json(io::to_json(cfg), cfg);
}

void configure(CLI::App& app, const std::string& name, Options& o) {
  app.add_flag("--timing", o.timing, "include wall time in the report");
  if (name == "construct") {
    app.add_option("--bank", o.bank, "filter bank file")->required();
  } else if (name == "check-cn") {
    app.add_option("W", o.input, "Laurent matrix file")->required();
    o.tol_opt = app.add_option("--tol", o.tol, "comparison tolerance");
    app.add_flag("--nonsquare", o.nonsquare, "accept non-square members");
  } else if (name == "decompose") {
    app.add_option("W", o.input, "Laurent matrix file")->required();
    app.add_option("--P", o.P, "P matrix file")->required();
    o.J_opt = app.add_option("--J", o.J, "signature matrix file");
    o.tol_opt = app.add_option("--tol", o.tol, "comparison tolerance");
  } else if (name == "factor" || name == "periodic-map") {
    app.add_option("W", o.input, "Laurent matrix file")->required();
    o.tol_opt = app.add_option("--tol", o.tol, "comparison tolerance");
  } else if (name == "symmetry-T") {
    app.add_option("R", o.input, "realization file")->required();
    app.add_option("--N", o.N, "scale N")->required();
    o.tol_opt = app.add_option("--tol", o.tol, "comparison tolerance");
  } else if (name == "stein") {
    app.add_option("R", o.input, "realization file")->required();
    o.J_opt = app.add_option("--J", o.J, "signature matrix file")->required();
    o.tol_opt = app.add_option("--tol", o.tol, "comparison tolerance");
  } else if (name == "junitary") {
    app.add_option("W", o.input, "Laurent matrix or realization file")->required();
    o.J_opt = app.add_option("--J", o.J, "signature matrix file")->required();
    app.add_option("--points", o.points, "points on the circle");
    o.tol_opt = app.add_option("--tol", o.tol, "comparison tolerance");
  } else if (name == "negsq") {
    auto* theta = app.add_option("--theta", o.theta, "function file");
    auto* spec = app.add_option("--spec", o.spec, "kernel spec file");
    theta->excludes(spec);
    o.J_opt = app.add_option("--J", o.J, "signature matrix file")->needs(theta);
    add_grid_options(app, o);
  } else if (name == "positivity") {
    app.add_option("config", o.input, "positivity config file")->required();
    add_grid_options(app, o);
  } else if (name == "cuntz-verify") {
    app.add_option("--N", o.N, "scale N")->required();
    app.add_option("--degree", o.degree, "polynomial degree")->required();
    o.J_opt = app.add_option("--J", o.J, "signature matrix file");
  } else if (name == "gleason") {
    app.add_option("f", o.input, "Laurent function file")->required();
    app.add_option("--m", o.m, "multiplier list file")->required();
    app.add_option("--degree", o.degree, "polynomial degree")->required();
  } else if (name == "eigensweep") {
    app.add_option("spec", o.input, "kernel spec file")->required();
    app.add_option("--out", o.out, "CSV output file");
    add_grid_options(app, o);
  }
}

Json evidence_json(const NegativeSquares& ns) {
  Json ev = Json::array();
  for (const auto& t : ns.evidence) {
    ev.push_back(Json{{"trial", t.trial},
                      {"points", t.points},
                      {"signature", io::to_json(t.signature)},
                      {"min_eigenvalue", t.min_eigenvalue},
                      {"max_eigenvalue", t.max_eigenvalue}});
  }
  return ev;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int run(const std::string& name, Options& o, Inputs& in, Json& body, Json& params) {
  if (name == "construct") {
    const FilterBank bank = io::bank_from_json(in.load(o.bank));
    const LaurentMatrix W = build_filter(bank);
    const CNCheck chk = check_cn(W);
    body["in_CN"] = chk.in_cn;
    body["deviation"] = chk.deviation;
    body["W"] = io::to_json(W);
    return chk.in_cn ? 0 : 2;
  }

  if (name == "check-cn") {
    const double tol = o.tol_or(1e-12);
    params["tol"] = tol;
    params["nonsquare"] = o.nonsquare;
    const LaurentMatrix W = io::laurent_from_json(in.load(o.input));
    const CNCheck chk = check_cn(W, tol, o.nonsquare);
    body["in_CN"] = chk.in_cn;
    body["nonsquare"] = chk.nonsquare;
    body["deviation"] = chk.deviation;
    if (chk.bank) body["bank"] = io::to_json(*chk.bank);
    return chk.in_cn ? 0 : 2;
  }

  if (name == "decompose") {
    const double tol = o.tol_or(1e-12);
    params["tol"] = tol;
    const LaurentMatrix W = io::laurent_from_json(in.load(o.input));
    const PMatrix P = io::pmatrix_from_json(in.load(o.P));
    const std::vector<LaurentMatrix> parts = decompose_P(W, P);
    const DecompositionCheck chk = check_decomposition(W, P, parts);
    const double scaled = tol * std::max(1.0, W.max_abs());
    const bool sum_ok = chk.sum_deviation <= scaled;
    const bool sym_ok = chk.symmetry_deviation <= scaled;
    body["N"] = P.N;
    body["sum_holds"] = sum_ok;
    body["symmetry_holds"] = sym_ok;
    body["sum_deviation"] = chk.sum_deviation;
    body["symmetry_deviation"] = chk.symmetry_deviation;
    bool ok = sum_ok && sym_ok;
    if (!o.J.empty()) {
      const SignatureMatrix J = io::signature_from_json(in.load(o.J));
      const OrthogonalityReport rep = krein_orthogonality_check(W, P, J, tol);
      body["krein"] = Json{{"orthogonal", rep.orthogonal}, {"max_inner", rep.max_inner}};
      ok = ok && rep.orthogonal;
    }
    Json jp = Json::array();
    for (const auto& Wk : parts) jp.push_back(io::to_json(Wk));
    body["parts"] = std::move(jp);
    return ok ? 0 : 2;
  }

  if (name == "factor") {
    const double tol = o.tol_or(1e-12);
    params["tol"] = tol;
    const LaurentMatrix W = io::laurent_from_json(in.load(o.input));
    const FactorResult res = factor_R(W, tol);
    body["reconstruction_error"] = res.reconstruction_error;
    body["R"] = io::to_json(res.R);
    return 0;
  }

  if (name == "periodic-map") {
    const double tol = o.tol_or(1e-12);
    params["tol"] = tol;
    const LaurentMatrix W = io::laurent_from_json(in.load(o.input));
    body["periodic_deviation"] = periodic_deviation(W);
    const LaurentMatrix V = periodic_map(W, tol);
    const CNCheck chk = check_cn(V, tol);
    body["in_CN"] = chk.in_cn;
    body["cn_deviation"] = chk.deviation;
    body["D_N_W"] = io::to_json(V);
    return chk.in_cn ? 0 : 2;
  }

  if (name == "symmetry-T") {
    const double tol = o.tol_or(1e-8);
    params["N"] = o.N;
    params["tol"] = tol;
    const Realization R = io::realization_from_json(in.load(o.input));
    const SymmetryT res = symmetry_realization_T(R, o.N, tol);
    body["residual"] = res.residual;
    body["power_residual"] = res.power_residual;
    body["min_singular_value"] = res.min_singular_value;
    body["minimal"] = res.minimal;
    Json ev = Json::array();
    for (Index i = 0; i < res.eigenvalues.size(); ++i) ev.push_back(io::to_json(res.eigenvalues(i)));
    body["eigenvalues"] = std::move(ev);
    body["T"] = io::to_json(res.T);
    return 0;
  }

  if (name == "stein") {
    const double tol = o.tol_or(1e-8);
    params["tol"] = tol;
    const Realization R = io::realization_from_json(in.load(o.input));
    const SignatureMatrix J = io::signature_from_json(in.load(o.J));
    const Json cert = io::to_json(solve_stein(R, J, tol));
    for (const auto& [k, v] : cert.items()) body[k] = v;
    return 0;
  }

  if (name == "junitary") {
    const double tol = o.tol_or(1e-10);
    params["points"] = o.points;
    params["tol"] = tol;
    const MatrixFunction W = io::function_from_json(in.load(o.input));
    const SignatureMatrix J = io::signature_from_json(in.load(o.J));
    const CircleCheck chk = check_junitary_on_circle(W, J, o.points, tol);
    body["j_unitary"] = chk.unitary;
    body["max_residual"] = chk.max_residual;
    body["points"] = chk.points;
    body["skipped"] = chk.skipped;
    return chk.unitary ? 0 : 2;
  }

  if (name == "negsq") {
    if (o.theta.empty() && o.spec.empty()) {
      fail(ErrorCode::InvalidArgument, "negsq: one of --theta or --spec is required");
    }
    const GridConfig cfg = grid_config(o, in, nullptr);
    params["grid"] = io::to_json(cfg);
    std::optional<Kernel> K;
    if (!o.spec.empty()) {
      K = io::kernel_from_json(in.resolve_spec(in.load(o.spec), base_of(o.spec)), ".");
    } else {
      const MatrixFunction f = io::function_from_json(in.load(o.theta));
      if (o.J.empty()) {
        K = KernelSpec::schur(f).kernel();
      } else {
        K = KernelSpec::theta(f, io::signature_from_json(in.load(o.J))).kernel();
      }
    }
    const NegativeSquares ns = estimate_negative_squares(*K, cfg);
    body["kappa"] = ns.kappa;
    body["seed"] = cfg.seed;
    body["evidence"] = evidence_json(ns);
    return 0;
  }

  if (name == "positivity") {
    const Json config = in.load(o.input);
    const fs::path base = base_of(o.input);
    const Json* embedded = config.contains("grid") ? &config["grid"] : nullptr;
    const GridConfig cfg = grid_config(o, in, embedded);
    params["grid"] = io::to_json(cfg);
    if (!config.is_object() || !config.contains("K1") || !config.contains("K2") ||
        !config.contains("m") || !config.contains("phi")) {
      fail(ErrorCode::MalformedJSON, "positivity config: needs K2, K1, m and phi");
    }
    const Kernel K2 = io::kernel_from_json(in.resolve_spec(config["K2"], base), ".");
    const Kernel K1 = io::kernel_from_json(in.resolve_spec(config["K1"], base), ".");
    const MatrixFunction m = io::function_from_json(in.resolve(config["m"], base));
    const DiskMap phi = io::diskmap_from_json(config["phi"]);
    const PositivityResult res = positivity_test(K2, m, phi, K1, cfg);
    body["positive"] = res.positive;
    body["worst_eigenvalue"] = res.worst_eigenvalue;
    body["max_eigenvalue"] = res.max_eigenvalue;
    body["seed"] = cfg.seed;
    return res.positive ? 0 : 2;
  }

  if (name == "cuntz-verify") {
    params["N"] = o.N;
    params["degree"] = o.degree;
    const SignatureMatrix J =
        o.J.empty() ? SignatureMatrix::identity(1) : io::signature_from_json(in.load(o.J));
    const CuntzReport rep = verify_cuntz(o.N, o.degree, J);
    const Json fields = io::to_json(rep);
    for (const auto& [k, v] : fields.items()) body[k] = v;
    return rep.relations_exact ? 0 : 2;
  }

  if (name == "gleason") {
    params["degree"] = o.degree;
    const LaurentMatrix f = io::laurent_from_json(in.load(o.input));
    Json mj = in.load(o.m);
    if (mj.is_object() && mj.contains("m")) mj = Json(mj["m"]);
    if (!mj.is_array()) fail(ErrorCode::MalformedJSON, "gleason: expected a list of multipliers");
    std::vector<LaurentMatrix> m;
    for (const Json& e : mj) m.push_back(io::laurent_from_json(e));
    const GleasonResult res = gleason_decompose(f, m, o.degree);
    body["residual"] = res.residual;
    body["rank_deficient"] = res.rank_deficient;
    Json parts = Json::array();
    for (const auto& g : res.parts) parts.push_back(io::to_json(g));
    body["parts"] = std::move(parts);
    return 0;
  }

  if (name == "eigensweep") {
    const GridConfig cfg = grid_config(o, in, nullptr);
    params["grid"] = io::to_json(cfg);
    const Kernel K = io::kernel_from_json(in.resolve_spec(in.load(o.input), base_of(o.input)), ".");
    const std::vector<SweepRow> rows = eigen_sweep(K, cfg);
    std::ostringstream csv;
    csv << "trial,grid_size,min_eigenvalue,n_neg\n";
    double min_eig = rows.empty() ? 0.0 : rows.front().min_eigenvalue;
    int max_neg = 0;
    for (const auto& r : rows) {
      csv << r.trial << ',' << r.grid_size << ',' << format_double(r.min_eigenvalue) << ','
          << r.n_neg << '\n';
      min_eig = std::min(min_eig, r.min_eigenvalue);
      max_neg = std::max(max_neg, r.n_neg);
    }
    body["rows"] = rows.size();
    body["min_eigenvalue"] = min_eig;
    body["max_n_neg"] = max_neg;
    body["seed"] = cfg.seed;
    if (!o.out.empty()) {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + o.out);
      f << csv.str();
      body["csv"] = o.out;
    } else {
      o.csv = csv.str();
      o.report_to_err = true;
    }
    return 0;
  }

  fail(ErrorCode::UnknownSubcommand, "unknown subcommand '" + name + "'");
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{
      "construct", "check-cn", "decompose",    "factor",  "periodic-map",
      "symmetry-T", "stein",   "junitary",     "negsq",   "positivity",
      "cuntz-verify", "gleason", "eigensweep"};
  return names;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const std::string name = args.empty() ? std::string() : args.front();
  Options o;
  Inputs in;
  Json params = Json::object();
  Json body = Json::object();
  int code = 1;
  std::optional<ErrorCode> error;
  std::string message;

  const auto& names = subcommands();
  if (name == "--help" || name == "-h") {
    out << "usage: cuntzwave <subcommand> [options]\nsubcommands:";
    for (const auto& n : names) out << ' ' << n;
    out << '\n';
    return 0;
  }
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    error = ErrorCode::UnknownSubcommand;
    message = name.empty() ? "no subcommand given" : "unknown subcommand '" + name + "'";
  } else {
    CLI::App app{"cuntzwave " + name, name};
    configure(app, name, o);
    std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
    try {
      app.parse(rest);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      error = ErrorCode::InvalidArgument;
      message = e.what();
    }
    if (!error) {
      try {
        code = run(name, o, in, body, params);
      } catch (const Error& e) {
        error = e.code();
        message = e.what();
      } catch (const nlohmann::json::exception& e) {
        error = ErrorCode::MalformedJSON;
        message = e.what();
      } catch (const std::exception& e) {
        error = ErrorCode::InvalidArgument;
        message = e.what();
      }
    }
  }

  Json report;
  report["subcommand"] = name;
  report["inputs_digest"] = io::fnv1a_hex(name + '\n' + params.dump() + '\n' + in.bytes());
  if (!params.empty()) report["parameters"] = params;
  if (error) {
    code = is_verdict_error(*error) ? 2 : 1;
    if (code == 2) report["verdict"] = false;
    report["error"] = to_string(*error);
    report["message"] = message;
  } else {
    report["verdict"] = code == 0;
    for (const auto& [k, v] : body.items()) report[k] = v;
  }
  if (o.timing) {
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  if (!error && o.report_to_err) {
    out << o.csv;
    err << report.dump(2) << '\n';
  } else {
    out << report.dump(2) << '\n';
  }
  return code;
}

}  // namespace cuntzwave::cli
