#include "cuntzwave/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cuntzwave/error.hpp"

namespace cuntzwave::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(ErrorCode::MalformedJSON, what); }

const Json& field(const Json& j, const char* key, const char* context) {
  if (!j.is_object()) malformed(std::string(context) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string(context) + ": missing key '" + key + "'");
  return *it;
}

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    malformed(std::string(what) + ": unexpected value " + j.dump());
  }
}

int get_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + ": expected an integer");
  return j.get<int>();
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 0;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 0;
    } else {
      ++column;
    }
  }
  return {line, std::max<std::size_t>(column, 1)};
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    malformed(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
              ": syntax error");
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) {
  return parse_json(read_text_file(path), path.string());
}

cd complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  malformed("complex number: expected [re, im] or a number, got " + j.dump());
}

Json to_json(cd z) { return Json::array({z.real(), z.imag()}); }

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) malformed("matrix: expected a list of rows");
  if (j.empty()) return CMatrix(0, 0);
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array()) malformed("matrix: expected a list of rows");
  const Index cols = static_cast<Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      malformed("matrix: ragged rows");
    for (Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

LaurentMatrix laurent_from_json(const Json& j) {
  const Index rows = get_int(field(j, "rows", "laurent"), "laurent rows");
  const Index cols = get_int(field(j, "cols", "laurent"), "laurent cols");
  if (rows <= 0 || cols <= 0) malformed("laurent: rows and cols must be positive");
  const Json& terms = field(j, "terms", "laurent");
  if (!terms.is_array()) malformed("laurent: terms must be a list");
  LaurentMatrix W(rows, cols);
  for (const Json& t : terms) {
    const int exp = get_int(field(t, "exp", "laurent term"), "laurent exp");
    CMatrix m = matrix_from_json(field(t, "matrix", "laurent term"));
    if (m.rows() != rows || m.cols() != cols)
      fail(ErrorCode::DimensionMismatch, "laurent term z^" + std::to_string(exp) +
                                             " is not " + std::to_string(rows) + "x" +
                                             std::to_string(cols));
    W.add_term(exp, m);
  }
  return W;
}

Json to_json(const LaurentMatrix& W) {
  Json terms = Json::array();
  for (const auto& [k, m] : W.terms()) terms.push_back(Json{{"exp", k}, {"matrix", to_json(m)}});
  return Json{{"rows", W.rows()}, {"cols", W.cols()}, {"terms", std::move(terms)}};
}

Realization realization_from_json(const Json& j) {
  Realization R;
  R.A = matrix_from_json(field(j, "A", "realization"));
  R.B = matrix_from_json(field(j, "B", "realization"));
  R.C = matrix_from_json(field(j, "C", "realization"));
  R.D = matrix_from_json(field(j, "D", "realization"));
  if (R.A.size() == 0) {
    R.A = CMatrix(0, 0);
    R.B = CMatrix(0, R.D.cols());
    R.C = CMatrix(R.D.rows(), 0);
  }
  if (j.contains("H") && !j["H"].is_null()) R.stein_H = matrix_from_json(j["H"]);
  R.check_shapes();
  return R;
}

Json to_json(const Realization& R) {
  Json out{{"A", to_json(R.A)}, {"B", to_json(R.B)}, {"C", to_json(R.C)}, {"D", to_json(R.D)}};
  if (R.stein_H) out["H"] = to_json(*R.stein_H);
  return out;
}

SignatureMatrix signature_from_json(const Json& j) {
  if (j.is_object() && j.contains("diag")) {
    const auto signs = get_as<std::vector<double>>(j["diag"], "signature diag");
    if (signs.empty()) malformed("signature: empty diag");
    return SignatureMatrix::diag(std::span<const double>(signs));
  }
  const CMatrix M = matrix_from_json(field(j, "entries", "signature"));
  if (j.contains("dim")) {
    const Index dim = get_int(j["dim"], "signature dim");
    if (M.rows() != dim || M.cols() != dim)
      fail(ErrorCode::DimensionMismatch, "signature: entries are not dim x dim");
  }
  return SignatureMatrix::validate(M);
}

Json to_json(const SignatureMatrix& J) {
  return Json{{"dim", J.dim()}, {"entries", to_json(J.matrix())}};
}

FilterBank bank_from_json(const Json& j) {
  FilterBank bank;
  bank.N = get_int(field(j, "N", "filter bank"), "filter bank N");
  const Json& s = field(j, "s_hat", "filter bank");
  if (!s.is_array()) malformed("filter bank: s_hat must be a list");
  for (const Json& f : s) bank.s_hat.push_back(laurent_from_json(f));
  bank.validate();
  return bank;
}

Json to_json(const FilterBank& bank) {
  Json s = Json::array();
  for (const auto& f : bank.s_hat) s.push_back(to_json(f));
  return Json{{"N", bank.N}, {"s_hat", std::move(s)}};
}

PMatrix pmatrix_from_json(const Json& j) {
  const int N = get_int(field(j, "N", "P matrix"), "P matrix N");
  return validate_P(matrix_from_json(field(j, "entries", "P matrix")), N);
}

GridConfig grid_from_json(const Json& j, GridConfig cfg) {
  if (!j.is_object()) malformed("grid config: expected an object");
  if (j.contains("trials")) cfg.trials = get_int(j["trials"], "grid trials");
  if (j.contains("max_points")) cfg.max_points = get_int(j["max_points"], "grid max_points");
  if (j.contains("seed")) cfg.seed = get_as<std::uint64_t>(j["seed"], "grid seed");
  if (j.contains("radius")) cfg.radius = get_as<double>(j["radius"], "grid radius");
  if (j.contains("tol")) cfg.tol = get_as<double>(j["tol"], "grid tol");
  if (cfg.trials <= 0 || cfg.max_points <= 0)
    fail(ErrorCode::InvalidArgument, "grid config: trials and max_points must be positive");
  if (!(cfg.radius > 0.0 && cfg.radius < 1.0))
    fail(ErrorCode::InvalidArgument, "grid config: radius must lie in (0, 1)");
  return cfg;
}

Json to_json(const GridConfig& cfg) {
  return Json{{"trials", cfg.trials},
              {"max_points", cfg.max_points},
              {"seed", cfg.seed},
              {"radius", cfg.radius},
              {"tol", cfg.tol}};
}

MatrixFunction function_from_json(const Json& j) {
  if (j.is_object() && j.contains("terms")) return laurent_from_json(j);
  if (j.is_object() && j.contains("A")) return realization_from_json(j);
  malformed("function: expected a Laurent object or a realization");
}

Json resolve_reference(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_string()) return j;
  std::filesystem::path p = j.get<std::string>();
  if (p.is_relative()) p = base_dir / p;
  return read_json_file(p);
}

Kernel kernel_from_json(const Json& j, const std::filesystem::path& base_dir) {
  const std::string kind = get_as<std::string>(field(j, "kind", "kernel spec"), "kernel kind");
  auto sig = [&](const char* key) {
    return signature_from_json(resolve_reference(field(j, key, "kernel spec"), base_dir));
  };
  auto fun = [&] {
    return function_from_json(resolve_reference(field(j, "function", "kernel spec"), base_dir));
  };

  std::optional<Kernel> K;
  if (kind == "Hardy") {
    const int dim = j.contains("dim") ? get_int(j["dim"], "kernel dim") : 1;
    if (dim <= 0) fail(ErrorCode::InvalidArgument, "kernel spec: dim must be positive");
    K = hardy_kernel(dim);
  } else {
    switch (kernel_kind_from_string(kind)) {
      case KernelKind::Schur:
        K = KernelSpec::schur(fun()).kernel();
        break;
      case KernelKind::Theta:
        K = KernelSpec::theta(fun(), sig("J")).kernel();
        break;
      case KernelKind::NonSquare:
        K = KernelSpec::nonsquare(fun(), sig("J1"), sig("J2")).kernel();
        break;
      case KernelKind::Block:
        K = KernelSpec::block(fun(), sig("J")).kernel();
        break;
    }
  }
  if (j.contains("copies")) {
    const int copies = get_int(j["copies"], "kernel copies");
    if (copies <= 0) fail(ErrorCode::InvalidArgument, "kernel spec: copies must be positive");
    if (copies > 1) K = block_diagonal(*K, copies);
  }
  return *K;
}

DiskMap diskmap_from_json(const Json& j) {
  const std::string type = get_as<std::string>(field(j, "type", "disk map"), "disk map type");
  const int N = j.contains("N") ? get_int(j["N"], "disk map N") : 1;
  if (N <= 0) fail(ErrorCode::InvalidArgument, "disk map: N must be positive");
  if (type == "identity") return DiskMap::identity();
  if (type == "power") return DiskMap::power(N);
  if (type == "rotation") return DiskMap::rotation(N);
  fail(ErrorCode::InvalidArgument, "disk map: unknown type '" + type + "'");
}

Json to_json(const Signature& s) {
  return Json{{"n_pos", s.n_pos}, {"n_neg", s.n_neg}, {"n_zero", s.n_zero}};
}

Json to_json(const SteinCertificate& cert) {
  return Json{{"H", to_json(cert.H)},
              {"nu_neg", cert.nu_neg},
              {"residuals", Json::array({cert.residuals[0], cert.residuals[1], cert.residuals[2]})},
              {"signature", to_json(cert.signature)},
              {"min_singular_value", cert.min_singular_value},
              {"minimal", cert.minimal},
              {"warnings", cert.warnings}};
}

Json to_json(const CuntzReport& rep) {
  return Json{{"N", rep.N},
              {"degree", rep.degree},
              {"degree_compatible", rep.degree_compatible},
              {"checked_degree", rep.checked_degree},
              {"orthogonality_residual", rep.orthogonality_residual},
              {"completeness_residual", rep.completeness_residual},
              {"max_residual", rep.max_residual},
              {"relations_exact", rep.relations_exact}};
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cuntzwave::io
