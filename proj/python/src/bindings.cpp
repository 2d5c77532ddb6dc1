#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "cuntzwave/cuntz.hpp"
#include "cuntzwave/debranges.hpp"
#include "cuntzwave/error.hpp"
#include "cuntzwave/filters.hpp"
#include "cuntzwave/json_io.hpp"
#include "cuntzwave/kernels.hpp"

namespace py = pybind11;
using namespace cuntzwave;
using io::Json;

namespace {

Json parse(const std::string& text) { return io::parse_json(text, "<python>"); }

LaurentMatrix laurent(const std::string& text) { return io::laurent_from_json(parse(text)); }

std::vector<LaurentMatrix> laurent_list(const std::vector<std::string>& texts) {
  std::vector<LaurentMatrix> out;
  for (const auto& t : texts) out.push_back(laurent(t));
  return out;
}

Json laurent_list_json(const std::vector<LaurentMatrix>& parts) {
  Json out = Json::array();
  for (const auto& p : parts) out.push_back(io::to_json(p));
  return out;
}

std::string py_check_cn(const std::string& W, double tol, bool nonsquare) {
  const auto r = cuntzwave::check_cn(laurent(W), tol, nonsquare);
  Json out{{"in_CN", r.in_cn}, {"nonsquare", r.nonsquare}, {"deviation", r.deviation}};
  if (r.bank) out["bank"] = io::to_json(*r.bank);
  return out.dump();
}

std::string py_build_filter(const std::string& bank) {
  return io::to_json(cuntzwave::build_filter(io::bank_from_json(parse(bank)))).dump();
}

std::string py_factor_R(const std::string& W, double tol) {
  const auto r = cuntzwave::factor_R(laurent(W), tol);
  return Json{{"R", io::to_json(r.R)}, {"reconstruction_error", r.reconstruction_error}}.dump();
}

std::string py_decompose_P(const std::string& W, const std::string& P) {
  return laurent_list_json(cuntzwave::decompose_P(laurent(W), io::pmatrix_from_json(parse(P)))).dump();
}

std::string py_periodic_map(const std::string& W, double tol) {
  return io::to_json(cuntzwave::periodic_map(laurent(W), tol)).dump();
}

std::string py_split(int N, const std::string& f) {
  return laurent_list_json(cuntzwave::split(N, laurent(f)).parts).dump();
}

std::string py_verify_cuntz(int N, int degree, const std::string& J) {
  return io::to_json(cuntzwave::verify_cuntz(N, degree, io::signature_from_json(parse(J)))).dump();
}

std::string py_gleason(const std::string& f, const std::vector<std::string>& m, int degree) {
  const auto r = cuntzwave::gleason_decompose(laurent(f), laurent_list(m), degree);
  return Json{{"residual", r.residual},
              {"rank_deficient", r.rank_deficient},
              {"parts", laurent_list_json(r.parts)}}
      .dump();
}

std::string py_solve_stein(const std::string& R, const std::string& J, double tol) {
  return io::to_json(cuntzwave::solve_stein(io::realization_from_json(parse(R)),
                                            io::signature_from_json(parse(J)), tol))
      .dump();
}

std::string py_symmetry_T(const std::string& R, int N, double tol) {
  const auto r = symmetry_realization_T(io::realization_from_json(parse(R)), N, tol);
  return Json{{"T", io::to_json(r.T)}, {"residual", r.residual}, {"power_residual", r.power_residual}}
      .dump();
}

std::string py_negative_squares(const std::string& spec, const std::string& grid) {
  const auto K = io::kernel_from_json(parse(spec), std::filesystem::current_path());
  const auto r = estimate_negative_squares(K, io::grid_from_json(parse(grid)));
  Json ev = Json::array();
  for (const auto& e : r.evidence)
    ev.push_back({{"trial", e.trial},
                  {"points", e.points},
                  {"signature", io::to_json(e.signature)},
                  {"min_eigenvalue", e.min_eigenvalue},
                  {"max_eigenvalue", e.max_eigenvalue}});
  return Json{{"kappa", r.kappa}, {"evidence", ev}}.dump();
}

CMatrix py_evaluate(const std::string& W, cd z) { return io::function_from_json(parse(W))(z); }

py::tuple py_run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of cuntzwave. Objects cross the boundary as JSON text.";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      PyErr_SetObject(exc.ptr(), py::make_tuple(e.name(), e.what()).ptr());
    }
  });

  m.def("check_cn", &py_check_cn, py::arg("W"), py::arg("tol") = 1e-12,
        py::arg("nonsquare") = false);
  m.def("build_filter", &py_build_filter, py::arg("bank"));
  m.def("factor_R", &py_factor_R, py::arg("W"), py::arg("tol") = 1e-12);
  m.def("decompose_P", &py_decompose_P, py::arg("W"), py::arg("P"));
  m.def("periodic_map", &py_periodic_map, py::arg("W"), py::arg("tol") = 1e-12);
  m.def("split", &py_split, py::arg("N"), py::arg("f"));
  m.def("verify_cuntz", &py_verify_cuntz, py::arg("N"), py::arg("degree"), py::arg("J"));
  m.def("gleason", &py_gleason, py::arg("f"), py::arg("m"), py::arg("degree"));
  m.def("solve_stein", &py_solve_stein, py::arg("R"), py::arg("J"), py::arg("tol") = 1e-8);
  m.def("symmetry_T", &py_symmetry_T, py::arg("R"), py::arg("N"), py::arg("tol") = 1e-8);
  m.def("negative_squares", &py_negative_squares, py::arg("spec"), py::arg("grid"));
  m.def("evaluate", &py_evaluate, py::arg("W"), py::arg("z"));
  m.def("fnv1a_hex", &io::fnv1a_hex, py::arg("data"));
  m.def("run_cli", &py_run_cli, py::arg("args"));
}
