#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "cuntzwave/json_io.hpp"

using cuntzwave::io::Json;

namespace {

const std::string kData = std::string(CUNTZWAVE_TEST_DATA) + "/";

struct Run {
  int code = -1;
  std::string out;
  std::string err;
  Json report;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cuntzwave::cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  const std::string& text = r.out.rfind('{', 0) == 0 ? r.out : r.err;
  if (!text.empty() && text.front() == '{') r.report = Json::parse(text);
  return r;
}

std::string data(const std::string& name) { return kData + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("check-cn on the Haar filter") {
  const auto r = run({"check-cn", data("haar.json")});
  CHECK(r.code == 0);
  CHECK(r.report["in_CN"] == true);
  CHECK(r.report["verdict"] == true);
  REQUIRE(r.report.contains("bank"));
  CHECK(r.report["bank"]["N"] == 2);

  const auto id = run({"check-cn", data("identity.json")});
  CHECK(id.code == 2);
  CHECK(id.report["in_CN"] == false);

  const auto row = run({"check-cn", data("leech_row.json")});
  CHECK(row.code == 1);
  CHECK(row.report["error"] == "NotSquare");
  const auto ns = run({"check-cn", data("leech_row.json"), "--nonsquare"});
  CHECK(ns.code == 0);
  CHECK(ns.report["nonsquare"] == true);
}

TEST_CASE("negsq examples") {
  const auto a = run({"negsq", "--theta", data("inv_z.json"), "--J", data("scalar1.json"),
                      "--trials", "50", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.report["kappa"] == 1);
  CHECK(a.report["seed"] == 7);

  const auto b = run({"negsq", "--theta", data("diag_1_invz.json"), "--J", data("J_1_m1.json"),
                      "--trials", "50", "--seed", "7"});
  CHECK(b.code == 0);
  CHECK(b.report["kappa"] == 0);

  const auto s = run({"negsq", "--spec", data("spec_inv_z.json"), "--grid", data("grid_small.json")});
  CHECK(s.code == 0);
  CHECK(s.report["kappa"] == 1);
  CHECK(s.report["seed"] == 3);

  CHECK(run({"negsq", "--theta", data("inv_z.json"), "--spec", data("spec_inv_z.json")}).code == 1);
}

TEST_CASE("factor: verdicts and results") {
  const auto id = run({"factor", data("identity.json")});
  CHECK(id.code == 2);
  CHECK(id.report["error"] == "NotInCN");
  CHECK(id.report["verdict"] == false);

  const auto h = run({"factor", data("haar.json")});
  CHECK(h.code == 0);
  CHECK(h.report["reconstruction_error"] == 0.0);
  const auto R = cuntzwave::io::laurent_from_json(h.report["R"]);
  CHECK(std::abs(R.coeff(0)(0, 0) - 1.0) <= 1e-12);
  CHECK(std::abs(R.coeff(1)(1, 1) - 1.0) <= 1e-12);
}

TEST_CASE("input errors exit 1 with a report") {
  const auto c = run({"check-cn", data("corrupted.json")});
  CHECK(c.code == 1);
  CHECK(c.report["error"] == "MalformedJSON");
  CHECK(c.report["message"].get<std::string>().find("corrupted.json:3:1") != std::string::npos);
  CHECK_FALSE(c.report.contains("verdict"));

  const auto u = run({"bogus"});
  CHECK(u.code == 1);
  CHECK(u.report["error"] == "UnknownSubcommand");
  CHECK(run({}).code == 1);

  const auto m = run({"factor", data("missing.json")});
  CHECK(m.code == 1);
  CHECK(m.report["error"] == "InvalidArgument");

  const auto f = run({"factor", data("haar.json"), "--no-such-flag"});
  CHECK(f.code == 1);
  CHECK(f.report["error"] == "InvalidArgument");

  CHECK(run({"symmetry-T", data("haar_realization.json")}).code == 1);
}

TEST_CASE("help exits 0") {
  const auto h = run({"--help"});
  CHECK(h.code == 0);
  for (const auto& name : cuntzwave::cli::subcommands()) CHECK(h.out.find(name) != std::string::npos);
  CHECK(run({"stein", "--help"}).code == 0);
}

TEST_CASE("reports are deterministic and keyed in a fixed order") {
  const std::vector<std::string> args{"negsq", "--theta", data("inv_z.json"), "--J",
                                      data("scalar1.json"), "--trials", "20", "--seed", "11"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.out == b.out);
  auto it = a.report.begin();
  CHECK(it.key() == "subcommand");
  ++it;
  CHECK(it.key() == "inputs_digest");
  ++it;
  CHECK(it.key() == "parameters");
  ++it;
  CHECK(it.key() == "verdict");
  CHECK_FALSE(a.report.contains("wall_time_s"));

  auto other = args;
  other.back() = "12";
  CHECK(run(other).report["inputs_digest"] != a.report["inputs_digest"]);

  auto timed = args;
  timed.push_back("--timing");
  CHECK(run(timed).report.contains("wall_time_s"));
}

TEST_CASE("construct, decompose and periodic-map") {
  const auto c = run({"construct", "--bank", data("bank_haar.json")});
  CHECK(c.code == 0);
  CHECK(c.report["in_CN"] == true);
  CHECK(c.report["deviation"] == 0.0);

  const auto d = run({"decompose", data("haar.json"), "--P", data("P_I2.json"), "--J", data("J_I2.json")});
  CHECK(d.code == 0);
  CHECK(d.report["sum_holds"] == true);
  CHECK(d.report["symmetry_holds"] == true);
  CHECK(d.report["sum_deviation"] == 0.0);
  CHECK(d.report["krein"]["orthogonal"] == true);
  CHECK(d.report["parts"].size() == 2);

  const auto bad = run({"decompose", data("haar.json"), "--P", data("P_swap2.json")});
  CHECK(bad.code == 2);
  CHECK(bad.report["error"] == "DeterminantVanishes");

  CHECK(run({"periodic-map", data("haar.json")}).code == 2);
  const auto p = run({"periodic-map", data("periodic_haar.json")});
  CHECK(p.code == 0);
  CHECK(p.report["in_CN"] == true);
}

TEST_CASE("symmetry-T, stein and junitary") {
  const auto t = run({"symmetry-T", data("haar_realization.json"), "--N", "2"});
  CHECK(t.code == 0);
  const auto T = cuntzwave::io::matrix_from_json(t.report["T"]);
  CHECK(std::abs(T(0, 0) + 1.0) <= 1e-10);

  const auto s = run({"stein", data("blaschke_half.json"), "--J", data("scalar1.json")});
  CHECK(s.code == 0);
  CHECK(s.report["nu_neg"] == 0);
  const auto H = cuntzwave::io::matrix_from_json(s.report["H"]);
  CHECK(std::abs(H(0, 0) - 1.0) <= 1e-10);

  const auto i = run({"stein", data("inv_blaschke_half.json"), "--J", data("scalar1.json")});
  CHECK(i.code == 0);
  CHECK(i.report["nu_neg"] == 1);

  const auto j = run({"junitary", data("haar.json"), "--J", data("J_I2.json")});
  CHECK(j.code == 0);
  CHECK(j.report["j_unitary"] == true);
  CHECK(j.report["points"] == 64);

  const auto n = run({"junitary", data("identity.json"), "--J", data("J_1_m1.json")});
  CHECK(n.code == 0);
  const auto f = run({"junitary", data("inv_z.json"), "--J", data("J_I2.json")});
  CHECK(f.code == 1);
}

TEST_CASE("positivity, cuntz-verify and gleason") {
  const auto p = run({"positivity", data("positivity_zN.json")});
  CHECK(p.code == 0);
  CHECK(p.report["positive"] == true);
  CHECK(std::abs(p.report["worst_eigenvalue"].get<double>()) <= 1e-10);

  const auto c = run({"cuntz-verify", "--N", "3", "--degree", "8"});
  CHECK(c.code == 0);
  CHECK(c.report["relations_exact"] == true);
  CHECK(c.report["max_residual"] == 0.0);
  const auto c7 = run({"cuntz-verify", "--N", "3", "--degree", "7"});
  CHECK(c7.report["checked_degree"] == 5);
  CHECK(run({"cuntz-verify", "--N", "0", "--degree", "3"}).code == 1);

  const auto g = run({"gleason", data("gleason_f.json"), "--m", data("gleason_m2.json"), "--degree", "5"});
  CHECK(g.code == 0);
  CHECK(g.report["residual"] == 0.0);
  CHECK(g.report["parts"].size() == 2);
}

TEST_CASE("eigensweep: Hardy kernel has no negative eigenvalues") {
  const auto r = run({"eigensweep", data("spec_hardy.json"), "--trials", "3", "--max-points", "8",
                      "--seed", "5"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 1 + 3 * 8);
  CHECK(ls[0] == "trial,grid_size,min_eigenvalue,n_neg");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = split_csv(ls[i]);
    REQUIRE(f.size() == 4);
    CHECK(std::stod(f[2]) >= -1e-12);
    CHECK(f[3] == "0");
  }
  CHECK(r.report["max_n_neg"] == 0);
  CHECK(r.report["rows"] == 24);
}

TEST_CASE("eigensweep: Theta = 1/z has exactly one negative square at every size") {
  const auto r = run({"eigensweep", data("spec_inv_z.json"), "--trials", "4", "--max-points", "6",
                      "--seed", "9"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 1 + 4 * 6);
  for (std::size_t i = 1; i < ls.size(); ++i) CHECK(split_csv(ls[i])[3] == "1");
}

TEST_CASE("eigensweep writes the CSV file with --out") {
  const auto path = std::filesystem::temp_directory_path() / "cuntzwave_sweep_test.csv";
  const auto r = run({"eigensweep", data("spec_schur_blaschke.json"), "--out", path.string(),
                      "--trials", "2", "--max-points", "4"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.report["csv"] == path.string());
  std::ifstream f(path);
  std::stringstream text;
  text << f.rdbuf();
  CHECK(lines(text.str()).size() == 9);
  std::filesystem::remove(path);

  CHECK(run({"eigensweep", data("corrupted.json")}).code == 1);
}
