// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "cuntzwave/cuntz.hpp"
#include "cuntzwave/debranges.hpp"
#include "cuntzwave/error.hpp"
#include "cuntzwave/filters.hpp"
#include "cuntzwave/json_io.hpp"
#include "cuntzwave/kernels.hpp"
#include "test_support.hpp"

using namespace cuntzwave;
using testing::Gen;
using testing::mat;
using testing::scalar;

namespace {

/// Collects failed expectations for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  template <class T>
  void at_most(double value, double bound, const T& what) {
    std::ostringstream s;
    s << what << ": " << value << " > " << bound;
    expect(value <= bound, s.str());
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

LaurentMatrix mono(int k) { return LaurentMatrix::scalar({{k, 1.0}}); }

FilterBank haar_bank() { return FilterBank{2, {mono(0), mono(1)}}; }

void cuntz_exactness(Check& c) {
  for (int N : {2, 3}) {
    for (int degree : {7, 8, 23}) {
      for (const auto& J : {SignatureMatrix::identity(1), SignatureMatrix::diag({1, -1})}) {
        const auto rep = verify_cuntz(N, degree, J);
        std::ostringstream s;
        s << "N=" << N << " degree=" << degree << " p=" << J.dim();
        c.expect(rep.orthogonality_residual == 0.0, s.str() + " orthogonality residual nonzero");
        c.expect(rep.completeness_residual == 0.0, s.str() + " completeness residual nonzero");
      }
    }
  }
}

void haar_pipeline(Check& c) {
  const auto W = build_filter(haar_bank());
  c.expect(check_cn(W).in_cn, "Haar W fails check_cn");
  const auto circle = check_junitary_on_circle(MatrixFunction(W), SignatureMatrix::identity(2), 64);
  c.expect(circle.points == 64, "circle check did not use 64 points");
  c.expect(circle.max_residual < 1e-12, "J-unitary residual not below 1e-12");
  const auto f = factor_R(W);
  LaurentMatrix ref(2, 2);
  ref.add_term(0, mat({{1, 0}, {0, 0}}));
  ref.add_term(1, mat({{0, 0}, {0, 1}}));
  c.at_most(max_difference(f.R, ref), 1e-12, "R - diag(1,u)");
  c.expect(identical(f.R.compose_power(2) * w_hat(2), W), "R(z^2) w_hat(z) != W exactly");
}

void negative_squares(Check& c) {
  const Kernel inv = KernelSpec::theta(MatrixFunction(LaurentMatrix::scalar({{-1, 1.0}})),
                                       SignatureMatrix::identity(1))
                         .kernel();
  LaurentMatrix d(2, 2);
  d.add_term(0, mat({{1, 0}, {0, 0}}));
  d.add_term(-1, mat({{0, 0}, {0, 1}}));
  const Kernel diag = KernelSpec::theta(MatrixFunction(d), SignatureMatrix::diag({1, -1})).kernel();
  for (std::uint64_t seed : {0ULL, 1ULL, 7ULL, 42ULL, 2024ULL, 987654321ULL}) {
    GridConfig cfg;
    cfg.trials = 50;
    cfg.max_points = 12;
    cfg.seed = seed;
    const int k1 = estimate_negative_squares(inv, cfg).kappa;
    const int k0 = estimate_negative_squares(diag, cfg).kappa;
    c.expect(k1 == 1, "Theta = 1/z: kappa " + std::to_string(k1) + " at seed " + std::to_string(seed));
    c.expect(k0 == 0, "Theta = diag(1, 1/z): kappa " + std::to_string(k0) + " at seed " +
                          std::to_string(seed));
  }
}

void stein_certification(Check& c) {
  const auto J = SignatureMatrix::identity(1);
  const auto b = solve_stein(blaschke_factor(0.5), J);
  c.at_most(std::abs(b.H(0, 0) - 1.0), 1e-10, "|H - 1| for b_{1/2}");
  for (int i = 0; i < 3; ++i) c.at_most(b.residuals[i], 1e-10, "b_{1/2} block residual " + std::to_string(i));

  // 1/b_{1/2} = (1 - z/2) / (z - 1/2)
  const double r = std::sqrt(0.75) / 0.5;
  const Realization inv{scalar(2.0), scalar(r), scalar(-r), scalar(-2.0), std::nullopt};
  const auto h = solve_stein(inv, J);
  c.expect(h.nu_neg == 1, "nu_-(H) for 1/b_{1/2} is " + std::to_string(h.nu_neg));

  for (int size : {1, 2, 4}) {
    GridConfig cfg;
    cfg.trials = 20;
    cfg.max_points = size;
    cfg.seed = 5;
    const int n = estimate_negative_squares(KernelSpec::theta(MatrixFunction(inv), J).kernel(), cfg).kappa;
    c.expect(n == h.nu_neg, "sampled n_neg " + std::to_string(n) + " at grid size " + std::to_string(size));
  }
}

void decomposition(Check& c) {
  Gen g(20240501);
  for (int t = 0; t < 20; ++t) {
    const int N = t % 2 == 0 ? 2 : 3;
    const auto W = g.laurent(N, g.integer(1, 2), 0, g.integer(0, 6));
    const auto P = validate_P(CMatrix::Identity(N, N), N);
    const auto parts = decompose_P(W, P);
    const auto chk = check_decomposition(W, P, parts);
    const std::string tag = "sample " + std::to_string(t) + " N=" + std::to_string(N);
    c.expect(chk.sum_deviation == 0.0, tag + ": sum of parts differs from W");
    c.expect(chk.symmetry_deviation == 0.0, tag + ": W_k(eps z) != (eps P)^{-k} W_k(z) exactly");

    std::vector<std::vector<double>> patterns{std::vector<double>(N, 1.0)};
    std::vector<double> alt;
    for (int i = 0; i < N; ++i) alt.push_back(i % 2 == 0 ? 1.0 : -1.0);
    patterns.push_back(alt);
    std::vector<double> neg(N, -1.0);
    neg[0] = 1.0;
    patterns.push_back(neg);
    for (const auto& d : patterns) {
      const auto rep = krein_orthogonality_check(W, P, SignatureMatrix::diag(d));
      c.at_most(rep.max_inner, 1e-12, tag + ": Krein inner product");
    }
  }
}

void realization_identities(Check& c) {
  const auto J = SignatureMatrix::identity(1);
  Realization z{scalar(0.0), scalar(1.0), scalar(1.0), scalar(0.0), std::nullopt};
  z.stein_H = scalar(1.0);
  Realization b = blaschke_factor(0.5);
  b.stein_H = solve_stein(b, J).H;
  const std::vector<std::pair<std::string, PThetaModel>> models{
      {"Theta=0", PThetaModel::hardy(J)},
      {"Theta=z", PThetaModel::stein(z, J, 1)},
      {"Theta=b_1/2", PThetaModel::stein(b, J, 1)}};
  for (const auto& [name, model] : models) {
    const auto rep = check_thetaN_identities(ThetaNMaps(model, 2, 16), 10, 6);
    c.at_most(rep.a_inner, 1e-12, name + " A-inner identity");
    c.at_most(rep.b_inner, 1e-12, name + " B-inner identity");
    c.at_most(rep.r0a, 1e-12, name + " U A = T U");
  }

  Gen g(6);
  const Realization zero{CMatrix(0, 0), CMatrix(0, 1), CMatrix(1, 0), scalar(0.0), std::nullopt};
  for (const auto& R : {zero, z, b}) {
    const auto R2 = compose_power(R, 2);
    for (int i = 0; i < 20; ++i) {
      const cd w = g.disk(0.95);
      c.at_most(std::abs(evaluate(R2, w)(0, 0) - evaluate(R, w * w)(0, 0)), 1e-12,
                "Theta_N(z) vs Theta(z^N)");
    }
  }
}

void contraction_tie_out(Check& c) {
  for (int N : {2, 3, 4}) {
    LaurentMatrix m(1, N);
    for (int n = 0; n < N; ++n) {
      CMatrix e = CMatrix::Zero(1, N);
      e(0, n) = 1.0;
      m.add_term(n, e);
    }
    GridConfig cfg;
    cfg.trials = 20;
    cfg.max_points = 12;
    cfg.seed = 7;
    cfg.tol = 1e-10;
    const auto r = positivity_test(hardy_kernel(1), MatrixFunction(m), DiskMap::power(N),
                                   block_diagonal(hardy_kernel(1), N), cfg);
    c.at_most(-r.worst_eigenvalue, 1e-10, "N=" + std::to_string(N) + " smallest eigenvalue below -1e-10");
    c.at_most(r.max_eigenvalue, 1e-10, "N=" + std::to_string(N) + " largest eigenvalue above 1e-10");
  }
}

void leech_example(Check& c) {
  const double s = std::sqrt(0.5);
  LaurentMatrix W(1, 2);
  W.add_term(1, mat({{s, -s}}));
  Gen g(8);
  std::vector<cd> pts;
  for (int i = 0; i < 20; ++i) pts.push_back(g.disk(0.9));
  const auto r = schur_x_factor(MatrixFunction(W), 2, pts);
  for (const auto& X : r.samples) c.at_most(testing::diff(X, permutation_matrix(2)), 1e-12, "X - P_2");
  c.at_most(r.factorization_residual, 1e-12, "W(eps z) X(z) - W(z)");
}

void periodic(Check& c) {
  const auto W = build_periodic(haar_bank());
  c.expect(check_cn(periodic_map(W)).in_cn, "periodic_map output fails check_cn");
  for (int N : {2, 3, 4}) {
    const auto D = D_N(N);
    c.expect(identical(D.rotate(N, 1), D * D(1.0)),
             "D_N(eps z) != D_N(z) D_N(1) exactly for N=" + std::to_string(N));
  }
}

void cli_determinism(Check& c) {
  const std::string data = CUNTZWAVE_TEST_DATA "/";
  auto run = [](const std::vector<std::string>& args, std::string& out) {
    std::ostringstream o, e;
    const int code = cli::dispatch(args, o, e);
    out = o.str();
    return code;
  };
  const std::vector<std::string> negsq{"negsq", "--theta", data + "inv_z.json", "--J",
                                       data + "scalar1.json", "--trials", "50", "--seed", "7"};
  std::string a, b, x;
  c.expect(run(negsq, a) == 0, "negsq exit code");
  c.expect(run(negsq, b) == 0, "negsq exit code (second run)");
  c.expect(!a.empty() && a == b, "negsq reports differ between runs");
  c.expect(io::parse_json(a)["kappa"] == 1, "negsq kappa != 1");
  c.expect(run({"check-cn", data + "haar.json"}, x) == 0, "check-cn haar: exit code not 0");
  c.expect(run({"factor", data + "identity.json"}, x) == 2, "factor identity: exit code not 2");
  c.expect(io::parse_json(x)["error"] == "NotInCN", "factor identity: error is not NotInCN");
  c.expect(run({"check-cn", data + "corrupted.json"}, x) == 1, "corrupted input: exit code not 1");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"Cuntz relations exact", cuntz_exactness},
      {"Haar pipeline", haar_pipeline},
      {"negative squares", negative_squares},
      {"Stein certification", stein_certification},
      {"P-decomposition", decomposition},
      {"Theta(z^N) realization identities", realization_identities},
      {"contraction criterion tie-out", contraction_tie_out},
      {"Leech factor example", leech_example},
      {"periodic map", periodic},
      {"CLI determinism and exit codes", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const bool ok = c.failures().empty();
    failed += ok ? 0 : 1;
    std::printf("%s criterion %zu: %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str());
    for (const auto& f : c.failures()) std::printf("    %s\n", f.c_str());
  }
  return failed == 0 ? 0 : 1;
}
