#include "qwsearch/reduced_synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "qwsearch/errors.hpp"
#include "qwsearch/synth2d.hpp"

namespace qws {

namespace {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;

constexpr int kStartsPerCount = 40;

CVec propagate(const ReducedProblem& pr, const double* thetas, int p) {
  const Eigen::Index n = pr.start.size();
  CVec walk(n);
  for (Eigen::Index i = 0; i < n; ++i) walk(i) = std::polar(1.0, -pr.phases(i));
  const CVec axis = pr.axis.cast<cplx>();
  CVec v = pr.start.cast<cplx>();
  auto oracle = [&](double th) {
    const cplx proj = axis.dot(v);
    v -= (1.0 - std::polar(1.0, -th)) * proj * axis;
  };
  for (int k = 0; k < p; ++k) {
    if (pr.oracle_first) {
      oracle(thetas[k]);
      v = v.cwiseProduct(walk);
    } else {
      v = v.cwiseProduct(walk);
      oracle(thetas[k]);
    }
  }
  return v;
}

struct Residual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const ReducedProblem* pr;
  int p;
  int m;

  int inputs() const { return p; }
  int values() const { return m; }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const CVec v = propagate(*pr, x.data(), p);
    const CVec t = pr->target.cast<cplx>();
    const CVec r = v - t.dot(v) * t;
    f.setZero(m);
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      f(2 * i) = r(i).real();
      f(2 * i + 1) = r(i).imag();
    }
    return 0;
  }
};

// Uniform on [-pi, pi) from the top 53 bits; identical on every platform.
double draw_phase(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::numbers::pi * (2.0 * u - 1.0);
}

void check_problem(const ReducedProblem& pr) {
  const Eigen::Index n = pr.start.size();
  if (n == 0 || pr.axis.size() != n || pr.target.size() != n || pr.phases.size() != n) {
    throw ValidationError("reduced problem vectors have inconsistent sizes");
  }
  for (const Eigen::VectorXd* v : {&pr.axis, &pr.start, &pr.target}) {
    if (std::abs(v->norm() - 1.0) > 1e-9) throw ValidationError("reduced problem vector is not unit");
  }
}

}  // namespace

double reduced_infidelity(const ReducedProblem& pr, const std::vector<double>& thetas) {
  const CVec v = propagate(pr, thetas.data(), static_cast<int>(thetas.size()));
  const cplx a = pr.target.cast<cplx>().dot(v);
  return std::max(0.0, 1.0 - std::norm(a));
}

ReducedSolution solve_reduced(const ReducedProblem& pr, double tol, int max_p) {
  check_problem(pr);
  ReducedSolution sol;
  if (reduced_infidelity(pr, {}) <= tol) {
    const cplx a = pr.target.cast<cplx>().dot(pr.start.cast<cplx>());
    sol.gamma = canonical_phase(-std::arg(a));
    sol.residual = reduced_infidelity(pr, {});
    return sol;
  }

  const int n = static_cast<int>(pr.start.size());
  double best = 1.0;
  for (int p = 1; p <= max_p; ++p) {
    Residual f{&pr, p, std::max(2 * n, p)};
    Eigen::NumericalDiff<Residual, Eigen::Central> diff(f);
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(p));
    for (int attempt = 0; attempt < kStartsPerCount; ++attempt) {
      Eigen::VectorXd x(p);
      for (int k = 0; k < p; ++k) x(k) = draw_phase(rng);
      Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Residual, Eigen::Central>> lm(diff);
      lm.parameters.xtol = 1e-15;
      lm.parameters.ftol = 1e-15;
      lm.parameters.gtol = 0.0;
      lm.parameters.maxfev = 400 * (p + 1);
      lm.minimize(x);

      std::vector<double> th(x.data(), x.data() + p);
      for (double& t : th) t = canonical_phase(t);
      const double inf = reduced_infidelity(pr, th);
      best = std::min(best, inf);
      if (inf <= tol) {
        const CVec v = propagate(pr, th.data(), p);
        const cplx a = pr.target.cast<cplx>().dot(v);
        sol.p = p;
        sol.thetas = std::move(th);
        sol.gamma = canonical_phase(-std::arg(a));
        sol.residual = inf;
        return sol;
      }
    }
  }
  std::ostringstream msg;
  msg << "reduced phase search failed up to " << max_p << " queries (best infidelity " << best
      << ")";
  throw SolverError(msg.str());
}

}  // namespace qws
