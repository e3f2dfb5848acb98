#include "qwsearch/synth2d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "qwsearch/errors.hpp"

namespace qws {

namespace {

using cplx = std::complex<double>;
using State = std::array<cplx, 2>;
using Vec3 = std::array<double, 3>;

constexpr double kPi = std::numbers::pi;

struct Problem {
  double c;
  double s;  // sqrt(1 - c^2)

  explicit Problem(double overlap) : c(overlap), s(std::sqrt(std::max(0.0, 1.0 - overlap * overlap))) {}

  State start() const { return {cplx(c, 0.0), cplx(s, 0.0)}; }

  // O(theta) R on v
  void step(State& v, double theta) const {
    v[0] = -v[0];
    const cplx proj = c * v[0] + s * v[1];
    const cplx k = (1.0 - std::polar(1.0, -theta)) * proj;
    v[0] -= k * c;
    v[1] -= k * s;
  }

  State run(const std::vector<double>& thetas) const {
    State v = start();
    for (double t : thetas) step(v, t);
    return v;
  }
};

double infidelity(const State& v) { return std::max(0.0, 1.0 - std::norm(v[0])); }

Vec3 bloch(const State& v) {
  const cplx ab = std::conj(v[0]) * v[1];
  return {2.0 * ab.real(), 2.0 * ab.imag(), std::norm(v[0]) - std::norm(v[1])};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Angle theta for which rotating u about n by +theta lands on the circle
// {v : v . target = cos_rho}.
double rotation_to_circle(const Vec3& u, const Vec3& n, const Vec3& target, double cos_rho) {
  const double nu = dot(n, u);
  const double nt = dot(n, target);
  const double a = dot(u, target) - nu * nt;
  const double b = dot(cross(n, u), target);
  const double rhs = cos_rho - nu * nt;
  const double r = std::hypot(a, b);
  if (r < 1e-300) return 0.0;
  return std::atan2(b, a) + std::acos(std::clamp(rhs / r, -1.0, 1.0));
}

struct Interval {
  double lo;
  double hi;
};

// Distances to the start axis reachable after one more query, given the
// current distance interval; delta is the separation between the start axis
// and its image under R.
Interval advance(const Interval& in, double delta) {
  const double two_pi = 2.0 * kPi;
  Interval out{};
  if (in.lo <= delta && delta <= in.hi) {
    out.lo = 0.0;
  } else {
    out.lo = std::min(std::abs(delta - in.lo), std::abs(delta - in.hi));
  }
  auto top = [&](double r) { return std::min(delta + r, two_pi - delta - r); };
  const double peak = std::clamp(kPi - delta, in.lo, in.hi);
  out.hi = std::max({top(in.lo), top(in.hi), top(peak)});
  return out;
}

struct Geometry {
  double phi;    // distance start axis -> target
  double delta;  // distance start axis -> R(start axis)
};

Geometry geometry(double c) {
  const double a = std::acos(std::clamp(c, -1.0, 1.0));
  return {2.0 * a, std::min(4.0 * a, 2.0 * kPi - 4.0 * a)};
}

constexpr double kReachSlack = 1e-12;

bool reaches(const Interval& in, double phi) {
  return in.lo - kReachSlack <= phi && phi <= in.hi + kReachSlack;
}

// Rung 1: every phase pi.
std::optional<std::vector<double>> all_pi(const Problem& pr, int p, double tol) {
  std::vector<double> th(p, kPi);
  if (infidelity(pr.run(th)) <= tol) return th;
  return std::nullopt;
}

// Rung 2: interior phases pi, Newton on the first and last from a grid of starts.
std::optional<std::vector<double>> interior_pi(const Problem& pr, int p, double tol) {
  auto eval = [&](double x0, double x1) {
    std::vector<double> th(p, kPi);
    th.front() = x0;
    if (p > 1) th.back() = x1;
    const State v = pr.run(th);
    return std::array<double, 2>{v[1].real(), v[1].imag()};
  };
  const double h = 1e-7;
  for (int g = 0; g < 32; ++g) {
    double x0 = -kPi + 2.0 * kPi * ((g % 8) + 0.5) / 8.0;
    double x1 = -kPi + 2.0 * kPi * ((g / 8) + 0.5) / 4.0;
    if (p == 1) x1 = x0;
    auto f = eval(x0, x1);
    for (int it = 0; it < 60; ++it) {
      const double fn = std::hypot(f[0], f[1]);
      if (fn < 1e-14) break;
      const auto f0p = eval(x0 + h, x1), f0m = eval(x0 - h, x1);
      double j00 = (f0p[0] - f0m[0]) / (2 * h), j10 = (f0p[1] - f0m[1]) / (2 * h);
      double d0 = 0.0, d1 = 0.0;
      if (p > 1) {
        const auto f1p = eval(x0, x1 + h), f1m = eval(x0, x1 - h);
        const double j01 = (f1p[0] - f1m[0]) / (2 * h), j11 = (f1p[1] - f1m[1]) / (2 * h);
        const double det = j00 * j11 - j01 * j10;
        if (std::abs(det) < 1e-14) break;
        d0 = -(j11 * f[0] - j01 * f[1]) / det;
        d1 = -(-j10 * f[0] + j00 * f[1]) / det;
      } else {
        const double jj = j00 * j00 + j10 * j10;
        if (jj < 1e-28) break;
        d0 = -(j00 * f[0] + j10 * f[1]) / jj;
      }
      // Backtrack until the residual drops.
      double lambda = 1.0;
      bool moved = false;
      for (int b = 0; b < 30; ++b, lambda *= 0.5) {
        const double y0 = x0 + lambda * d0;
        const double y1 = p > 1 ? x1 + lambda * d1 : y0;
        const auto fy = eval(y0, y1);
        if (std::hypot(fy[0], fy[1]) < fn) {
          x0 = y0;
          x1 = y1;
          f = fy;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    std::vector<double> th(p, kPi);
    th.front() = x0;
    if (p > 1) th.back() = x1;
    if (infidelity(pr.run(th)) <= tol) return th;
  }
  return std::nullopt;
}

// Rung 3: constructive witness. Pick the distance from the start axis after
// every query inside the reachable intervals, then solve each phase for it.
std::optional<std::vector<double>> witness(const Problem& pr, int p, double tol) {
  const Geometry geo = geometry(pr.c);
  std::vector<Interval> reach{{geo.delta, geo.delta}};
  for (int k = 1; k < p; ++k) reach.push_back(advance(reach.back(), geo.delta));
  if (!reaches(reach.back(), geo.phi)) return std::nullopt;

  std::vector<double> rho(p);
  rho[p - 1] = geo.phi;
  for (int k = p - 2; k >= 0; --k) {
    const double next = rho[k + 1];
    const double lo = std::max(std::abs(geo.delta - next), reach[k].lo);
    const double hi = std::min({geo.delta + next, 2.0 * kPi - geo.delta - next, reach[k].hi});
    rho[k] = lo <= hi ? 0.5 * (lo + hi) : (k == 0 ? geo.delta : reach[k].lo);
  }

  const State s0 = pr.start();
  const Vec3 axis = bloch(s0);
  const Vec3 mirrored{-axis[0], -axis[1], axis[2]};
  const Vec3 north{0.0, 0.0, 1.0};

  std::vector<double> th(p);
  State v = s0;
  for (int k = 0; k < p; ++k) {
    v[0] = -v[0];
    const Vec3 u = bloch(v);
    th[k] = k + 1 < p ? rotation_to_circle(u, axis, mirrored, std::cos(rho[k + 1]))
                      : rotation_to_circle(u, axis, north, 1.0);
    const cplx proj = pr.c * v[0] + pr.s * v[1];
    const cplx kk = (1.0 - std::polar(1.0, -th[k])) * proj;
    v[0] -= kk * pr.c;
    v[1] -= kk * pr.s;
  }
  if (infidelity(pr.run(th)) <= tol) return th;
  return std::nullopt;
}

}  // namespace

double canonical_phase(double theta) {
  double r = std::remainder(theta, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi + 1e-12) r = kPi;
  return r == 0.0 ? 0.0 : r;
}

int query_cap(double c) {
  return static_cast<int>(std::ceil(kPi / (4.0 * std::asin(c)))) + 2;
}

std::optional<int> minimal_query_count(double c, int ceiling) {
  if (!(c > 0.0 && c <= 1.0)) throw ValidationError("overlap must lie in (0, 1]");
  if (c >= 1.0 - 1e-15) return 0;
  const Geometry geo = geometry(c);
  Interval cur{geo.delta, geo.delta};
  for (int p = 1; p <= ceiling; ++p) {
    if (reaches(cur, geo.phi)) return p;
    cur = advance(cur, geo.delta);
  }
  return std::nullopt;
}

PhaseSolution synthesize(double c, double tol) {
  if (!(c > 0.0 && c <= 1.0)) {
    std::ostringstream msg;
    msg << "overlap " << c << " outside (0, 1]";
    throw ValidationError(msg.str());
  }
  PhaseSolution sol;
  sol.overlap = c;
  const Problem pr(c);
  if (infidelity(pr.start()) <= tol) {
    sol.gamma = canonical_phase(-std::arg(pr.start()[0]));
    sol.residual = infidelity(pr.start());
    return sol;
  }

  const auto p_min = minimal_query_count(c);
  if (!p_min) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "no phase sequence reaches the target for overlap " << c << " within " << kMaxQueries
        << " queries";
    throw SolverError(msg.str());
  }

  for (int p = *p_min; p <= *p_min + 2; ++p) {
    std::optional<std::vector<double>> th = all_pi(pr, p, tol);
    if (!th) th = interior_pi(pr, p, tol);
    if (!th) th = witness(pr, p, tol);
    if (!th) continue;

    for (double& t : *th) t = canonical_phase(t);
    const State v = pr.run(*th);
    sol.p = p;
    sol.thetas = std::move(*th);
    sol.residual = infidelity(v);
    sol.gamma = canonical_phase(-std::arg(v[0]));
    if (sol.residual <= tol) return sol;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "synthesis failed for overlap " << c << " (minimal query count " << *p_min << ")";
  throw SolverError(msg.str());
}

Verification verify(const PhaseSolution& sol) {
  const Problem pr(sol.overlap);
  const State v = pr.run(sol.thetas);
  const double mismatch = std::abs(canonical_phase(std::arg(v[0]) + sol.gamma));
  return {infidelity(v), mismatch};
}

}  // namespace qws
