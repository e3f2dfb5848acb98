#include "qwsearch/simulate.hpp"

#include <cmath>
#include <complex>

#include "qwsearch/errors.hpp"
#include "qwsearch/graph.hpp"
#include "qwsearch/kernels.hpp"

namespace qws {

using cplx = std::complex<double>;

StateVector uniform_state(int n) {
  if (n < 1) throw ValidationError("state size must be positive");
  return StateVector::Constant(n, cplx(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
}

StateVector basis_state(int n, int v) {
  if (n < 1) throw ValidationError("state size must be positive");
  if (v < 0 || v >= n) throw ValidationError("vertex " + std::to_string(v) + " out of range");
  StateVector e = StateVector::Zero(n);
  e(v) = 1.0;
  return e;
}

StateVector uniform_over(const std::vector<int>& part, int n) {
  if (part.empty()) throw ValidationError("uniform_over needs a nonempty vertex set");
  StateVector psi = StateVector::Zero(n);
  const double a = 1.0 / std::sqrt(static_cast<double>(part.size()));
  for (int v : part) {
    if (v < 0 || v >= n) throw ValidationError("vertex " + std::to_string(v) + " out of range");
    if (psi(v) != cplx(0.0)) throw ValidationError("uniform_over got a repeated vertex");
    psi(v) = a;
  }
  return psi;
}

StateVector apply_walk(const Spectrum& s, double t, const StateVector& psi) {
  const int n = s.size();
  if (psi.size() != n) throw ValidationError("state size does not match the spectrum");
  const auto& k = kernels::active();
  const auto& v = s.basis.vectors;
  const auto& lambda = s.basis.values;

  StateVector y(n);
  StateVector phase(n);
  for (int j = 0; j < n; ++j) {
    y(j) = k.rc_dot(n, v.col(j).data(), psi.data());
    phase(j) = std::polar(1.0, -lambda(j) * t);
  }
  k.c_mul(n, phase.data(), y.data());
  StateVector out = StateVector::Zero(n);
  for (int j = 0; j < n; ++j) k.rc_axpy(n, v.col(j).data(), y(j), out.data());
  return out;
}

StateVector apply_oracle(int m, double theta, const StateVector& psi) {
  if (m < 0 || m >= psi.size()) throw ValidationError("vertex " + std::to_string(m) + " out of range");
  StateVector out = psi;
  out(m) *= std::polar(1.0, -theta);
  return out;
}

RunResult run(const Schedule& sch, const Spectrum& s, int m, const StateVector& initial,
              const StateVector* target) {
  const int n = s.size();
  if (sch.hamiltonian != s.kind) throw ValidationError("schedule and spectrum use different Hamiltonians");
  if (initial.size() != n) throw ValidationError("initial state size does not match the spectrum");
  if (sch.n_vertices != 0 && sch.n_vertices != n) {
    throw ValidationError("schedule was built for " + std::to_string(sch.n_vertices) + " vertices");
  }
  if (m < 0 || m >= n) throw ValidationError("marked vertex " + std::to_string(m) + " out of range");

  RunResult r;
  r.state = initial;
  for (const auto& st : sch.steps) {
    if (const auto* w = std::get_if<WalkStep>(&st)) {
      r.state = apply_walk(s, w->t, r.state);
    } else {
      r.state = apply_oracle(m, std::get<OracleStep>(st).theta, r.state);
    }
  }

  StateVector goal;
  if (target) {
    goal = *target;
  } else if (sch.direction == Direction::s_to_m) {
    goal = basis_state(n, m);
  } else {
    goal = uniform_state(n);
  }
  if (goal.size() != n) throw ValidationError("target state size does not match the spectrum");
  const cplx amp = goal.dot(r.state);
  const double norm2 = kernels::active().c_norm2(n, r.state.data());
  r.report.success_probability = std::norm(amp);
  r.report.oracle_queries = oracle_count(sch);
  r.report.total_walk_time = total_walk_time(sch);
  r.report.final_fidelity_phase = std::arg(amp);
  r.report.norm_drift = std::abs(std::sqrt(norm2) - 1.0);
  return r;
}

BipartiteSearch bipartite_search(int n1, int n2, int m, double tol) {
  const Graph g = Graph::complete_bipartite(n1, n2);
  if (m < 0 || m >= g.size()) throw ValidationError("marked vertex " + std::to_string(m) + " out of range");
  const Spectrum s = unsnapped(g.adjacency(), HamiltonianKind::adjacency);
  const auto& part = *g.bipartition();

  BipartiteSearch out;
  out.marked_side = m < n1 ? 1 : 2;
  const Schedule sch1 = build_bipartite_schedule(n1, n2, 1, tol);
  const Schedule sch2 = build_bipartite_schedule(n1, n2, 2, tol);
  out.side1 = run(sch1, s, m, uniform_over(part.first, g.size())).report;
  out.side2 = run(sch2, s, m, uniform_over(part.second, g.size())).report;
  out.oracle_total = out.side1.oracle_queries + out.side2.oracle_queries;
  out.success_probability =
      out.marked_side == 1 ? out.side1.success_probability : out.side2.success_probability;
  return out;
}

}  // namespace qws
