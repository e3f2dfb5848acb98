#pragma once
// Dense statevector engine. Walks go through the eigenbasis:
// psi -> V diag(e^{-i lambda t}) V^T psi.

#include <Eigen/Dense>
#include <vector>

#include "qwsearch/schedule.hpp"
#include "qwsearch/spectral.hpp"

namespace qws {

using StateVector = Eigen::VectorXcd;

StateVector uniform_state(int n);
StateVector basis_state(int n, int v);
StateVector uniform_over(const std::vector<int>& part, int n);

StateVector apply_walk(const Spectrum& s, double t, const StateVector& psi);
StateVector apply_oracle(int m, double theta, const StateVector& psi);

struct SearchReport {
  double success_probability = 0.0;
  int oracle_queries = 0;
  double total_walk_time = 0.0;
  double final_fidelity_phase = 0.0;  // arg <target|psi>
  double norm_drift = 0.0;
};

struct RunResult {
  StateVector state;
  SearchReport report;
};

// Applies the steps first to last. Success is measured against |m> for
// s_to_m schedules and against `target` (default: uniform state) for m_to_s.
RunResult run(const Schedule& sch, const Spectrum& s, int m, const StateVector& initial,
              const StateVector* target = nullptr);

// Both sides of K(n1, n2) in turn, each from its own uniform state.
struct BipartiteSearch {
  SearchReport side1;
  SearchReport side2;
  int marked_side = 1;
  int oracle_total = 0;
  double success_probability = 0.0;  // of the run on the side holding m
};

BipartiteSearch bipartite_search(int n1, int n2, int m, double tol = 1e-10);

}  // namespace qws
