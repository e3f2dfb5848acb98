#pragma once
// Phase search in a small diagonal-walk subspace, for hops the
// two-dimensional construction cannot make within its query budget.
//
// Basis vectors are walk eigenvectors: one walk multiplies amplitude i by
// e^{-i phases(i)}. One query is a walk followed by
// O(theta) = I - (1 - e^{-i theta}) |axis><axis| (oracle first when
// oracle_first is set). A solution maps start to e^{-i gamma} target.

#include <Eigen/Dense>
#include <vector>

namespace qws {

struct ReducedProblem {
  Eigen::VectorXd phases;
  Eigen::VectorXd axis;
  Eigen::VectorXd start;
  Eigen::VectorXd target;
  bool oracle_first = false;
};

struct ReducedSolution {
  int p = 0;
  std::vector<double> thetas;
  double gamma = 0.0;
  double residual = 0.0;  // 1 - |<target|result>|^2
};

inline constexpr int kReducedMaxQueries = 48;

// Deterministic multi-start Levenberg-Marquardt over increasing p.
// Throws SolverError when nothing up to max_p reaches tol.
ReducedSolution solve_reduced(const ReducedProblem& problem, double tol = 1e-10,
                              int max_p = kReducedMaxQueries);

// Infidelity of a phase sequence, recomputed from scratch.
double reduced_infidelity(const ReducedProblem& problem, const std::vector<double>& thetas);

}  // namespace qws
