#pragma once
// Exact search in a two-dimensional invariant subspace.
//
// Basis {a = target, b}; start = (c, sqrt(1 - c^2)). One query is
//   O(theta) * R,  R = I - 2|a><a|,  O(theta) = I - (1 - e^{-i theta}) |start><start|
// and a solution satisfies prod_k [O(theta_k) R] start = e^{-i gamma} (1, 0),
// k = 1 rightmost. The physical walk of the search is -R, so a level built
// from this solution picks up an extra p*pi of global phase.

#include <optional>
#include <vector>

namespace qws {

struct PhaseSolution {
  int p = 0;
  std::vector<double> thetas;
  double gamma = 0.0;
  double residual = 0.0;  // 1 - |<a|result>|^2
  double overlap = 1.0;
};

struct Verification {
  double infidelity;
  double phase_mismatch;  // |arg<a|result> + gamma| reduced mod 2 pi into [0, pi]
};

inline constexpr double kDefaultSynthTol = 1e-10;
inline constexpr int kMaxQueries = 100000;

// ceil(pi / (4 asin c)) + 2
int query_cap(double c);

// Least p for which some phase sequence of length p reaches the target,
// nullopt when none exists up to `ceiling` (c = 1/sqrt(2) never does).
std::optional<int> minimal_query_count(double c, int ceiling = kMaxQueries);

// Deterministic. Throws ValidationError for c outside (0, 1] and SolverError
// when no sequence exists or the residual cannot be brought under tol.
PhaseSolution synthesize(double c, double tol = kDefaultSynthTol);

Verification verify(const PhaseSolution& sol);

// Into (-pi, pi]; values within 1e-12 of -pi map to +pi.
double canonical_phase(double theta);

}  // namespace qws
