#pragma once
// Alternating walk/oracle schedules: the recursive cascade construction, its
// adjoint (the search itself), normalization, and the complete bipartite case.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qwsearch/cascade.hpp"
#include "qwsearch/spectral.hpp"

namespace qws {

enum class Direction { m_to_s, s_to_m };

std::string_view to_string(Direction d) noexcept;
Direction parse_direction(std::string_view text);

// e^{-iHt}; t is in units of the raw (unscaled) Hamiltonian.
struct WalkStep {
  double t = 0.0;
  std::optional<PiRational> exact;  // t = exact * pi when known
};

// e^{-i theta |m><m|}
struct OracleStep {
  double theta = 0.0;
};

using Step = std::variant<WalkStep, OracleStep>;

WalkStep make_walk(const PiRational& t);

struct Schedule {
  Direction direction = Direction::m_to_s;
  HamiltonianKind hamiltonian = HamiltonianKind::laplacian;
  double gamma = 0.0;
  std::vector<Step> steps;
  // Walks are periodic with period 2 pi * scale; 0 means no known period.
  long long scale = 1;
  std::string family;
  int n_vertices = 0;
};

int oracle_count(const Schedule& sch);
double total_walk_time(const Schedule& sch);

Schedule adjoint(const Schedule& sch);

// Merges neighbouring steps of the same kind, folds walk times into
// [0, period), reduces oracle phases into (-pi, pi], drops identity steps.
Schedule normalize(const Schedule& sch);

// One hop w_from -> w_to of the construction.
struct LevelPlan {
  int from = 0;
  int to = 1;
  bool reduced = false;  // solved in the eigenvalue-class subspace
  int p = 0;
  std::vector<double> thetas;
  double gamma = 0.0;    // the hop sends w_from to e^{-i gamma} w_to
  PiRational walk;       // time of every walk in the hop, raw units
  double overlap = 1.0;  // <w_from|w_to>
  double residual = 0.0;
};

// Chooses the hops for marked vertex m. Levels whose two-dimensional query
// count would exceed query_cap are merged with their successors into one
// reduced hop. Throws InfeasibleError when m has no weight on some level.
std::vector<LevelPlan> plan_levels(const Spectrum& s, const Cascade& c, int m,
                                   double tol = 1e-10);

struct ReverseBuild {
  Schedule schedule;                  // m_to_s, raw recursion output
  std::vector<LevelPlan> levels;
  std::vector<int> cumulative_oracles;  // oracle count after each hop
};

// |m> -> e^{-i gamma}|w_depth>. Throws InfeasibleError / SolverError.
ReverseBuild build_reverse(const Spectrum& s, const Cascade& c, int m, double tol = 1e-10);
Schedule build_reverse_schedule(const Spectrum& s, const Cascade& c, int m, double tol = 1e-10);

// normalize(adjoint(reverse)): |s> -> |m>.
Schedule build_search_schedule(const Spectrum& s, const Cascade& c, int m, double tol = 1e-10);

// Asserted cap 4^depth sqrt(N) and the 2^(depth-1) sqrt(N) reference figure.
double oracle_cap(int depth, int n);
double reference_bound(int depth, int n);

// Adjacency-walk search on K(n1, n2) starting from the uniform state of the
// chosen side (1 or 2), for a marked vertex in that side.
Schedule build_bipartite_schedule(int n1, int n2, int side, double tol = 1e-10);

}  // namespace qws
