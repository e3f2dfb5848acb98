#include "qwsearch/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qwsearch/errors.hpp"
#include "qwsearch/reduced_synth.hpp"
#include "qwsearch/synth2d.hpp"

namespace qws {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinLevelWeight = 1e-10;
constexpr double kOracleZero = 1e-14;

Step negated(const Step& st) {
  if (const auto* w = std::get_if<WalkStep>(&st)) {
    WalkStep out{-w->t, std::nullopt};
    if (w->exact) out.exact = -*w->exact;
    return out;
  }
  return OracleStep{-std::get<OracleStep>(st).theta};
}

void append_adjoint(std::vector<Step>& out, const std::vector<Step>& steps) {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.push_back(negated(*it));
}

WalkStep fold_walk(WalkStep w, long long scale) {
  if (scale <= 0) return w;
  if (w.exact) {
    // t/pi = num/den, period 2*scale in units of pi.
    const long long period = 2 * scale * w.exact->den;
    long long r = w.exact->num % period;
    if (r < 0) r += period;
    w.exact = PiRational(r, w.exact->den);
    w.t = w.exact->radians();
  } else {
    const double period = 2.0 * kPi * static_cast<double>(scale);
    w.t = std::fmod(w.t, period);
    if (w.t < 0) w.t += period;
  }
  return w;
}

bool is_identity(const Step& st) {
  if (const auto* w = std::get_if<WalkStep>(&st)) {
    return w->exact ? w->exact->num == 0 : w->t == 0.0;
  }
  return std::abs(std::get<OracleStep>(st).theta) <= kOracleZero;
}

double weight_on(const std::vector<EigenspaceWeight>& profile, const std::vector<long long>& values) {
  double w = 0.0;
  for (const auto& e : profile) {
    if (std::binary_search(values.begin(), values.end(), e.value)) w += e.weight;
  }
  return w;
}

bool two_d_reachable(double c) {
  const auto p = minimal_query_count(c);
  return p && *p <= query_cap(c);
}

}  // namespace

std::string_view to_string(Direction d) noexcept {
  return d == Direction::m_to_s ? "m_to_s" : "s_to_m";
}

Direction parse_direction(std::string_view text) {
  if (text == "m_to_s") return Direction::m_to_s;
  if (text == "s_to_m") return Direction::s_to_m;
  throw ValidationError("unknown direction '" + std::string(text) + "'");
}

WalkStep make_walk(const PiRational& t) { return {t.radians(), t}; }

int oracle_count(const Schedule& sch) {
  return static_cast<int>(std::count_if(sch.steps.begin(), sch.steps.end(), [](const Step& st) {
    return std::holds_alternative<OracleStep>(st);
  }));
}

double total_walk_time(const Schedule& sch) {
  double t = 0.0;
  for (const auto& st : sch.steps) {
    if (const auto* w = std::get_if<WalkStep>(&st)) t += std::abs(w->t);
  }
  return t;
}

Schedule adjoint(const Schedule& sch) {
  Schedule out = sch;
  out.steps.clear();
  append_adjoint(out.steps, sch.steps);
  out.gamma = sch.gamma == 0.0 ? 0.0 : -sch.gamma;
  out.direction = sch.direction == Direction::m_to_s ? Direction::s_to_m : Direction::m_to_s;
  return out;
}

Schedule normalize(const Schedule& sch) {
  Schedule out = sch;
  out.steps.clear();
  auto canon = [&](Step st) -> Step {
    if (auto* w = std::get_if<WalkStep>(&st)) return fold_walk(*w, sch.scale);
    return OracleStep{canonical_phase(std::get<OracleStep>(st).theta)};
  };
  for (const auto& raw : sch.steps) {
    Step st = canon(raw);
    if (!out.steps.empty() && out.steps.back().index() == st.index()) {
      Step& top = out.steps.back();
      if (auto* w = std::get_if<WalkStep>(&top)) {
        const auto& add = std::get<WalkStep>(st);
        WalkStep merged;
        if (w->exact && add.exact) {
          merged = make_walk(*w->exact + *add.exact);
        } else {
          merged.t = w->t + add.t;
        }
        top = canon(merged);
      } else {
        top = canon(OracleStep{std::get<OracleStep>(top).theta + std::get<OracleStep>(st).theta});
      }
      if (is_identity(top)) out.steps.pop_back();
      continue;
    }
    if (!is_identity(st)) out.steps.push_back(st);
  }
  return out;
}

std::vector<LevelPlan> plan_levels(const Spectrum& s, const Cascade& c, int m, double tol) {
  if (m < 0 || m >= s.size()) throw ValidationError("marked vertex " + std::to_string(m) + " out of range");
  const auto profile = vertex_overlap_profile(s, m);

  std::vector<double> weight(c.depth + 1);
  for (int k = 0; k <= c.depth; ++k) {
    weight[k] = weight_on(profile, c.distinct(k));
    const double bar = k >= 1 ? weight_on(profile, c.distinct(k, true)) : 1.0;
    if (weight[k] <= kMinLevelWeight || bar <= kMinLevelWeight) {
      throw InfeasibleError("marked vertex " + std::to_string(m) + " has no weight on cascade level " +
                            std::to_string(k) + (bar <= kMinLevelWeight ? " (bar set)" : ""));
    }
  }
  std::vector<double> overlap(c.depth);
  std::vector<bool> direct(c.depth);
  for (int k = 0; k < c.depth; ++k) {
    overlap[k] = std::sqrt(weight[k + 1] / weight[k]);
    direct[k] = two_d_reachable(overlap[k]);
  }

  std::vector<LevelPlan> plan;
  int k = 0;
  while (k < c.depth) {
    LevelPlan lp;
    lp.from = k;
    const long long g = c.levels[k].gcd;
    if (direct[k]) {
      const PhaseSolution sol = synthesize(overlap[k], tol);
      lp.to = k + 1;
      lp.p = sol.p;
      lp.thetas = sol.thetas;
      lp.gamma = canonical_phase(sol.gamma + sol.p * kPi);
      lp.walk = PiRational(s.scale, g);
      lp.overlap = overlap[k];
      lp.residual = sol.residual;
    } else {
      int j = k + 1;
      while (j < c.depth && !direct[j]) ++j;
      const auto values = c.distinct(k);
      const auto inner = c.distinct(j);
      const Eigen::Index n = static_cast<Eigen::Index>(values.size());
      ReducedProblem pr;
      pr.phases.resize(n);
      pr.start.resize(n);
      pr.target.resize(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const long long v = values[i];
        double w = 0.0;
        for (const auto& e : profile) {
          if (e.value == v) w = e.weight;
        }
        pr.phases(i) = kPi * static_cast<double>(v) / (2.0 * static_cast<double>(g));
        pr.start(i) = std::sqrt(w / weight[k]);
        pr.target(i) = std::binary_search(inner.begin(), inner.end(), v) ? std::sqrt(w / weight[j]) : 0.0;
      }
      pr.start.normalize();
      pr.target.normalize();
      pr.axis = pr.start;
      const ReducedSolution sol = solve_reduced(pr, tol);
      lp.to = j;
      lp.reduced = true;
      lp.p = sol.p;
      lp.thetas = sol.thetas;
      lp.gamma = sol.gamma;
      lp.walk = PiRational(s.scale, 2 * g);
      lp.overlap = std::sqrt(weight[j] / weight[k]);
      lp.residual = sol.residual;
    }
    k = lp.to;
    plan.push_back(std::move(lp));
  }
  return plan;
}

ReverseBuild build_reverse(const Spectrum& s, const Cascade& c, int m, double tol) {
  ReverseBuild out;
  out.levels = plan_levels(s, c, m, tol);

  std::vector<Step> a;
  long long count = 0;
  double gamma = 0.0;
  for (const auto& lp : out.levels) {
    std::vector<Step> next = a;
    for (double th : lp.thetas) {
      next.push_back(make_walk(lp.walk));
      append_adjoint(next, a);
      next.push_back(OracleStep{th});
      next.insert(next.end(), a.begin(), a.end());
    }
    const long long expected = lp.p * (2 * count + 1) + count;
    const long long got = std::count_if(next.begin(), next.end(), [](const Step& st) {
      return std::holds_alternative<OracleStep>(st);
    });
    if (got != expected) {
      std::ostringstream msg;
      msg << "flattening produced " << got << " oracle steps at hop " << lp.from << "->" << lp.to
          << ", expected " << expected;
      throw SolverError(msg.str());
    }
    count = expected;
    out.cumulative_oracles.push_back(static_cast<int>(count));
    gamma += lp.gamma;
    a = std::move(next);
  }

  Schedule& sch = out.schedule;
  sch.direction = Direction::m_to_s;
  sch.hamiltonian = s.kind;
  sch.gamma = canonical_phase(gamma);
  sch.steps = std::move(a);
  sch.scale = s.scale;
  sch.n_vertices = s.size();
  return out;
}

Schedule build_reverse_schedule(const Spectrum& s, const Cascade& c, int m, double tol) {
  return build_reverse(s, c, m, tol).schedule;
}

Schedule build_search_schedule(const Spectrum& s, const Cascade& c, int m, double tol) {
  return normalize(adjoint(build_reverse_schedule(s, c, m, tol)));
}

double oracle_cap(int depth, int n) { return std::pow(4.0, depth) * std::sqrt(static_cast<double>(n)); }

double reference_bound(int depth, int n) {
  return std::pow(2.0, depth - 1) * std::sqrt(static_cast<double>(n));
}

Schedule build_bipartite_schedule(int n1, int n2, int side, double tol) {
  if (n1 < 1 || n2 < 1) throw ValidationError("complete_bipartite(N1,N2) requires N1, N2 >= 1");
  if (side != 1 && side != 2) throw ValidationError("side must be 1 or 2");

  Schedule sch;
  sch.direction = Direction::s_to_m;
  sch.hamiltonian = HamiltonianKind::adjacency;
  sch.scale = 0;
  sch.n_vertices = n1 + n2;
  sch.family = "bipartite(" + std::to_string(n1) + "," + std::to_string(n2) + ")";

  const int ns = side == 1 ? n1 : n2;
  const long long prod = static_cast<long long>(n1) * n2;
  const double root = std::sqrt(static_cast<double>(prod));
  const long long iroot = std::llround(root);
  const bool square = iroot * iroot == prod;
  auto walk = [&](long long den_factor) {
    WalkStep w{kPi / (static_cast<double>(den_factor) * root), std::nullopt};
    if (square) w.exact = PiRational(1, den_factor * iroot);
    return w;
  };
  if (ns == 1) return sch;

  const double c = 1.0 / std::sqrt(static_cast<double>(ns));
  if (two_d_reachable(c)) {
    // The walk is the reflection about the side's uniform state; synthesize
    // m -> s and reverse it. The walk is an involution, so its time is kept.
    const PhaseSolution sol = synthesize(c, tol);
    for (auto it = sol.thetas.rbegin(); it != sol.thetas.rend(); ++it) {
      sch.steps.push_back(OracleStep{canonical_phase(-*it)});
      sch.steps.push_back(walk(1));
    }
    sch.gamma = sol.gamma == 0.0 ? 0.0 : canonical_phase(-sol.gamma);
    return sch;
  }

  // Basis: adjacency eigenvectors for -sqrt(N1N2), 0, +sqrt(N1N2) restricted to span{m, s1, s2}.
  const double a = 1.0 / std::sqrt(2.0 * ns);
  ReducedProblem pr;
  pr.phases = Eigen::Vector3d(-kPi / 2, 0.0, kPi / 2);
  pr.start = Eigen::Vector3d(1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0));
  pr.target = Eigen::Vector3d(a, std::sqrt(1.0 - 1.0 / ns), a);
  pr.axis = pr.target;
  pr.oracle_first = true;
  const ReducedSolution sol = solve_reduced(pr, tol);
  for (double th : sol.thetas) {
    sch.steps.push_back(OracleStep{th});
    sch.steps.push_back(walk(2));
  }
  sch.gamma = sol.gamma;
  return sch;
}

}  // namespace qws
