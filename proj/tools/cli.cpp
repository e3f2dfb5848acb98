#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <thread>
#include <variant>

#include "qwsearch/cascade.hpp"
#include "qwsearch/errors.hpp"
#include "qwsearch/graph.hpp"
#include "qwsearch/kernels.hpp"
#include "qwsearch/schedule.hpp"
#include "qwsearch/schedule_io.hpp"
#include "qwsearch/simulate.hpp"
#include "qwsearch/spectral.hpp"
#include "qwsearch/synth2d.hpp"

namespace qws::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kSweepMaxVertices = 5000;

struct Settings {
  double tol = 1e-8;
  double synth_tol = 1e-10;
  int indent = 2;
  std::string isa;
};

struct GraphArgs {
  std::string family;
  int n = -1, k = -1, m = -1, n1 = -1, n2 = -1;
  std::string edges;
};

void add_graph_options(CLI::App* sub, GraphArgs& g) {
  sub->add_option("--family", g.family, "johnson | rook | complete_square | bipartite | complete");
  sub->add_option("--n", g.n, "n parameter");
  sub->add_option("--k", g.k, "k parameter (johnson)");
  sub->add_option("--m", g.m, "m parameter (rook)");
  sub->add_option("--n1", g.n1, "first part size (bipartite)");
  sub->add_option("--n2", g.n2, "second part size (bipartite)");
  sub->add_option("--edges", g.edges, "edge-list file");
}

int need(int value, const char* flag, const std::string& family) {
  if (value < 0) throw ValidationError(family + " needs " + flag);
  return value;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph make_graph(const GraphArgs& g) {
  if (!g.edges.empty()) {
    if (!g.family.empty()) throw ValidationError("--edges and --family are exclusive");
    return Graph::from_edge_list(read_file(g.edges));
  }
  const auto& f = g.family;
  if (f == "johnson") return Graph::johnson(need(g.n, "--n", f), need(g.k, "--k", f));
  if (f == "rook") return Graph::rook(need(g.m, "--m", f), need(g.n, "--n", f));
  if (f == "complete_square") return Graph::complete_square(need(g.n, "--n", f));
  if (f == "complete") return Graph::complete(need(g.n, "--n", f));
  if (f == "bipartite") return Graph::complete_bipartite(need(g.n1, "--n1", f), need(g.n2, "--n2", f));
  if (f.empty()) throw ValidationError("give --family or --edges");
  throw ValidationError("unknown family '" + f + "'");
}

int side_of(const Graph& g, int m) {
  if (m < 0 || m >= g.size()) throw ValidationError("marked vertex " + std::to_string(m) + " out of range");
  return m < static_cast<int>(g.bipartition()->first.size()) ? 1 : 2;
}

bool is_bipartite_family(const Graph& g) { return g.family().kind == Family::complete_bipartite; }

ordered_json report_json(const SearchReport& r) {
  ordered_json j;
  j["success_probability"] = r.success_probability;
  j["oracle_queries"] = r.oracle_queries;
  j["total_walk_time"] = r.total_walk_time;
  j["final_fidelity_phase"] = r.final_fidelity_phase;
  j["norm_drift"] = r.norm_drift;
  return j;
}

// ---- spectrum ----

int cmd_spectrum(const GraphArgs& ga, const std::string& hamiltonian, const Settings& st,
                 std::ostream& out) {
  const Graph g = make_graph(ga);
  const auto kind = parse_hamiltonian(hamiltonian);
  const auto h = kind == HamiltonianKind::laplacian ? g.laplacian() : g.adjacency();
  const Spectrum s = decompose(h, kind);
  ordered_json j;
  j["scale"] = s.scale;
  j["eigenvalues"] = ordered_json::array();
  for (const auto& e : s.spaces) {
    j["eigenvalues"].push_back({{"value", e.value}, {"multiplicity", e.indices.size()}});
  }
  out << j.dump(st.indent) << "\n";
  return kOk;
}

// ---- cascade ----

int cmd_cascade(const GraphArgs& ga, const Settings& st, std::ostream& out) {
  const Graph g = make_graph(ga);
  const Spectrum s = decompose(g.laplacian(), HamiltonianKind::laplacian);
  const Cascade c = build_cascade(s.eigenvalues);
  const EquitableReport rep = check_equitable(s, c, st.tol);

  ordered_json j;
  j["graph"] = g.family().describe();
  j["N"] = g.size();
  j["d_L"] = c.depth;
  j["levels"] = ordered_json::array();
  for (int k = 0; k <= c.depth; ++k) {
    ordered_json l;
    l["k"] = k;
    l["lambda"] = c.levels[k].lambda;
    if (k >= 1) l["lambda_bar"] = c.complements[k - 1];
    l["gcd"] = c.levels[k].gcd;
    l["walk_time"] = c.levels[k].walk_time.to_string();
    j["levels"].push_back(std::move(l));
  }
  j["overlaps"] = c.overlaps;
  ordered_json e;
  e["passed"] = rep.passed;
  e["worst_deviation"] = rep.worst_deviation;
  e["worst_vertex"] = rep.worst_vertex;
  e["worst_level"] = rep.worst_level;
  e["zero_weight"] = ordered_json::array();
  for (const auto& v : rep.zero_weight) {
    e["zero_weight"].push_back({{"vertex", v.vertex}, {"level", v.level}, {"bar", v.complement}});
  }
  j["equitable"] = std::move(e);
  out << j.dump(st.indent) << "\n";
  return rep.passed ? kOk : kInfeasible;
}

// ---- synthesize ----

int cmd_synthesize_overlap(double c, const Settings& st, std::ostream& out) {
  const PhaseSolution sol = synthesize(c, st.synth_tol);
  ordered_json j;
  j["overlap"] = sol.overlap;
  j["p"] = sol.p;
  j["thetas"] = sol.thetas;
  j["gamma"] = sol.gamma;
  j["residual"] = sol.residual;
  out << j.dump(st.indent) << "\n";
  return kOk;
}

int cmd_synthesize(const GraphArgs& ga, int m, int side, bool raw, const Settings& st,
                   std::ostream& out) {
  const Graph g = make_graph(ga);
  if (m < 0 || m >= g.size()) throw ValidationError("marked vertex " + std::to_string(m) + " out of range");

  Schedule sch;
  double success = 1.0;
  if (is_bipartite_family(g)) {
    const int n1 = g.family().params[0], n2 = g.family().params[1];
    if (side == 0) side = side_of(g, m);
    sch = build_bipartite_schedule(n1, n2, side, st.synth_tol);
    if (side == side_of(g, m)) {
      const Spectrum s = unsnapped(g.adjacency(), HamiltonianKind::adjacency);
      const auto& part = side == 1 ? g.bipartition()->first : g.bipartition()->second;
      success = run(sch, s, m, uniform_over(part, g.size())).report.success_probability;
    }
  } else {
    if (side != 0) throw ValidationError("--side applies to the bipartite family only");
    const Spectrum s = decompose(g.laplacian(), HamiltonianKind::laplacian);
    const Cascade c = build_cascade(s.eigenvalues);
    const Schedule reverse = build_reverse_schedule(s, c, m, st.synth_tol);
    sch = raw ? reverse : normalize(adjoint(reverse));
    sch.family = g.family().describe();
    success = raw ? run(sch, s, m, basis_state(g.size(), m)).report.success_probability
                  : run(sch, s, m, uniform_state(g.size())).report.success_probability;
  }
  if (success < 1.0 - st.tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "schedule verification failed: success probability " << success;
    throw SolverError(msg.str());
  }
  out << schedule_to_json(sch, st.indent) << "\n";
  return kOk;
}

// ---- simulate ----

int cmd_simulate(const GraphArgs& ga, int m, int side, const std::string& path, const Settings& st,
                 std::ostream& out) {
  const Graph g = make_graph(ga);
  if (m < 0 || m >= g.size()) throw ValidationError("marked vertex " + std::to_string(m) + " out of range");
  Schedule sch = schedule_from_json(read_file(path));

  Spectrum s;
  if (sch.hamiltonian == HamiltonianKind::laplacian) {
    s = decompose(g.laplacian(), HamiltonianKind::laplacian);
  } else {
    s = unsnapped(g.adjacency(), HamiltonianKind::adjacency);
  }
  sch.scale = s.scale;

  RunResult r;
  if (sch.direction == Direction::m_to_s) {
    r = run(sch, s, m, basis_state(g.size(), m));
  } else if (sch.hamiltonian == HamiltonianKind::adjacency && g.bipartition()) {
    if (side == 0) side = side_of(g, m);
    const auto& part = side == 1 ? g.bipartition()->first : g.bipartition()->second;
    r = run(sch, s, m, uniform_over(part, g.size()));
  } else {
    r = run(sch, s, m, uniform_state(g.size()));
  }
  out << report_json(r.report).dump(st.indent) << "\n";
  return kOk;
}

// ---- sweep ----

struct SweepArgs {
  std::string family;
  int k = 2;
  int m = -1;
  int n1 = -1;
  int from = 0;
  int to = 0;
  int step = 1;
  int factor = 0;
  std::string out;
};

struct Instance {
  std::string family;
  std::string params;
  std::function<Graph()> graph;
  std::optional<std::pair<int, int>> bipartite;
  long long size = 0;
};

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= std::min(k, n - k); ++i) {
    r = r * (n - i + 1) / i;
    if (r > kSweepMaxVertices) return r;
  }
  return r;
}

std::vector<Instance> sweep_instances(const SweepArgs& a) {
  if (a.from < 1 || a.to < a.from) throw ValidationError("sweep range needs 1 <= --from <= --to");
  if (a.factor == 1 || a.factor < 0 || (a.factor == 0 && a.step < 1)) {
    throw ValidationError("sweep needs --step >= 1 or --factor >= 2");
  }
  std::vector<int> values;
  for (long long v = a.from; v <= a.to; v = a.factor ? v * a.factor : v + a.step) {
    values.push_back(static_cast<int>(v));
  }

  std::vector<Instance> out;
  for (int v : values) {
    Instance in;
    in.family = a.family;
    if (a.family == "johnson") {
      const int k = a.k;
      in.params = "n=" + std::to_string(v) + " k=" + std::to_string(k);
      in.graph = [v, k] { return Graph::johnson(v, k); };
      in.size = binomial(v, k);
    } else if (a.family == "rook") {
      const int m = a.m < 0 ? v : a.m;
      in.params = "m=" + std::to_string(m) + " n=" + std::to_string(v);
      in.graph = [m, v] { return Graph::rook(m, v); };
      in.size = static_cast<long long>(m) * v;
    } else if (a.family == "complete_square") {
      in.params = "n=" + std::to_string(v);
      in.graph = [v] { return Graph::complete_square(v); };
      in.size = 4LL * v;
    } else if (a.family == "complete") {
      in.params = "n=" + std::to_string(v);
      in.graph = [v] { return Graph::complete(v); };
      in.size = v;
    } else if (a.family == "bipartite") {
      const int n1 = a.n1 < 0 ? v : a.n1;
      in.params = "n1=" + std::to_string(n1) + " n2=" + std::to_string(v);
      in.bipartite = std::make_pair(n1, v);
      in.graph = [n1, v] { return Graph::complete_bipartite(n1, v); };
      in.size = static_cast<long long>(n1) + v;
    } else {
      throw ValidationError("unknown sweep family '" + a.family + "'");
    }
    if (in.size > kSweepMaxVertices) {
      throw ValidationError("sweep instance " + in.params + " exceeds N = 5000");
    }
    out.push_back(std::move(in));
  }
  return out;
}

struct Evaluation {
  SweepRow row;
  Schedule schedule;  // empty for bipartite rows
};

Evaluation evaluate(const Instance& in, int marked, const Settings& st) {
  const auto t0 = std::chrono::steady_clock::now();
  Evaluation ev;
  SweepRow& row = ev.row;
  row.family = in.family;
  row.params = in.params;
  if (in.bipartite) {
    const auto [n1, n2] = *in.bipartite;
    row.n = n1 + n2;
    if (row.n > kSweepMaxVertices) throw ValidationError("sweep instance exceeds N = 5000");
    const BipartiteSearch b = bipartite_search(n1, n2, marked, st.synth_tol);
    row.depth = 1;
    row.oracle_queries = b.oracle_total;
    row.success_probability = b.success_probability;
  } else {
    const Graph g = in.graph();
    row.n = g.size();
    if (row.n > kSweepMaxVertices) throw ValidationError("sweep instance exceeds N = 5000");
    const Spectrum s = decompose(g.laplacian(), HamiltonianKind::laplacian);
    const Cascade c = build_cascade(s.eigenvalues);
    ev.schedule = build_search_schedule(s, c, marked, st.synth_tol);
    row.depth = c.depth;
    row.oracle_queries = oracle_count(ev.schedule);
    row.success_probability = run(ev.schedule, s, marked, uniform_state(g.size())).report.success_probability;
  }
  row.reference_bound = reference_bound(row.depth, row.n);
  row.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return ev;
}

bool same_structure(const Schedule& a, const Schedule& b) {
  if (a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    if (a.steps[i].index() != b.steps[i].index()) return false;
    const auto* wa = std::get_if<WalkStep>(&a.steps[i]);
    const auto* wb = std::get_if<WalkStep>(&b.steps[i]);
    if (wa && wa->t != wb->t) return false;
  }
  return true;
}

int worker_count() {
  const char* env = std::getenv("QWS_WORKERS");
  if (!env) return 1;
  const int w = std::atoi(env);
  if (w < 1) throw ValidationError("QWS_WORKERS must be a positive integer");
  return w;
}

int exit_code_for(const std::exception_ptr& e, std::ostream& err) {
  try {
    std::rethrow_exception(e);
  } catch (const ValidationError& x) {
    err << "error: " << x.what() << "\n";
    return kValidation;
  } catch (const InfeasibleError& x) {
    err << "infeasible: " << x.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& x) {
    err << "solver failure: " << x.what() << "\n";
    return kSolver;
  }
}

int cmd_sweep(const SweepArgs& a, const Settings& st, std::ostream& out, std::ostream& err) {
  const auto instances = sweep_instances(a);
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw ValidationError("cannot write '" + a.out + "'");
  }
  std::ostream& csv = a.out.empty() ? out : file;
  std::ostream& summary_out = a.out.empty() ? err : out;
  csv << csv_header() << "\n" << std::flush;

  // Workers fill slots; rows are written in parameter order.
  using Slot = std::variant<std::monostate, SweepRow, std::exception_ptr>;
  std::vector<Slot> slots(instances.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  auto work = [&] {
    for (std::size_t i; !stop && (i = next++) < instances.size();) {
      Slot result;
      try {
        result = evaluate(instances[i], 0, st).row;
      } catch (...) {
        result = std::current_exception();
      }
      {
        std::lock_guard<std::mutex> lock(mu);
        slots[i] = std::move(result);
      }
      cv.notify_all();
    }
  };
  const int workers = std::min<int>(worker_count(), static_cast<int>(instances.size()));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);

  std::vector<SweepRow> rows;
  std::exception_ptr failure;
  for (std::size_t i = 0; i < instances.size() && !failure; ++i) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return !std::holds_alternative<std::monostate>(slots[i]); });
    if (auto* row = std::get_if<SweepRow>(&slots[i])) {
      csv << to_csv(*row) << "\n" << std::flush;
      rows.push_back(*row);
    } else {
      failure = std::get<std::exception_ptr>(slots[i]);
      stop = true;
    }
  }
  for (auto& t : pool) t.join();
  if (failure) return exit_code_for(failure, err);

  // Marked-vertex spot check at the smallest size.
  ordered_json spot;
  bool spot_ok = true;
  {
    const Instance& first = instances.front();
    const Evaluation base = evaluate(first, 0, st);
    std::mt19937_64 rng(20240601);
    std::vector<int> picked;
    for (int i = 0; i < 5; ++i) {
      const int v = static_cast<int>(rng() % static_cast<std::uint64_t>(base.row.n));
      const Evaluation ev = evaluate(first, v, st);
      const bool ok = ev.row.success_probability >= 1.0 - st.tol &&
                      ev.row.oracle_queries == base.row.oracle_queries &&
                      (first.bipartite || same_structure(ev.schedule, base.schedule));
      spot_ok = spot_ok && ok;
      picked.push_back(v);
    }
    spot["instance"] = first.params;
    spot["vertices"] = picked;
    spot["passed"] = spot_ok;
  }

  bool rows_ok = true;
  for (const auto& r : rows) rows_ok = rows_ok && r.success_probability >= 1.0 - st.tol;

  ordered_json summary;
  summary["family"] = a.family;
  summary["rows"] = rows.size();
  if (rows.size() >= 2) {
    summary["slope"] = loglog_slope(rows);
  } else {
    summary["slope"] = nullptr;
  }
  summary["all_succeeded"] = rows_ok;
  summary["spot_check"] = std::move(spot);
  summary_out << summary.dump(st.indent) << "\n";
  return rows_ok && spot_ok ? kOk : kSolver;
}

}  // namespace

std::string csv_header() {
  return "family,params,N,d_L,oracle_queries,paper_bound,success_probability,wall_time_ms";
}

std::string to_csv(const SweepRow& r) {
  std::ostringstream s;
  s.precision(17);
  s << r.family << ',' << r.params << ',' << r.n << ',' << r.depth << ',' << r.oracle_queries << ','
    << r.reference_bound << ',' << r.success_probability << ',';
  s.precision(6);
  s << r.wall_time_ms;
  return s.str();
}

double loglog_slope(const std::vector<SweepRow>& rows) {
  if (rows.size() < 2) throw ValidationError("slope needs at least two rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.n));
    const double y = std::log(static_cast<double>(std::max(1, r.oracle_queries)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw ValidationError("slope needs at least two distinct N");
  return (n * sxy - sx * sy) / den;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deterministic quantum spatial search schedules"};
  app.require_subcommand(1);
  Settings st;
  app.add_option("--tol", st.tol, "acceptance tolerance on success probability")->capture_default_str();
  app.add_option("--synth-tol", st.synth_tol, "phase synthesis tolerance")->capture_default_str();
  app.add_option("--json-indent", st.indent, "JSON indent (0 for one line)")->capture_default_str();
  app.fallthrough();
  app.add_option("--isa", st.isa, "kernel set: scalar | avx2");

  GraphArgs g_spectrum, g_casc, g_syn, g_sim;
  std::string hamiltonian = "laplacian";
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalue multiset as JSON");
  add_graph_options(spectrum, g_spectrum);
  spectrum->add_option("--hamiltonian", hamiltonian, "laplacian | adjacency")->capture_default_str();

  auto* cascade = app.add_subcommand("cascade", "gcd cascade and equitable check as JSON");
  add_graph_options(cascade, g_casc);

  int marked = 0;
  int side = 0;
  bool raw = false;
  std::optional<double> overlap;
  auto* synth = app.add_subcommand("synthesize", "search schedule (or 2-D phases) as JSON");
  add_graph_options(synth, g_syn);
  synth->add_option("--marked", marked, "marked vertex")->capture_default_str();
  synth->add_option("--side", side, "bipartite side holding the marked vertex (1 or 2)");
  synth->add_flag("--raw", raw, "emit the unnormalized m_to_s construction");
  synth->add_option("--overlap", overlap, "solve the 2-D problem for this overlap only");

  std::string schedule_path;
  auto* sim = app.add_subcommand("simulate", "run a schedule, report as JSON");
  add_graph_options(sim, g_sim);
  sim->add_option("--marked", marked, "marked vertex")->capture_default_str();
  sim->add_option("--side", side, "bipartite side of the initial state");
  sim->add_option("--schedule", schedule_path, "schedule JSON file, - for stdin")->required();

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "scaling sweep as CSV plus fitted slope");
  sweep->add_option("--family", sw.family, "johnson | rook | complete_square | complete | bipartite")
      ->required();
  sweep->add_option("--k", sw.k, "johnson k")->capture_default_str();
  sweep->add_option("--m", sw.m, "rook rows (default: square boards)");
  sweep->add_option("--n1", sw.n1, "fixed first part (default: N1 = N2)");
  sweep->add_option("--from", sw.from, "first parameter value")->required();
  sweep->add_option("--to", sw.to, "last parameter value")->required();
  sweep->add_option("--step", sw.step, "additive step")->capture_default_str();
  sweep->add_option("--factor", sw.factor, "multiplicative step (overrides --step)");
  sweep->add_option("--out", sw.out, "CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }
  if (st.indent <= 0) st.indent = -1;

  try {
    if (!st.isa.empty()) {
      if (st.isa == "scalar") {
        kernels::set_active(kernels::Isa::scalar);
      } else if (st.isa == "avx2") {
        kernels::set_active(kernels::Isa::avx2);
      } else {
        throw ValidationError("unknown --isa '" + st.isa + "'");
      }
    }
    if (spectrum->parsed()) return cmd_spectrum(g_spectrum, hamiltonian, st, out);
    if (cascade->parsed()) return cmd_cascade(g_casc, st, out);
    if (synth->parsed()) {
      if (overlap) return cmd_synthesize_overlap(*overlap, st, out);
      return cmd_synthesize(g_syn, marked, side, raw, st, out);
    }
    if (sim->parsed()) return cmd_simulate(g_sim, marked, side, schedule_path, st, out);
    if (sweep->parsed()) return cmd_sweep(sw, st, out, err);
  } catch (const std::invalid_argument& e) {
    // kernels::table reports an unsupported ISA this way.
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (...) {
    return exit_code_for(std::current_exception(), err);
  }
  return kValidation;
}

}  // namespace qws::cli
