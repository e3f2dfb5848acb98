#include "qwsearch/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <queue>
#include <sstream>

#include "qwsearch/errors.hpp"

namespace qws {

namespace {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > Graph::kMaxVertices) return r;
  }
  return r;
}

void require_size(long long n, const std::string& what) {
  if (n > Graph::kMaxVertices) {
    throw ValidationError(what + " has " + std::to_string(n) + " vertices; limit is " +
                          std::to_string(Graph::kMaxVertices));
  }
}

std::string join_params(const std::vector<int>& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(p[i]);
  }
  return out;
}

}  // namespace

std::string FamilyTag::keyword() const {
  switch (kind) {
    case Family::johnson:
      return "johnson";
    case Family::rook:
      return "rook";
    case Family::complete_square:
      return "complete_square";
    case Family::complete_bipartite:
      return "bipartite";
    case Family::complete:
      return "complete";
    case Family::custom:
      return "custom";
  }
  return "custom";
}

std::string FamilyTag::describe() const {
  if (kind == Family::custom) return "custom";
  return keyword() + "(" + join_params(params) + ")";
}

Graph::Graph(int n_vertices, std::vector<Edge> edges, FamilyTag family,
             std::vector<std::string> labels, std::optional<Bipartition> bipartition)
    : n_(n_vertices),
      family_(std::move(family)),
      labels_(std::move(labels)),
      bipartition_(std::move(bipartition)) {
  if (n_ < 1) throw ValidationError("graph needs at least one vertex");
  require_size(n_, "graph");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_) {
    throw ValidationError("label count does not match vertex count");
  }
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) {
      throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") has a vertex outside [0," + std::to_string(n_) + ")");
    }
    if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw ValidationError("duplicate edge (" + std::to_string(dup->first) + "," +
                          std::to_string(dup->second) + ")");
  }
  edges_ = std::move(edges);

  // Breadth-first connectivity check.
  std::vector<std::vector<int>> adj(n_);
  for (const auto& [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(n_, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int w : adj[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
    }
  }
  if (reached != n_) {
    throw ValidationError("graph is disconnected: " + std::to_string(reached) + " of " +
                          std::to_string(n_) + " vertices reachable from vertex 0");
  }
}

Graph Graph::johnson(int n, int k) {
  if (k < 1 || k >= n) throw ValidationError("johnson(n,k) requires 1 <= k < n");
  require_size(binomial(n, k), "johnson(" + std::to_string(n) + "," + std::to_string(k) + ")");

  // Lexicographic k-subsets of {0..n-1}.
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    subsets.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }

  const int N = static_cast<int>(subsets.size());
  std::vector<Edge> edges;
  for (int a = 0; a < N; ++a) {
    for (int b = a + 1; b < N; ++b) {
      int common = 0;
      auto ia = subsets[a].begin();
      auto ib = subsets[b].begin();
      while (ia != subsets[a].end() && ib != subsets[b].end()) {
        if (*ia == *ib) {
          ++common;
          ++ia;
          ++ib;
        } else if (*ia < *ib) {
          ++ia;
        } else {
          ++ib;
        }
      }
      if (common == k - 1) edges.emplace_back(a, b);
    }
  }

  std::vector<std::string> labels;
  labels.reserve(N);
  for (const auto& s : subsets) {
    std::string l = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) l += ',';
      l += std::to_string(s[i] + 1);
    }
    labels.push_back(l + "}");
  }
  return Graph(N, std::move(edges), {Family::johnson, {n, k}}, std::move(labels));
}

Graph Graph::rook(int m, int n) {
  if (m < 1 || n < 1 || static_cast<long long>(m) * n < 2) {
    throw ValidationError("rook(m,n) requires m >= 1, n >= 1, mn >= 2");
  }
  require_size(static_cast<long long>(m) * n, "rook graph");
  const int N = m * n;
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  for (int a = 0; a < N; ++a) {
    const int ai = a / n, aj = a % n;
    labels.push_back("(" + std::to_string(ai) + "," + std::to_string(aj) + ")");
    for (int b = a + 1; b < N; ++b) {
      const int bi = b / n, bj = b % n;
      if ((ai == bi) != (aj == bj)) edges.emplace_back(a, b);
    }
  }
  return Graph(N, std::move(edges), {Family::rook, {m, n}}, std::move(labels));
}

Graph Graph::complete_square(int n) {
  if (n < 2) throw ValidationError("complete_square(n) requires n >= 2");
  require_size(4LL * n, "complete_square graph");
  // Vertex (i, j): i in K_n, j on the 4-cycle; index 4*i + j.
  const int N = 4 * n;
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  for (int a = 0; a < N; ++a) {
    const int ai = a / 4, aj = a % 4;
    labels.push_back("(" + std::to_string(ai) + "," + std::to_string(aj) + ")");
    for (int b = a + 1; b < N; ++b) {
      const int bi = b / 4, bj = b % 4;
      const bool clique_move = (aj == bj) && (ai != bi);
      const int dj = (bj - aj + 4) % 4;
      const bool cycle_move = (ai == bi) && (dj == 1 || dj == 3);
      if (clique_move || cycle_move) edges.emplace_back(a, b);
    }
  }
  return Graph(N, std::move(edges), {Family::complete_square, {n}}, std::move(labels));
}

Graph Graph::complete_bipartite(int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw ValidationError("complete_bipartite(N1,N2) requires N1, N2 >= 1");
  require_size(static_cast<long long>(n1) + n2, "complete bipartite graph");
  const int N = n1 + n2;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n1) * n2);
  Bipartition part;
  std::vector<std::string> labels;
  for (int a = 0; a < n1; ++a) {
    part.first.push_back(a);
    labels.push_back("V1:" + std::to_string(a));
    for (int b = 0; b < n2; ++b) edges.emplace_back(a, n1 + b);
  }
  for (int b = 0; b < n2; ++b) {
    part.second.push_back(n1 + b);
    labels.push_back("V2:" + std::to_string(b));
  }
  return Graph(N, std::move(edges), {Family::complete_bipartite, {n1, n2}}, std::move(labels),
               std::move(part));
}

Graph Graph::complete(int n) {
  if (n < 2) throw ValidationError("complete(n) requires n >= 2");
  require_size(n, "complete graph");
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  return Graph(n, std::move(edges), {Family::complete, {n}});
}

Graph Graph::from_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::optional<int> n;
  std::vector<Edge> edges;

  auto parse_int = [&](const std::string& tok) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected an integer, got '" +
                            tok + "'");
    }
    return value;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (!n) {
      if (tok.size() != 2 || tok[0] != "N") {
        throw ValidationError("line " + std::to_string(line_no) + ": expected header 'N <count>'");
      }
      n = parse_int(tok[1]);
      if (*n < 1) throw ValidationError("vertex count must be positive");
      continue;
    }
    if (tok.size() != 2) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected 'u v'");
    }
    edges.emplace_back(parse_int(tok[0]), parse_int(tok[1]));
  }
  if (!n) throw ValidationError("edge list has no 'N <count>' header");
  return Graph(*n, std::move(edges));
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n_, 0);
  for (const auto& [u, v] : edges_) {
    ++d[u];
    ++d[v];
  }
  return d;
}

std::optional<int> Graph::regular_degree() const {
  const auto d = degrees();
  if (std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) != d.end()) return std::nullopt;
  return d.front();
}

Eigen::MatrixXd Graph::adjacency() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (const auto& [u, v] : edges_) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

Eigen::MatrixXd Graph::laplacian() const {
  Eigen::MatrixXd l = -adjacency();
  const auto d = degrees();
  for (int i = 0; i < n_; ++i) l(i, i) = d[i];
  return l;
}

std::string Graph::to_edge_list() const {
  std::ostringstream out;
  out << "# " << family_.describe() << "\n";
  out << "N " << n_ << "\n";
  for (const auto& [u, v] : edges_) out << u << ' ' << v << "\n";
  return out.str();
}

}  // namespace qws
