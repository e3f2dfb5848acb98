#pragma once
// Simple undirected connected graphs: the search families and custom edge lists.

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qws {

enum class Family { johnson, rook, complete_square, complete_bipartite, complete, custom };

struct FamilyTag {
  Family kind = Family::custom;
  std::vector<int> params;

  // "johnson(4,2)", "rook(3,4)", "custom", ...
  std::string describe() const;
  // family keyword alone: "johnson", "bipartite", ...
  std::string keyword() const;
};

struct Bipartition {
  std::vector<int> first;
  std::vector<int> second;
};

using Edge = std::pair<int, int>;

// Immutable after construction. Edges are stored with u < v, sorted.
class Graph {
 public:
  // Largest vertex count any constructor accepts; dense matrices beyond this
  // are not desk-scale.
  static constexpr int kMaxVertices = 20000;

  static Graph johnson(int n, int k);
  static Graph rook(int m, int n);
  static Graph complete_square(int n);
  static Graph complete_bipartite(int n1, int n2);
  static Graph complete(int n);

  // "N <count>" header then one "u v" pair per line; '#' starts a comment.
  static Graph from_edge_list(std::string_view text);

  // Validating constructor for arbitrary edge sets.
  Graph(int n_vertices, std::vector<Edge> edges, FamilyTag family = {},
        std::vector<std::string> labels = {}, std::optional<Bipartition> bipartition = {});

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const FamilyTag& family() const noexcept { return family_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::optional<Bipartition>& bipartition() const noexcept { return bipartition_; }

  std::vector<int> degrees() const;
  // Common degree if regular, nullopt otherwise.
  std::optional<int> regular_degree() const;

  Eigen::MatrixXd adjacency() const;
  // L = D - A
  Eigen::MatrixXd laplacian() const;

  std::string to_edge_list() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  FamilyTag family_;
  std::vector<std::string> labels_;
  std::optional<Bipartition> bipartition_;
};

}  // namespace qws
