#pragma once
// Spectral decomposition H = sum_i lambda_i |eta_i><eta_i| of a real symmetric
// Hamiltonian, with eigenvalues snapped to integers after a rational rescale.

#include <Eigen/Dense>
#include <span>
#include <string_view>
#include <vector>

namespace qws {

enum class HamiltonianKind { laplacian, adjacency };

std::string_view to_string(HamiltonianKind kind) noexcept;
HamiltonianKind parse_hamiltonian(std::string_view text);

// Raw floating eigenpairs. Columns of `vectors` are orthonormal and aligned
// with the ascending `values`.
struct EigenBasis {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  int size() const noexcept { return static_cast<int>(values.size()); }
};

// Throws ValidationError on non-symmetric input and SolverError when the
// residual ||HV - V diag(values)|| exceeds 1e-9 ||H||.
EigenBasis eigendecompose(const Eigen::MatrixXd& h);

struct Eigenspace {
  long long value;           // snapped eigenvalue (after scaling by q)
  std::vector<int> indices;  // columns of the eigenvector matrix
};

struct Spectrum {
  EigenBasis basis;
  std::vector<long long> eigenvalues;  // round(q * raw), ascending, with multiplicity
  std::vector<Eigenspace> spaces;      // ascending by value
  long long scale = 1;                 // q
  HamiltonianKind kind = HamiltonianKind::laplacian;

  int size() const noexcept { return basis.size(); }
  const Eigen::VectorXd& raw_eigenvalues() const noexcept { return basis.values; }
  std::size_t distinct_count() const noexcept { return spaces.size(); }
};

inline constexpr double kDefaultSnapTol = 1e-8;
inline constexpr long long kDefaultMaxScale = 1'000'000;

// Smallest q <= q_max with every q*lambda within snap_tol of an integer.
// Throws InfeasibleError when none exists.
long long rational_rescale(std::span<const double> raw_eigenvalues,
                           long long q_max = kDefaultMaxScale, double snap_tol = kDefaultSnapTol);

// Eigendecompose, rescale and snap. Snap failure is an InfeasibleError naming
// the worst offender. For kind == laplacian the zero eigenvalue must be simple.
Spectrum decompose(const Eigen::MatrixXd& h, HamiltonianKind kind,
                   double snap_tol = kDefaultSnapTol, long long q_max = kDefaultMaxScale);

// Eigenpairs only, for Hamiltonians whose spectrum is not rational
// (complete bipartite adjacency). scale is 0 and no eigenspaces are formed.
Spectrum unsnapped(const Eigen::MatrixXd& h, HamiltonianKind kind);

struct EigenspaceWeight {
  long long value;
  double weight;  // sum over the eigenspace of <eta_i|v>^2
};

std::vector<EigenspaceWeight> vertex_overlap_profile(const Spectrum& s, int v);

}  // namespace qws
