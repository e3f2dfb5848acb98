#include "qwsearch/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qwsearch/errors.hpp"

namespace qws {

std::string_view to_string(HamiltonianKind kind) noexcept {
  return kind == HamiltonianKind::laplacian ? "laplacian" : "adjacency";
}

HamiltonianKind parse_hamiltonian(std::string_view text) {
  if (text == "laplacian") return HamiltonianKind::laplacian;
  if (text == "adjacency") return HamiltonianKind::adjacency;
  throw ValidationError("unknown hamiltonian '" + std::string(text) + "'");
}

EigenBasis eigendecompose(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw ValidationError("hamiltonian must be a non-empty square matrix");
  }
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) {
    std::ostringstream msg;
    msg << "hamiltonian is not symmetric (max |H - H^T| = " << asym << ")";
    throw ValidationError(msg.str());
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw SolverError("symmetric eigensolver did not converge");

  EigenBasis out{solver.eigenvalues(), solver.eigenvectors()};

  // Sign convention: the largest-magnitude entry of each eigenvector is positive
  // (first index wins ties), so a uniform eigenvector comes out as +1/sqrt(N).
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) {
    auto col = out.vectors.col(j);
    const double peak = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) >= peak - 1e-12) {
        if (col(i) < 0) col = -col;
        break;
      }
    }
  }

  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  const double residual =
      (h * out.vectors - out.vectors * out.values.asDiagonal()).cwiseAbs().maxCoeff();
  if (residual > 1e-9 * scale) {
    std::ostringstream msg;
    msg << "eigendecomposition residual " << residual << " exceeds tolerance";
    throw SolverError(msg.str());
  }
  return out;
}

long long rational_rescale(std::span<const double> raw, long long q_max, double snap_tol) {
  if (q_max < 1) throw ValidationError("q_max must be positive");
  // Collapse numerically equal values; the scan then touches only distinct ones.
  std::vector<double> distinct(raw.begin(), raw.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end(),
                             [](double a, double b) {
                               return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a));
                             }),
                 distinct.end());

  auto fits = [&](long long q) {
    for (double x : distinct) {
      const double y = static_cast<double>(q) * x;
      if (std::abs(y - std::round(y)) > snap_tol) return false;
    }
    return true;
  };
  for (long long q = 1; q <= q_max; ++q) {
    if (fits(q)) return q;
  }

  double worst = 0.0;
  double worst_value = 0.0;
  for (double x : distinct) {
    const double err = std::abs(x - std::round(x));
    if (err >= worst) {
      worst = err;
      worst_value = x;
    }
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "no scale q <= " << q_max << " makes all eigenvalues integral (worst offender "
      << worst_value << ")";
  throw InfeasibleError(msg.str());
}

Spectrum decompose(const Eigen::MatrixXd& h, HamiltonianKind kind, double snap_tol,
                   long long q_max) {
  Spectrum s;
  s.kind = kind;
  s.basis = eigendecompose(h);
  const auto& raw = s.basis.values;
  s.scale = rational_rescale(std::span<const double>(raw.data(), raw.size()), q_max, snap_tol);

  s.eigenvalues.resize(raw.size());
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    const double y = static_cast<double>(s.scale) * raw(i);
    s.eigenvalues[i] = std::llround(y);
  }
  for (int i = 0; i < static_cast<int>(s.eigenvalues.size()); ++i) {
    if (s.spaces.empty() || s.spaces.back().value != s.eigenvalues[i]) {
      s.spaces.push_back({s.eigenvalues[i], {}});
    }
    s.spaces.back().indices.push_back(i);
  }

  if (kind == HamiltonianKind::laplacian) {
    const auto zeros = std::count(s.eigenvalues.begin(), s.eigenvalues.end(), 0LL);
    if (zeros != 1) {
      throw InfeasibleError("laplacian zero eigenvalue has multiplicity " + std::to_string(zeros) +
                            " (graph must be connected)");
    }
  }
  return s;
}

Spectrum unsnapped(const Eigen::MatrixXd& h, HamiltonianKind kind) {
  Spectrum s;
  s.kind = kind;
  s.basis = eigendecompose(h);
  s.scale = 0;
  return s;
}

std::vector<EigenspaceWeight> vertex_overlap_profile(const Spectrum& s, int v) {
  if (v < 0 || v >= s.size()) {
    throw ValidationError("vertex " + std::to_string(v) + " out of range");
  }
  std::vector<EigenspaceWeight> out;
  out.reserve(s.spaces.size());
  for (const auto& space : s.spaces) {
    double w = 0.0;
    for (int i : space.indices) {
      const double a = s.basis.vectors(v, i);
      w += a * a;
    }
    out.push_back({space.value, w});
  }
  return out;
}

}  // namespace qws
