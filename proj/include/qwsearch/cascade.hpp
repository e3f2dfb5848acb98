#pragma once
// The gcd-parity cascade of an integer eigenvalue multiset, level overlaps,
// and the per-vertex weight identities the search construction relies on.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qwsearch/spectral.hpp"

namespace qws {

// Exact rational multiple of pi, kept reduced with den > 0.
struct PiRational {
  long long num = 0;
  long long den = 1;

  PiRational() = default;
  PiRational(long long n, long long d);

  double radians() const noexcept;
  // "pi/4", "3pi/2", "-pi", "0"
  std::string to_string() const;

  PiRational operator-() const { return {-num, den}; }
  friend PiRational operator+(const PiRational& a, const PiRational& b);
  friend bool operator==(const PiRational& a, const PiRational& b) = default;
};

// gcd of the nonzero elements (absolute values); 1 when there are none.
long long gcd_multiset(const std::vector<long long>& s);

struct CascadeLevel {
  std::vector<long long> lambda;  // sorted, with multiplicity
  long long gcd = 1;
  PiRational walk_time;           // pi / gcd, in units of the snapped spectrum
};

struct Cascade {
  std::vector<CascadeLevel> levels;              // k = 0..depth
  std::vector<std::vector<long long>> complements;  // complements[k] is the bar set at level k+1
  std::vector<double> overlaps;                  // c_k = sqrt(|L_{k+1}| / |L_k|)
  int depth = 0;

  // Distinct values of level k (or of its complement bar set when k >= 1).
  std::vector<long long> distinct(int k, bool complement = false) const;
};

// Throws ValidationError when no zero is present.
Cascade build_cascade(std::vector<long long> eigenvalues);

// Throws ValidationError when |L_0| != n or a level is empty.
std::vector<double> overlaps(const Cascade& c, int n);

struct EquitableViolation {
  int vertex;
  int level;
  bool complement;  // weight measured on the bar set rather than L_k
  double weight;
  double expected;
};

struct EquitableReport {
  bool passed = true;
  double worst_deviation = 0.0;
  int worst_vertex = -1;
  int worst_level = -1;
  // (vertex, level) pairs whose L_k or bar-L_k weight is zero; these make the
  // level unusable for that marked vertex.
  std::vector<EquitableViolation> zero_weight;
};

EquitableReport check_equitable(const Spectrum& s, const Cascade& c, double tol = 1e-8);

// Weight of vertex v on the eigenspaces of level k (or of its bar set).
double level_weight(const Spectrum& s, const Cascade& c, int v, int k, bool complement = false);

// Normalized projection of |m> onto the eigenspaces of level k (bar set when
// complement is set). Throws InfeasibleError on a zero projection.
Eigen::VectorXd project_level_state(const Spectrum& s, const Cascade& c, int m, int k,
                                    bool complement = false);

}  // namespace qws
