#include "qwsearch/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "qwsearch/errors.hpp"

namespace qws {

namespace {

constexpr double kZeroWeight = 1e-10;

bool contains(const std::vector<long long>& sorted_values, long long x) {
  return std::binary_search(sorted_values.begin(), sorted_values.end(), x);
}

}  // namespace

PiRational::PiRational(long long n, long long d) {
  if (d == 0) throw ValidationError("PiRational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

double PiRational::radians() const noexcept {
  return std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
}

std::string PiRational::to_string() const {
  if (num == 0) return "0";
  std::string out;
  if (num == -1) {
    out = "-pi";
  } else if (num == 1) {
    out = "pi";
  } else {
    out = std::to_string(num) + "pi";
  }
  if (den != 1) out += "/" + std::to_string(den);
  return out;
}

PiRational operator+(const PiRational& a, const PiRational& b) {
  const long long l = std::lcm(a.den, b.den);
  return {a.num * (l / a.den) + b.num * (l / b.den), l};
}

long long gcd_multiset(const std::vector<long long>& s) {
  long long g = 0;
  for (long long x : s) g = std::gcd(g, x < 0 ? -x : x);
  return g == 0 ? 1 : g;
}

std::vector<long long> Cascade::distinct(int k, bool complement) const {
  const std::vector<long long>& src = complement ? complements.at(k - 1) : levels.at(k).lambda;
  std::vector<long long> out(src);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Cascade build_cascade(std::vector<long long> eigenvalues) {
  std::sort(eigenvalues.begin(), eigenvalues.end());
  if (!contains(eigenvalues, 0)) {
    throw ValidationError("cascade requires a zero eigenvalue");
  }

  Cascade c;
  std::vector<long long> cur = std::move(eigenvalues);
  while (true) {
    const long long g = gcd_multiset(cur);
    c.levels.push_back({cur, g, PiRational(1, g)});
    if (std::all_of(cur.begin(), cur.end(), [](long long x) { return x == 0; })) break;

    std::vector<long long> even;
    std::vector<long long> odd;
    for (long long x : cur) ((x / g) % 2 == 0 ? even : odd).push_back(x);
    c.complements.push_back(std::move(odd));
    cur = std::move(even);
  }
  c.depth = static_cast<int>(c.levels.size()) - 1;
  c.overlaps = overlaps(c, static_cast<int>(c.levels.front().lambda.size()));
  return c;
}

std::vector<double> overlaps(const Cascade& c, int n) {
  if (c.levels.empty() || static_cast<int>(c.levels.front().lambda.size()) != n) {
    throw ValidationError("cascade level 0 does not hold " + std::to_string(n) + " eigenvalues");
  }
  std::vector<double> out;
  for (int k = 0; k < c.depth; ++k) {
    const double a = static_cast<double>(c.levels[k].lambda.size());
    const double b = static_cast<double>(c.levels[k + 1].lambda.size());
    if (a == 0 || b == 0) throw ValidationError("empty cascade level " + std::to_string(k));
    out.push_back(std::sqrt(b / a));
  }
  return out;
}

double level_weight(const Spectrum& s, const Cascade& c, int v, int k, bool complement) {
  if (v < 0 || v >= s.size()) throw ValidationError("vertex " + std::to_string(v) + " out of range");
  const auto values = c.distinct(k, complement);
  double w = 0.0;
  for (const auto& space : s.spaces) {
    if (!contains(values, space.value)) continue;
    for (int i : space.indices) {
      const double a = s.basis.vectors(v, i);
      w += a * a;
    }
  }
  return w;
}

EquitableReport check_equitable(const Spectrum& s, const Cascade& c, double tol) {
  EquitableReport r;
  const int n = s.size();
  for (int k = 0; k <= c.depth; ++k) {
    const double expected = static_cast<double>(c.levels[k].lambda.size()) / n;
    const double expected_bar =
        k >= 1 ? static_cast<double>(c.complements[k - 1].size()) / n : 0.0;
    for (int v = 0; v < n; ++v) {
      const double w = level_weight(s, c, v, k);
      const double dev = std::abs(w - expected);
      if (dev > r.worst_deviation) {
        r.worst_deviation = dev;
        r.worst_vertex = v;
        r.worst_level = k;
      }
      if (w <= kZeroWeight) r.zero_weight.push_back({v, k, false, w, expected});
      if (k >= 1) {
        const double wb = level_weight(s, c, v, k, true);
        if (wb <= kZeroWeight) r.zero_weight.push_back({v, k, true, wb, expected_bar});
      }
    }
  }
  r.passed = r.worst_deviation <= tol && r.zero_weight.empty();
  return r;
}

Eigen::VectorXd project_level_state(const Spectrum& s, const Cascade& c, int m, int k,
                                    bool complement) {
  if (m < 0 || m >= s.size()) throw ValidationError("vertex " + std::to_string(m) + " out of range");
  if (k < 0 || k > c.depth || (complement && k == 0)) {
    throw ValidationError("cascade level " + std::to_string(k) + " out of range");
  }
  if (k == 0 && !complement) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(s.size());
    e(m) = 1.0;
    return e;
  }
  const auto values = c.distinct(k, complement);
  const auto& v = s.basis.vectors;
  Eigen::VectorXd coeff = v.row(m).transpose();
  for (int i = 0; i < s.size(); ++i) {
    if (!contains(values, s.eigenvalues[i])) coeff(i) = 0.0;
  }
  Eigen::VectorXd w = v * coeff;
  const double norm = w.norm();
  if (norm * norm <= kZeroWeight) {
    throw InfeasibleError("vertex " + std::to_string(m) + " has no weight on cascade level " +
                          std::to_string(k) + (complement ? " (bar set)" : ""));
  }
  return w / norm;
}

}  // namespace qws
