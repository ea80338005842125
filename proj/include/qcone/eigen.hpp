#pragma once

// Dense symmetric eigensolver (cyclic Jacobi), tolerance-grouped spectra,
// characteristic polynomials of small matrices, and bracketed quartic roots.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "qcone/error.hpp"
#include "qcone/multigraph.hpp"

namespace qcone {

inline constexpr double kGroupTolerance = 1e-9;
inline constexpr double kCospectralTolerance = 1e-8;

/// Square dense matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  Matrix(std::size_t n, std::initializer_list<double> rows) : Matrix(n) {
    if (rows.size() != n * n) throw ParameterError("Matrix: wrong number of entries");
    std::copy(rows.begin(), rows.end(), a_.begin());
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  double frobenius_norm() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (double x : a_) s = std::max(s, std::abs(x));
    return s;
  }

  double trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

  bool symmetric(double rel_tol = 1e-12) const {
    const double tol = rel_tol * std::max(1.0, max_abs());
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
  }

  std::vector<double> apply(std::span<const double> x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Q = D + A with multiplicity-weighted degrees and multiplicity entries.
inline Matrix q_matrix(const MultiGraph& g) {
  const std::size_t n = g.order();
  Matrix q(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) q(u, v) = g.mult(u, v);
    q(u, u) = static_cast<double>(g.degree(u));
  }
  return q;
}

inline Matrix adjacency_matrix(const MultiGraph& g) {
  const std::size_t n = g.order();
  Matrix a(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) a(u, v) = g.mult(u, v);
  return a;
}

struct SpectrumGroup {
  double value = 0.0;  ///< mean of the group members
  std::size_t multiplicity = 0;
  std::vector<std::string> sources;  ///< distinct provenance tags, if any
};

/// Real eigenvalue multiset, sorted non-increasing, grouped at a tolerance.
///
/// A group starts at its largest member and absorbs every following value
/// within `group_tolerance` of that anchor, so a group never spans more
/// than the tolerance. Optional per-value source tags record where a
/// closed-form value came from; grouping merges them.
class QSpectrum {
 public:
  QSpectrum() = default;

  explicit QSpectrum(std::vector<double> values, double group_tolerance = kGroupTolerance,
                     std::vector<std::string> sources = {})
      : tol_(group_tolerance) {
    if (!sources.empty() && sources.size() != values.size()) {
      throw ParameterError("QSpectrum: sources/values size mismatch");
    }
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    values_.reserve(values.size());
    for (auto i : order) values_.push_back(values[i]);
    if (!sources.empty()) {
      sources_.reserve(sources.size());
      for (auto i : order) sources_.push_back(std::move(sources[i]));
    }
    build_groups();
  }

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<std::string>& sources() const noexcept { return sources_; }
  const std::vector<SpectrumGroup>& groups() const noexcept { return groups_; }
  double group_tolerance() const noexcept { return tol_; }

  /// i-th largest value, 0-based.
  double operator[](std::size_t i) const { return values_[i]; }

  double largest() const { return values_.front(); }
  double smallest() const { return values_.back(); }

  double sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

  /// Size of the group containing x (0 when x lies in no group).
  std::size_t multiplicity(double x) const {
    for (const auto& g : groups_)
      if (std::abs(g.value - x) <= tol_) return g.multiplicity;
    return 0;
  }

  /// Number of values within tau of x.
  std::size_t count_near(double x, double tau) const {
    return static_cast<std::size_t>(std::count_if(
        values_.begin(), values_.end(), [&](double v) { return std::abs(v - x) <= tau; }));
  }

 private:
  void build_groups() {
    groups_.clear();
    std::size_t i = 0;
    while (i < values_.size()) {
      const double anchor = values_[i];
      std::size_t j = i;
      double sum = 0.0;
      std::vector<std::string> tags;
      while (j < values_.size() && anchor - values_[j] <= tol_) {
        sum += values_[j];
        if (!sources_.empty()) tags.push_back(sources_[j]);
        ++j;
      }
      std::sort(tags.begin(), tags.end());
      tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
      groups_.push_back({sum / static_cast<double>(j - i), j - i, std::move(tags)});
      i = j;
    }
  }

  double tol_ = kGroupTolerance;
  std::vector<double> values_;
  std::vector<std::string> sources_;
  std::vector<SpectrumGroup> groups_;
};

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps visit (p, q) in row order until the off-diagonal Frobenius norm
/// is at most 1e-13 * ||M||_F. The result is a deterministic function of M.
inline QSpectrum sym_eigenvalues(const Matrix& m, double group_tolerance = kGroupTolerance) {
  const std::size_t n = m.rows();
  if (n > MultiGraph::kMaxOrder) throw ContractError("sym_eigenvalues: order exceeds 4096");
  if (!m.symmetric()) throw ContractError("sym_eigenvalues: matrix is not symmetric");
  Matrix a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = avg;
      a(j, i) = avg;
    }
  const double threshold = 1e-13 * m.frobenius_norm();
  constexpr int kMaxSweeps = 100;
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_norm() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
      }
    }
  }
  if (sweep == kMaxSweeps && off_norm() > threshold) {
    throw ContractError("sym_eigenvalues: Jacobi iteration did not converge");
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
  return QSpectrum(std::move(values), group_tolerance);
}

inline QSpectrum q_spectrum(const MultiGraph& g, double group_tolerance = kGroupTolerance) {
  return sym_eigenvalues(q_matrix(g), group_tolerance);
}

inline QSpectrum adjacency_spectrum(const MultiGraph& g,
                                    double group_tolerance = kGroupTolerance) {
  return sym_eigenvalues(adjacency_matrix(g), group_tolerance);
}

/// Evaluates many matrices on `jobs` worker threads; output is in input order.
inline std::vector<QSpectrum> sym_eigenvalues_batch(std::span<const Matrix> matrices,
                                                    double group_tolerance = kGroupTolerance,
                                                    unsigned jobs = 1) {
  std::vector<QSpectrum> out(matrices.size());
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(matrices.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < matrices.size(); i = next++) {
      out[i] = sym_eigenvalues(matrices[i], group_tolerance);
    }
  };
  if (jobs <= 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

/// L-infinity distance between the sorted value lists.
inline double spectrum_compare(const QSpectrum& a, const QSpectrum& b) {
  if (a.size() != b.size()) {
    throw ComparisonError("spectrum_compare: sizes " + std::to_string(a.size()) + " and " +
                          std::to_string(b.size()) + " differ");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline bool cospectral(const QSpectrum& a, const QSpectrum& b,
                       double tolerance = kCospectralTolerance) {
  return a.size() == b.size() && spectrum_compare(a, b) <= tolerance;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;
};

/// m(I): values in the interval. A value within tau of an endpoint is
/// inside exactly when that end is closed.
inline std::size_t count_in_interval(const QSpectrum& s, const Interval& iv, double tau) {
  if (!(iv.lo < iv.hi)) throw ParameterError("count_in_interval: requires lo < hi");
  std::size_t count = 0;
  for (double v : s.values()) {
    const bool above = iv.lo_closed ? v >= iv.lo - tau : v > iv.lo + tau;
    const bool below = iv.hi_closed ? v <= iv.hi + tau : v < iv.hi - tau;
    if (above && below) ++count;
  }
  return count;
}

/// Monic characteristic polynomial det(xI - M) by Faddeev-LeVerrier.
/// Coefficients in descending degree: {1, c_{n-1}, ..., c_0}.
inline std::vector<double> char_poly(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  Matrix mk(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[k - 1];
    mk = std::move(next);
    c[k] = -(m * mk).trace() / static_cast<double>(k);
  }
  return c;
}

inline std::array<double, 5> char_poly_4x4(const Matrix& m) {
  if (m.rows() != 4) throw ParameterError("char_poly_4x4: matrix is not 4x4");
  const auto c = char_poly(m);
  return {c[0], c[1], c[2], c[3], c[4]};
}

/// Monic quartic with one root expected in each of four disjoint brackets,
/// ordered from the largest bracket down.
struct QuarticData {
  std::array<double, 5> coeffs{};  ///< c4 (= 1), c3, c2, c1, c0
  std::array<Interval, 4> brackets{};

  double operator()(double x) const {
    double v = 0.0;
    for (double c : coeffs) v = v * x + c;
    return v;
  }

  double derivative(double x) const {
    return ((4.0 * coeffs[0] * x + 3.0 * coeffs[1]) * x + 2.0 * coeffs[2]) * x + coeffs[3];
  }

  double max_coeff() const {
    double m = 0.0;
    for (double c : coeffs) m = std::max(m, std::abs(c));
    return m;
  }

  /// True when the polynomial changes sign strictly across every bracket.
  bool brackets_valid() const {
    return std::all_of(brackets.begin(), brackets.end(), [&](const Interval& b) {
      return (*this)(b.lo) * (*this)(b.hi) < 0.0;
    });
  }
};

/// One root per bracket: bisection to width 1e-13, then one Newton step
/// kept only if it stays inside the bracket and does not increase |p|.
inline std::array<double, 4> quartic_roots(const QuarticData& qd) {
  std::array<double, 4> roots{};
  for (std::size_t i = 0; i < 4; ++i) {
    double lo = qd.brackets[i].lo;
    double hi = qd.brackets[i].hi;
    double plo = qd(lo);
    const double phi = qd(hi);
    if (!(plo * phi < 0.0)) {
      throw BracketError("quartic_roots: no sign change on (" + std::to_string(lo) + ", " +
                         std::to_string(hi) + ")");
    }
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double pm = qd(mid);
      if (pm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((pm < 0.0) == (plo < 0.0)) {
        lo = mid;
        plo = pm;
      } else {
        hi = mid;
      }
    }
    double x = 0.5 * (lo + hi);
    const double d = qd.derivative(x);
    if (d != 0.0) {
      const double polished = x - qd(x) / d;
      if (polished > qd.brackets[i].lo && polished < qd.brackets[i].hi &&
          std::abs(qd(polished)) <= std::abs(qd(x))) {
        x = polished;
      }
    }
    roots[i] = x;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

}  // namespace qcone
