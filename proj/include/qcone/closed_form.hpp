#pragma once

// Closed-form Q-spectra of the two cone families
//
//   G = K1 v (C_{k1} u ... u C_{kt} u qK2 u sK1)
//   F = K1 v (K_{1,3} u C_{k1} u ... u C_{k_{t-1}} u qK2 u (s-1)K1)
//
// together with their explicit eigenvectors, the equitable quotient matrix,
// and the mate constructions that follow from comparing the two spectra.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "qcone/cone_spec.hpp"
#include "qcone/eigen.hpp"
#include "qcone/error.hpp"

namespace qcone {

/// The quartic shared by both families at equal (n, q, s):
///   x^4 - (n+8)x^3 + (8n+15)x^2 + (4q+4s-19n+4)x + 12n-4q-12s-12
/// with root brackets (n, n+2), (4, 5), (2, 3), (0, 1).
inline QuarticData quartic_coeffs(std::int64_t n, std::int64_t q, std::int64_t s) {
  if (q < 1 || s < 1) throw ParameterError("quartic_coeffs: requires q, s >= 1");
  if (n - 1 - 2 * q - s < 2) {
    throw ParameterError("quartic_coeffs: n - 1 - 2q - s must be >= 2 (n=" + std::to_string(n) +
                         ", q=" + std::to_string(q) + ", s=" + std::to_string(s) + ")");
  }
  QuarticData qd;
  qd.coeffs = {1.0, static_cast<double>(-(n + 8)), static_cast<double>(8 * n + 15),
               static_cast<double>(4 * q + 4 * s - 19 * n + 4),
               static_cast<double>(12 * n - 4 * q - 12 * s - 12)};
  const double nd = static_cast<double>(n);
  qd.brackets = {Interval{nd, nd + 2.0}, Interval{4.0, 5.0}, Interval{2.0, 3.0},
                 Interval{0.0, 1.0}};
  if (!qd.brackets_valid()) {
    throw ParameterError("quartic_coeffs: no sign change in some root bracket for (n=" +
                         std::to_string(n) + ", q=" + std::to_string(q) +
                         ", s=" + std::to_string(s) + ")");
  }
  return qd;
}

/// Equitable quotient of Q over {apex, cycle vertices, K2 vertices,
/// isolated vertices}. Digons are admitted as degenerate cycles.
inline Matrix quotient_matrix(std::int64_t n, std::int64_t q, std::int64_t s) {
  const std::int64_t cyc = n - 1 - 2 * q - s;
  if (q < 0 || s < 0 || cyc < 2) {
    throw ParameterError("quotient_matrix: needs n - 1 - 2q - s >= 2 and q, s >= 0");
  }
  const double nd = static_cast<double>(n);
  return Matrix(4, {nd - 1, static_cast<double>(cyc), static_cast<double>(2 * q),
                    static_cast<double>(s),  //
                    1, 5, 0, 0,              //
                    1, 0, 3, 0,              //
                    1, 0, 0, 1});
}

namespace detail {

/// "3+2cos(2pi*j/k)" with j/k reduced and j folded into [1, k/2].
inline std::string cycle_tag(int j, int k) {
  if (2 * j > k) j = k - j;
  const int g = std::gcd(j, k);
  return "3+2cos(2pi*" + std::to_string(j / g) + "/" + std::to_string(k / g) + ")";
}

inline double cycle_value(int j, int k) {
  if (2 * j == k) return 1.0;
  if (4 * j == k || 4 * j == 3 * k) return 3.0;
  return 3.0 + 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) /
                              static_cast<double>(k));
}

inline void append(std::vector<double>& values, std::vector<std::string>& tags, double v,
                   const std::string& tag, std::int64_t copies) {
  for (std::int64_t i = 0; i < copies; ++i) {
    values.push_back(v);
    tags.push_back(tag);
  }
}

inline void append_quartic(std::vector<double>& values, std::vector<std::string>& tags,
                           const FamilyParams& p) {
  const auto roots = quartic_roots(quartic_coeffs(p.n, p.q, p.s));
  for (int i = 0; i < 4; ++i) append(values, tags, roots[i], "rho" + std::to_string(i + 1), 1);
}

inline void append_cycles(std::vector<double>& values, std::vector<std::string>& tags,
                          const std::vector<int>& cycles) {
  for (int k : cycles)
    for (int j = 1; j < k; ++j) append(values, tags, cycle_value(j, k), cycle_tag(j, k), 1);
}

}  // namespace detail

/// Q-spectrum of the G-family from its closed form:
/// {rho1..rho4, 5^(t-1), 3^(q-1), 1^(s+q-1), 3+2cos(2j pi/k_i)}.
/// Values are emitted per source and grouped only in the returned QSpectrum.
inline QSpectrum closed_spectrum_g(const ConeSpec& spec,
                                   double group_tolerance = kGroupTolerance) {
  spec.validate();
  if (!is_g_family(spec)) {
    throw FamilyError("closed_spectrum_g: " + to_string(spec) +
                      " is not K1 v (cycles k >= 3 u qK2 u sK1) with t, q, s >= 1");
  }
  const auto p = g_family_params(spec);
  std::vector<double> values;
  std::vector<std::string> tags;
  detail::append_quartic(values, tags, p);
  detail::append(values, tags, 5.0, "5", p.t - 1);
  detail::append(values, tags, 3.0, "3", p.q - 1);
  detail::append(values, tags, 1.0, "1", p.s + p.q - 1);
  detail::append_cycles(values, tags, spec.cycles);
  return QSpectrum(std::move(values), group_tolerance, std::move(tags));
}

/// Q-spectrum of the F-family:
/// {rho1..rho4, 1^(s+q-1), 2^(2), 3^(q-1), 5^(t-1), 3+2cos(2j pi/k_i)},
/// with s one more than the number of isolated vertices and t one more than
/// the number of cycles.
inline QSpectrum closed_spectrum_f(const ConeSpec& spec,
                                   double group_tolerance = kGroupTolerance) {
  spec.validate();
  if (!is_f_family(spec)) {
    throw FamilyError("closed_spectrum_f: " + to_string(spec) +
                      " is not K1 v (K13 u cycles k >= 3 u qK2 u (s-1)K1) with q >= 1");
  }
  const auto p = f_family_params(spec);
  std::vector<double> values;
  std::vector<std::string> tags;
  detail::append_quartic(values, tags, p);
  detail::append(values, tags, 1.0, "1", p.s + p.q - 1);
  detail::append(values, tags, 2.0, "2", 2);
  detail::append(values, tags, 3.0, "3", p.q - 1);
  detail::append(values, tags, 5.0, "5", p.t - 1);
  detail::append_cycles(values, tags, spec.cycles);
  return QSpectrum(std::move(values), group_tolerance, std::move(tags));
}

/// Closed form for whichever family the spec belongs to.
inline QSpectrum closed_spectrum(const ConeSpec& spec, double group_tolerance = kGroupTolerance) {
  if (is_g_family(spec)) return closed_spectrum_g(spec, group_tolerance);
  if (is_f_family(spec)) return closed_spectrum_f(spec, group_tolerance);
  throw FamilyError("no closed form for " + to_string(spec));
}

/// Largest Q-eigenvalue of K1 v (cycles/digons u qK2 u sK1). Only (n, q, s)
/// enter; the cycle multiset does not.
inline double chi1_multigraph(const ConeSpec& spec) {
  spec.validate();
  if (!is_g_family(spec, /*allow_digons=*/true)) {
    throw FamilyError("chi1_multigraph: " + to_string(spec) +
                      " is not K1 v (cycles k >= 2 u qK2 u sK1) with t, q, s >= 1");
  }
  const auto p = g_family_params(spec);
  return quartic_roots(quartic_coeffs(p.n, p.q, p.s))[0];
}

// ---------------------------------------------------------------------------
// Explicit eigenvectors.

enum class EigenLabel {
  kAlpha,      ///< eigenvalue 1
  kBeta,       ///< eigenvalue 3
  kGamma,      ///< eigenvalue 5
  kDelta,      ///< eigenvalue 2 (K13 leaves, F-family only)
  kCycleLift,  ///< 3 + 2cos(2j pi/k) lifted from a cycle block
  kPsi,        ///< quartic roots
};

inline const char* label_name(EigenLabel l) {
  switch (l) {
    case EigenLabel::kAlpha: return "alpha";
    case EigenLabel::kBeta: return "beta";
    case EigenLabel::kGamma: return "gamma";
    case EigenLabel::kDelta: return "delta";
    case EigenLabel::kCycleLift: return "cycle-lift";
    case EigenLabel::kPsi: return "psi";
  }
  return "?";
}

struct EigenPair {
  double eigenvalue = 0.0;
  std::vector<double> vector;
  double residual = 0.0;  ///< ||Qx - lambda x||_inf / max(1, ||x||_inf)
};

struct EigenFamily {
  EigenLabel label;
  std::vector<EigenPair> members;
};

inline double eigen_residual(const Matrix& q, const EigenPair& p) {
  const auto y = q.apply(p.vector);
  double r = 0.0;
  double xmax = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    r = std::max(r, std::abs(y[i] - p.eigenvalue * p.vector[i]));
    xmax = std::max(xmax, std::abs(p.vector[i]));
  }
  return r / std::max(1.0, xmax);
}

/// Rank of a set of vectors by modified Gram-Schmidt; a vector whose
/// remainder has norm <= tol * (its original norm) counts as dependent.
inline std::size_t numeric_rank(const std::vector<std::vector<double>>& vectors,
                                double tol = 1e-9) {
  std::vector<std::vector<double>> basis;
  for (const auto& v : vectors) {
    std::vector<double> w = v;
    double norm0 = 0.0;
    for (double x : w) norm0 += x * x;
    norm0 = std::sqrt(norm0);
    if (norm0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        double dot = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) dot += w[i] * b[i];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= dot * b[i];
      }
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm <= tol * norm0) continue;
    for (double& x : w) x /= norm;
    basis.push_back(std::move(w));
  }
  return basis.size();
}

namespace detail {

class FamilyBuilder {
 public:
  FamilyBuilder(const ConeSpec& spec, double tol)
      : n_(spec.order()), q_(q_matrix(spec.realize())), tol_(tol) {}

  std::vector<double> zeros() const { return std::vector<double>(n_, 0.0); }

  void add(EigenLabel label, double lambda, std::vector<double> x) {
    EigenPair pair{lambda, std::move(x), 0.0};
    pair.residual = eigen_residual(q_, pair);
    if (!(pair.residual <= tol_)) {
      throw ConstructionError(std::string("eigenvector ") + label_name(label) + " for " +
                              std::to_string(lambda) + " has residual " +
                              std::to_string(pair.residual));
    }
    for (auto& f : families_) {
      if (f.label == label) {
        f.members.push_back(std::move(pair));
        return;
      }
    }
    families_.push_back({label, {std::move(pair)}});
  }

  /// x(w_j) = 1, x(w_{j+1}) = -1 over vertices sharing one neighbour.
  void pendant_alphas(std::size_t begin, std::size_t count) {
    for (std::size_t j = 0; j + 1 < count; ++j) {
      auto x = zeros();
      x[begin + j] = 1.0;
      x[begin + j + 1] = -1.0;
      add(EigenLabel::kAlpha, 1.0, std::move(x));
    }
  }

  /// (1, -1) on each K2 pair.
  void pair_alphas(std::size_t begin, std::size_t pairs) {
    for (std::size_t j = 0; j < pairs; ++j) {
      auto x = zeros();
      x[begin + 2 * j] = 1.0;
      x[begin + 2 * j + 1] = -1.0;
      add(EigenLabel::kAlpha, 1.0, std::move(x));
    }
  }

  /// (1, 1, -1, -1) on consecutive K2 pairs.
  void pair_betas(std::size_t begin, std::size_t pairs) {
    for (std::size_t j = 0; j + 1 < pairs; ++j) {
      auto x = zeros();
      x[begin + 2 * j] = x[begin + 2 * j + 1] = 1.0;
      x[begin + 2 * j + 2] = x[begin + 2 * j + 3] = -1.0;
      add(EigenLabel::kBeta, 3.0, std::move(x));
    }
  }

  /// -k_{j+1} on the first cycle, k_1 on cycle j+1.
  void cycle_gammas(const std::vector<int>& cycles, const std::vector<std::size_t>& begin) {
    for (std::size_t j = 1; j < cycles.size(); ++j) {
      auto x = zeros();
      for (int i = 0; i < cycles[0]; ++i) x[begin[0] + i] = -static_cast<double>(cycles[j]);
      for (int i = 0; i < cycles[j]; ++i) x[begin[j] + i] = static_cast<double>(cycles[0]);
      add(EigenLabel::kGamma, 5.0, std::move(x));
    }
  }

  /// Zero-sum eigenvectors of A(C_k) for 2cos(2j pi/k), j = 1..k-1, placed
  /// on the cycle block: cosine modes for 2j <= k, sine modes for 2j > k.
  void cycle_lifts(const std::vector<int>& cycles, const std::vector<std::size_t>& begin) {
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      const int k = cycles[c];
      for (int j = 1; j < k; ++j) {
        auto x = zeros();
        const int mode = 2 * j <= k ? j : k - j;
        for (int l = 0; l < k; ++l) {
          const double angle = 2.0 * std::numbers::pi * static_cast<double>(mode) *
                               static_cast<double>(l) / static_cast<double>(k);
          x[begin[c] + l] = 2 * j <= k ? std::cos(angle) : std::sin(angle);
        }
        add(EigenLabel::kCycleLift, cycle_value(j, k), std::move(x));
      }
    }
  }

  std::vector<EigenFamily> take() { return std::move(families_); }

 private:
  std::size_t n_;
  Matrix q_;
  double tol_;
  std::vector<EigenFamily> families_;
};

}  // namespace detail

inline constexpr double kResidualTolerance = 1e-8;

/// Every explicit eigenvector of a G- or F-family cone, indexed by the
/// realization's vertex order. Each vector is residual-checked against the
/// realized Q; a failure throws ConstructionError.
inline std::vector<EigenFamily> eigenvector_families(const ConeSpec& spec,
                                                     double tol = kResidualTolerance) {
  spec.validate();
  const bool g_family = is_g_family(spec);
  if (!g_family && !is_f_family(spec)) {
    throw FamilyError("eigenvector_families: no closed form for " + to_string(spec));
  }
  const auto lay = spec.layout();
  const std::size_t s_iso = spec.num_isolated();
  const std::size_t q = spec.num_k2();
  detail::FamilyBuilder fb(spec, tol);

  fb.pendant_alphas(lay.isolated_begin, s_iso);
  fb.pair_alphas(lay.k2_begin, q);
  if (!g_family && s_iso >= 1) {
    // (2 on one pendant, -1 on the three K13 leaves, 1 on its centre)
    auto x = fb.zeros();
    x[lay.isolated_begin] = 2.0;
    const std::size_t st = lay.star_begin[0];
    x[st] = x[st + 1] = x[st + 2] = -1.0;
    x[st + 3] = 1.0;
    fb.add(EigenLabel::kAlpha, 1.0, std::move(x));
  }
  fb.pair_betas(lay.k2_begin, q);
  fb.cycle_gammas(spec.cycles, lay.cycle_begin);
  if (!g_family && !spec.cycles.empty()) {
    // (-6/k1 on the first cycle, 1,1,1 on the leaves, 3 on the centre)
    auto x = fb.zeros();
    const double k1 = spec.cycles[0];
    for (int i = 0; i < spec.cycles[0]; ++i) x[lay.cycle_begin[0] + i] = -6.0 / k1;
    const std::size_t st = lay.star_begin[0];
    x[st] = x[st + 1] = x[st + 2] = 1.0;
    x[st + 3] = 3.0;
    fb.add(EigenLabel::kGamma, 5.0, std::move(x));
  }
  if (!g_family) {
    const std::size_t st = lay.star_begin[0];
    for (std::size_t i = 1; i <= 2; ++i) {
      auto x = fb.zeros();
      x[st] = -1.0;
      x[st + i] = 1.0;
      fb.add(EigenLabel::kDelta, 2.0, std::move(x));
    }
  }
  fb.cycle_lifts(spec.cycles, lay.cycle_begin);

  const auto p = g_family ? g_family_params(spec) : f_family_params(spec);
  const auto roots = quartic_roots(quartic_coeffs(p.n, p.q, p.s));
  for (double rho : roots) {
    auto x = fb.zeros();
    if (g_family) {
      for (std::size_t i = 0; i < s_iso; ++i) x[lay.isolated_begin + i] = (rho - 3) * (rho - 5);
      for (std::size_t i = 0; i < 2 * q; ++i) x[lay.k2_begin + i] = (rho - 1) * (rho - 5);
      for (std::size_t v = lay.k2_begin + 2 * q; v < lay.apex; ++v) x[v] = (rho - 1) * (rho - 3);
      x[lay.apex] = (rho - 1) * (rho - 3) * (rho - 5);
    } else {
      for (std::size_t i = 0; i < s_iso; ++i) x[lay.isolated_begin + i] = 1.0 / (rho - 1);
      for (std::size_t i = 0; i < 2 * q; ++i) x[lay.k2_begin + i] = 1.0 / (rho - 3);
      const std::size_t st = lay.star_begin[0];
      for (std::size_t v = lay.k2_begin + 2 * q; v < st; ++v) x[v] = 1.0 / (rho - 5);
      const double leaf = (rho - 3) / ((rho - 1) * (rho - 5));
      x[st] = x[st + 1] = x[st + 2] = leaf;
      x[st + 3] = (rho + 1) / ((rho - 1) * (rho - 5));
      x[lay.apex] = 1.0;
    }
    fb.add(EigenLabel::kPsi, rho, std::move(x));
  }
  return fb.take();
}

// ---------------------------------------------------------------------------
// Mate constructions.

/// Replaces one C3 with K13 and drops one isolated vertex. The result is
/// Q-cospectral with the input and has a different degree sequence.
inline ConeSpec claw_mate(const ConeSpec& spec) {
  spec.validate();
  if (!is_g_family(spec)) {
    throw InapplicableError("claw_mate: " + to_string(spec) + " is not a G-family cone");
  }
  auto c3 = std::find(spec.cycles.begin(), spec.cycles.end(), 3);
  if (c3 == spec.cycles.end()) {
    throw InapplicableError("claw_mate: " + to_string(spec) + " has no C3 block");
  }
  ConeSpec out = spec;
  out.cycles.erase(out.cycles.begin() + (c3 - spec.cycles.begin()));
  out.paths.erase(std::find(out.paths.begin(), out.paths.end(), 1));
  out.stars13 = 1;
  return out;
}

/// K1 v (C4 u P_{k-3} u P3 u (q-2)K2 u sK1) for a single-cycle G-family
/// cone with k >= 5 and q >= 2. Same order, size and degree sequence as
/// the input for every such k.
inline ConeSpec split_cycle_candidate(const ConeSpec& spec) {
  spec.validate();
  if (!is_g_family(spec) || spec.num_cycles() != 1) {
    throw InapplicableError("split_cycle_candidate: " + to_string(spec) +
                            " is not K1 v (C_k u qK2 u sK1)");
  }
  const int k = spec.cycles[0];
  const std::size_t q = spec.num_k2();
  if (k < 5 || q < 2) {
    throw InapplicableError("split_cycle_candidate: needs k >= 5 and q >= 2 in " + to_string(spec));
  }
  ConeSpec out;
  out.cycles = {4};
  out.paths = {k - 3, 3};
  out.paths.insert(out.paths.end(), q - 2, 2);
  out.paths.insert(out.paths.end(), spec.num_isolated(), 1);
  return out;
}

struct MateCandidate {
  ConeSpec candidate;
  double spectral_distance = 0.0;  ///< measured, not asserted
};

/// Even-k candidate mate. Cospectrality is only measured: the returned
/// distance may be zero or not.
inline MateCandidate split_cycle_mate_even(const ConeSpec& spec) {
  spec.validate();
  if (!is_g_family(spec) || spec.num_cycles() != 1) {
    throw InapplicableError("split_cycle_mate_even: " + to_string(spec) +
                            " is not K1 v (C_k u qK2 u sK1)");
  }
  const int k = spec.cycles[0];
  if (k % 2 != 0 || k < 6) {
    throw InapplicableError("split_cycle_mate_even: needs an even cycle of length >= 6");
  }
  if (spec.num_k2() < 2) throw InapplicableError("split_cycle_mate_even: needs q >= 2");
  MateCandidate out{split_cycle_candidate(spec), 0.0};
  out.spectral_distance =
      spectrum_compare(q_spectrum(spec.realize()), q_spectrum(out.candidate.realize()));
  return out;
}

}  // namespace qcone
