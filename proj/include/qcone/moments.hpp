#pragma once

// Q-spectral moments T_r = sum chi_i^r and the adjacency moment S4, from
// subgraph counts (exact integers) and from spectra (floating point).
//
//   T1 = 2m
//   T2 = sum d^2 + 2m
//   T3 = 6 #C3 + sum d^3 + 3 sum d^2
//   S4 = 2m + 4 #P3 + 8 #C4
//   T4 = S4 + tbar + fbar + sum d^4 + 4 sum d^3

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "qcone/cone_spec.hpp"
#include "qcone/eigen.hpp"
#include "qcone/error.hpp"
#include "qcone/graphkit.hpp"

namespace qcone {

struct MomentVector {
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  std::int64_t t3 = 0;
  std::int64_t t4 = 0;
  std::int64_t s4 = 0;
  friend bool operator==(const MomentVector&, const MomentVector&) = default;
};

struct CountVector {
  std::int64_t edges = 0;
  std::int64_t p3 = 0;
  std::int64_t c3 = 0;
  std::int64_t c4 = 0;
  std::int64_t t_bar = 0;
  std::int64_t f_bar = 0;
  std::int64_t deg2 = 0;  ///< sum of squared degrees
  std::int64_t deg3 = 0;
  std::int64_t deg4 = 0;
  friend bool operator==(const CountVector&, const CountVector&) = default;
};

/// Brute-force counts of a simple graph (n <= 64).
inline CountVector count_vector(const MultiGraph& g) {
  require_simple(g, "count_vector");
  CountVector c;
  c.edges = static_cast<std::int64_t>(g.size());
  c.p3 = count_subgraphs(g, Pattern::kP3);
  c.c3 = count_subgraphs(g, Pattern::kC3);
  c.c4 = count_subgraphs(g, Pattern::kC4);
  const auto tf = t_bar_f_bar(g);
  c.t_bar = tf.t_bar;
  c.f_bar = tf.f_bar;
  for (auto d : g.degrees()) {
    const auto x = static_cast<std::int64_t>(d);
    c.deg2 += x * x;
    c.deg3 += x * x * x;
    c.deg4 += x * x * x * x;
  }
  return c;
}

inline MomentVector moments_from_count_vector(const CountVector& c) {
  MomentVector mv;
  mv.t1 = 2 * c.edges;
  mv.t2 = c.deg2 + 2 * c.edges;
  mv.t3 = 6 * c.c3 + c.deg3 + 3 * c.deg2;
  mv.s4 = 2 * c.edges + 4 * c.p3 + 8 * c.c4;
  mv.t4 = mv.s4 + c.t_bar + c.f_bar + c.deg4 + 4 * c.deg3;
  return mv;
}

inline MomentVector moments_from_counts(const MultiGraph& g) {
  return moments_from_count_vector(count_vector(g));
}

struct SpectralMoments {
  std::array<double, 4> t{};  ///< T1..T4
  std::optional<double> s4;
};

/// Power sums of a spectrum; S4 is filled when an adjacency spectrum is given.
inline SpectralMoments moments_from_spectrum(const QSpectrum& q,
                                             const QSpectrum* adjacency = nullptr) {
  SpectralMoments out;
  for (double x : q.values()) {
    double p = 1.0;
    for (int r = 0; r < 4; ++r) {
      p *= x;
      out.t[static_cast<std::size_t>(r)] += p;
    }
  }
  if (adjacency != nullptr) {
    double s = 0.0;
    for (double x : adjacency->values()) s += x * x * x * x;
    out.s4 = s;
  }
  return out;
}

inline SpectralMoments moments_from_spectrum(const MultiGraph& g) {
  const auto aspec = adjacency_spectrum(g);
  return moments_from_spectrum(q_spectrum(g), &aspec);
}

/// Largest relative difference |exact - spectral| / max(1, |exact|) over
/// T1..T4 and S4.
inline double relative_discrepancy(const MomentVector& exact, const SpectralMoments& approx) {
  const std::array<double, 5> e{static_cast<double>(exact.t1), static_cast<double>(exact.t2),
                                static_cast<double>(exact.t3), static_cast<double>(exact.t4),
                                static_cast<double>(exact.s4)};
  const std::array<double, 5> a{approx.t[0], approx.t[1], approx.t[2], approx.t[3],
                                approx.s4.value_or(e[4])};
  double worst = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    worst = std::max(worst, std::abs(e[i] - a[i]) / std::max(1.0, std::abs(e[i])));
  return worst;
}

/// Closed-form counts for G = K1 v (C_{k1} u ... u C_{kt} u qK2 u sK1).
///
/// #C4 uses n - 2q - s - 1 + #{k_i = 4}; #C3 = (n - 1 - 2q - s) + q +
/// #{k_i = 3} (one apex triangle per non-apex edge, plus the C3 blocks).
inline CountVector counts_closed_form(const ConeSpec& spec) {
  spec.validate();
  if (!is_g_family(spec)) {
    throw FamilyError("counts_closed_form: " + to_string(spec) + " is not a G-family cone");
  }
  const auto p = g_family_params(spec);
  const std::int64_t n = p.n, q = p.q, s = p.s;
  const auto c3_blocks = static_cast<std::int64_t>(spec.count_cycles_of_length(3));
  const auto c4_blocks = static_cast<std::int64_t>(spec.count_cycles_of_length(4));
  const std::int64_t cyc = n - 1 - 2 * q - s;
  CountVector c;
  c.edges = static_cast<std::int64_t>(spec.size());
  c.p3 = 3 * (n - 1 - s) - 4 * q + (n - 1) * (n - 2) / 2;
  c.c4 = n - 2 * q - s - 1 + c4_blocks;
  c.c3 = cyc + q + c3_blocks;
  c.t_bar = 8 * ((n + 5) * (n - s - 1) - q * (n + 7) + 9 * c3_blocks);
  c.f_bar = 4 * (3 * (n + 2) * (n - 1 - 2 * q) + 4 * q * n - s * (2 * n + 7));
  const std::int64_t d1 = n - 1;
  // degrees: apex n-1, s of degree 1, 2q of degree 2, cycle vertices 3
  c.deg2 = d1 * d1 + s + 4 * 2 * q + 9 * cyc;
  c.deg3 = d1 * d1 * d1 + s + 8 * 2 * q + 27 * cyc;
  c.deg4 = d1 * d1 * d1 * d1 + s + 16 * 2 * q + 81 * cyc;
  return c;
}

struct MomentDelta {
  std::int64_t s4 = 0;  ///< S4(other) - S4(G)
  std::int64_t t4 = 0;  ///< T4(other) - T4(G)
  std::int64_t long_paths = 0;  ///< r: paths with >= 3 vertices in `other`
  friend bool operator==(const MomentDelta&, const MomentDelta&) = default;
};

/// Closed-form S4/T4 differences between a G-family cone and a cone over
/// cycles and paths (F* when it has no cycles) with the same degree sequence:
///   dS4 = 8 (#{k'=4} - #{k=4})
///   dT4 = dS4 + 72 (#{k'=3} - #{k=3}) - 4r
inline MomentDelta delta_moments(const ConeSpec& g, const ConeSpec& other) {
  g.validate();
  other.validate();
  if (!is_g_family(g)) {
    throw InapplicableError("delta_moments: " + to_string(g) + " is not a G-family cone");
  }
  if (other.stars13 != 0 ||
      std::any_of(other.cycles.begin(), other.cycles.end(), [](int k) { return k < 3; })) {
    throw InapplicableError("delta_moments: " + to_string(other) +
                            " must be a cone over cycles (k >= 3) and paths");
  }
  if (g.order() != other.order() || g.size() != other.size() ||
      g.realize().degree_sequence() != other.realize().degree_sequence()) {
    throw InapplicableError("delta_moments: " + to_string(g) + " and " + to_string(other) +
                            " have different degree sequences");
  }
  auto count = [](const ConeSpec& c, int k) {
    return static_cast<std::int64_t>(c.count_cycles_of_length(k));
  };
  MomentDelta d;
  d.long_paths = static_cast<std::int64_t>(other.num_long_paths());
  d.s4 = 8 * (count(other, 4) - count(g, 4));
  d.t4 = d.s4 + 72 * (count(other, 3) - count(g, 3)) - 4 * d.long_paths;
  return d;
}

struct DegreeSolution {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::int64_t n3 = 0;
  std::int64_t n4 = 0;
  bool feasible = false;
  /// Triangle count implied by T3 for this degree profile, when integral.
  std::optional<std::int64_t> implied_triangles;
  std::string reason;
};

/// Degree counts (n1, n2, n3) of the non-maximum vertices of a graph with
/// one vertex of degree d1 and all others of degree 1..4, given n4.
///
/// Three linear equations fix the solution: the vertex count n - 1, the
/// degree sum T1 - d1, and the squared-degree sum T2 - T1 - d1^2. T3 is
/// then used to recover the triangle count implied by the profile.
inline DegreeSolution solve_degree_system(std::int64_t n, std::int64_t t1, std::int64_t t2,
                                          std::int64_t t3, std::int64_t d1, std::int64_t n4) {
  DegreeSolution sol;
  sol.n4 = n4;
  const std::int64_t a = n - 1 - n4;             // n1 + n2 + n3
  const std::int64_t b = t1 - d1 - 4 * n4;       // n1 + 2 n2 + 3 n3
  const std::int64_t c = t2 - t1 - d1 * d1 - 16 * n4;  // n1 + 4 n2 + 9 n3
  const std::int64_t twice_n3 = c - 3 * b + 2 * a;
  if (twice_n3 % 2 != 0) {
    sol.reason = "non-integer solution";
    return sol;
  }
  sol.n3 = twice_n3 / 2;
  sol.n2 = b - a - 2 * sol.n3;
  sol.n1 = a - sol.n2 - sol.n3;
  if (n4 < 0 || sol.n1 < 0 || sol.n2 < 0 || sol.n3 < 0) {
    sol.reason = "negative degree count";
    return sol;
  }
  sol.feasible = true;
  const std::int64_t deg2 = d1 * d1 + sol.n1 + 4 * sol.n2 + 9 * sol.n3 + 16 * n4;
  const std::int64_t deg3 = d1 * d1 * d1 + sol.n1 + 8 * sol.n2 + 27 * sol.n3 + 64 * n4;
  const std::int64_t rest = t3 - deg3 - 3 * deg2;
  if (rest >= 0 && rest % 6 == 0) sol.implied_triangles = rest / 6;
  return sol;
}

}  // namespace qcone
