#include <gtest/gtest.h>

#include <random>

#include "qcone/dqs.hpp"
#include "qcone/moments.hpp"
#include "test_support.hpp"

using namespace qcone;

namespace {

ConeSpec g_spec(std::vector<int> cycles, int q, int s) {
  ConeSpec spec;
  spec.cycles = std::move(cycles);
  spec.paths.insert(spec.paths.end(), static_cast<std::size_t>(q), 2);
  spec.paths.insert(spec.paths.end(), static_cast<std::size_t>(s), 1);
  return spec;
}

// Exact T_r = tr(Q^r) and S4 = tr(A^4) by integer matrix powers.
MomentVector moments_by_matrix_powers(const MultiGraph& g) {
  const std::size_t n = g.order();
  using Mat = std::vector<std::int64_t>;
  auto mul = [n](const Mat& a, const Mat& b) {
    Mat c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
    return c;
  };
  auto trace = [n](const Mat& a) {
    std::int64_t t = 0;
    for (std::size_t i = 0; i < n; ++i) t += a[i * n + i];
    return t;
  };
  Mat q(n * n), a(n * n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      a[u * n + v] = g.mult(u, v);
      q[u * n + v] = u == v ? static_cast<std::int64_t>(g.degree(u)) : g.mult(u, v);
    }
  const Mat q2 = mul(q, q), q3 = mul(q2, q), q4 = mul(q3, q);
  const Mat a2 = mul(a, a);
  return {trace(q), trace(q2), trace(q3), trace(q4), trace(mul(a2, a2))};
}

}  // namespace

TEST(MomentsFromCounts, FlagshipCone) {
  const auto g = g_spec({3}, 1, 1).realize();
  const auto c = count_vector(g);
  EXPECT_EQ(c.deg2, 72);
  EXPECT_EQ(c.deg3, 314);
  EXPECT_EQ(c.deg4, 1572);
  EXPECT_EQ(moments_from_counts(g), (MomentVector{20, 92, 560, 3876, 148}));
  EXPECT_EQ(moments_by_matrix_powers(g), (MomentVector{20, 92, 560, 3876, 148}));
}

TEST(MomentsFromCounts, SmallGraphs) {
  EXPECT_EQ(moments_from_counts(path_graph(2)), (MomentVector{2, 4, 8, 16, 2}));
  EXPECT_EQ(moments_from_counts(edgeless(5)), (MomentVector{}));
  const auto k3 = moments_from_counts(complete_graph(3));
  EXPECT_EQ(k3.t1, 6);
  EXPECT_EQ(k3.t2, 18);
  EXPECT_EQ(k3.t3, 66);
  EXPECT_THROW(moments_from_counts(cone(digon())), UnsupportedError);
}

TEST(MomentsFromSpectrum, Examples) {
  const auto m = moments_from_spectrum(QSpectrum({2.0, 0.0}));
  EXPECT_EQ(m.t, (std::array<double, 4>{2, 4, 8, 16}));
  EXPECT_FALSE(m.s4.has_value());
  const auto z = moments_from_spectrum(QSpectrum({0.0, 0.0, 0.0}));
  EXPECT_EQ(z.t, (std::array<double, 4>{0, 0, 0, 0}));
  const auto g = g_spec({3}, 1, 1).realize();
  EXPECT_LE(relative_discrepancy(moments_from_counts(g), moments_from_spectrum(g)), 1e-7);
  ASSERT_TRUE(moments_from_spectrum(g).s4.has_value());
}

TEST(MomentsFromSpectrum, MatchCountsOnRandomGraphs) {
  std::mt19937_64 rng(0x30e01);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = fixtures::random_graph(rng, 1 + trial % 12, 0.15 + 0.7 * (trial % 6) / 5.0);
    const auto exact = moments_from_counts(g);
    EXPECT_EQ(exact, moments_by_matrix_powers(g));
    EXPECT_LE(relative_discrepancy(exact, moments_from_spectrum(g)), 1e-7);
  }
}

TEST(CountsClosedForm, Examples) {
  const auto a = counts_closed_form(g_spec({3}, 1, 1));
  EXPECT_EQ(a.p3, 26);
  EXPECT_EQ(a.c4, 3);
  EXPECT_EQ(a.t_bar, 440);
  EXPECT_EQ(a.f_bar, 460);
  EXPECT_EQ(a.c3, 5);
  EXPECT_EQ(counts_closed_form(g_spec({4}, 1, 1)).c4, 5);
  EXPECT_EQ(count_subgraphs(g_spec({4}, 1, 1).realize(), Pattern::kC4), 5);
  EXPECT_EQ(counts_closed_form(g_spec({5}, 2, 1)).t_bar, 864);
  EXPECT_THROW(counts_closed_form(parse_cone_spec("K1 v P4 + K2 + K1")), FamilyError);
}

TEST(CountsClosedForm, EqualBruteForceOnGrid) {
  int checked = 0;
  for (int k1 = 3; k1 <= 10; ++k1)
    for (int k2 = 0; k2 <= 6; ++k2) {
      if (k2 == 1 || k2 == 2) continue;
      for (int q = 1; q <= 4; ++q)
        for (int s = 1; s <= 4; ++s) {
          std::vector<int> cycles{k1};
          if (k2 >= 3) cycles.push_back(k2);
          const auto spec = g_spec(cycles, q, s);
          if (spec.order() > 40) continue;
          EXPECT_EQ(counts_closed_form(spec), count_vector(spec.realize())) << to_string(spec);
          ++checked;
        }
    }
  EXPECT_GT(checked, 300);
}

TEST(DeltaMoments, PathComparison) {
  const auto g = g_spec({5}, 2, 1);
  const auto fstar = parse_cone_spec("K1 v P7 + K2 + K1");
  ASSERT_EQ(fstar.order(), g.order());
  const auto d = delta_moments(g, fstar);
  EXPECT_EQ(d.t4, -4);
  EXPECT_EQ(d.s4, 0);
  EXPECT_EQ(d.long_paths, 1);
  const auto direct = moments_from_counts(fstar.realize());
  const auto base = moments_from_counts(g.realize());
  EXPECT_EQ(direct.t4 - base.t4, d.t4);
  EXPECT_EQ(direct.s4 - base.s4, d.s4);
}

TEST(DeltaMoments, SplitCycleCandidateHasZeroDifference) {
  const auto g = g_spec({6}, 2, 1);
  const auto f = parse_cone_spec("K1 v C4 + P3 + P3 + 1K1");
  const auto d = delta_moments(g, f);
  EXPECT_EQ(d.t4, 0);
  EXPECT_EQ(d.s4, 8);
  EXPECT_EQ(moments_from_counts(f.realize()).t4, moments_from_counts(g.realize()).t4);
}

TEST(DeltaMoments, SelfAndMismatch) {
  const auto g = g_spec({4, 3}, 2, 2);
  EXPECT_EQ(delta_moments(g, g), (MomentDelta{0, 0, 0}));
  EXPECT_THROW(delta_moments(g, g_spec({5}, 2, 2)), InapplicableError);
  EXPECT_THROW(delta_moments(g, claw_mate(g)), InapplicableError);
  EXPECT_THROW(delta_moments(parse_cone_spec("K1 v P4 + K1"), g), InapplicableError);
}

TEST(DeltaMoments, MatchDirectDifferencesOverFamilies) {
  int pairs = 0;
  for (int k = 3; k <= 9; ++k)
    for (int q = 1; q <= 3; ++q)
      for (int s = 1; s <= 2; ++s) {
        const auto g = g_spec({k}, q, s);
        const auto prof = degree_profile(g);
        const auto base = moments_from_counts(g.realize());
        for (const auto& other : enumerate_family(g.order(), prof)) {
          const auto d = delta_moments(g, other);
          const auto m = moments_from_counts(other.realize());
          EXPECT_EQ(m.s4 - base.s4, d.s4) << to_string(other);
          EXPECT_EQ(m.t4 - base.t4, d.t4) << to_string(other);
          if (other.cycles.empty()) {
            EXPECT_LT(m.t4, base.t4) << to_string(other);
          }
          ++pairs;
        }
      }
  EXPECT_GE(pairs, 100);
}

TEST(DegreeSystem, FiveCycleExamples) {
  const auto g = g_spec({5}, 2, 1);
  const auto m = moments_from_counts(g.realize());
  const std::int64_t n = 11;
  const auto a = solve_degree_system(n, m.t1, m.t2, m.t3, n - 1, 0);
  ASSERT_TRUE(a.feasible);
  EXPECT_EQ(std::tie(a.n1, a.n2, a.n3), std::make_tuple(1, 4, 5));
  ASSERT_TRUE(a.implied_triangles.has_value());
  EXPECT_EQ(*a.implied_triangles, count_subgraphs(g.realize(), Pattern::kC3));

  const auto b = solve_degree_system(n, m.t1, m.t2, m.t3, n - 1, 1);
  ASSERT_TRUE(b.feasible);
  EXPECT_EQ(std::tie(b.n1, b.n2, b.n3), std::make_tuple(0, 7, 2));

  const auto c = solve_degree_system(n, m.t1, m.t2, m.t3, n - 1, 2);
  EXPECT_FALSE(c.feasible);
  EXPECT_EQ(c.n1, -1);
}

TEST(DegreeSystem, MatchesFamilyFormula) {
  // n1 = s - n4, n2 = 2q + 3 n4, n3 = n - 2q - s - 1 - 3 n4.
  for (int k = 3; k <= 12; ++k)
    for (int q = 1; q <= 4; ++q)
      for (int s = 1; s <= 4; ++s) {
        const auto g = g_spec({k}, q, s);
        const auto m = moments_from_counts(g.realize());
        const auto n = static_cast<std::int64_t>(g.order());
        for (std::int64_t n4 = 0; n4 <= s; ++n4) {
          const auto sol = solve_degree_system(n, m.t1, m.t2, m.t3, n - 1, n4);
          EXPECT_EQ(sol.n1, s - n4);
          EXPECT_EQ(sol.n2, 2 * q + 3 * n4);
          EXPECT_EQ(sol.n3, n - 2 * q - s - 1 - 3 * n4);
          EXPECT_EQ(sol.feasible, sol.n3 >= 0);
        }
      }
}

TEST(Properties, MatesShareFirstFourMoments) {
  for (int extra = 0; extra <= 6; ++extra)
    for (int q = 1; q <= 3; ++q) {
      ConeSpec g = g_spec({3}, q, 1 + extra % 3);
      if (extra >= 3) g.cycles.push_back(extra + 1);
      const auto a = moments_from_counts(g.realize());
      const auto b = moments_from_counts(claw_mate(g).realize());
      EXPECT_EQ(std::tie(a.t1, a.t2, a.t3, a.t4), std::tie(b.t1, b.t2, b.t3, b.t4));
    }
  for (int k : {6, 8, 10})
    for (int q = 2; q <= 4; ++q) {
      const auto g = g_spec({k}, q, 1);
      const auto a = moments_from_counts(g.realize());
      const auto b = moments_from_counts(split_cycle_candidate(g).realize());
      EXPECT_EQ(std::tie(a.t1, a.t2, a.t3, a.t4), std::tie(b.t1, b.t2, b.t3, b.t4));
    }
}

TEST(Properties, CountInvariants) {
  std::mt19937_64 rng(0x30e02);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = fixtures::random_graph(rng, 1 + trial % 16, 0.4);
    const auto c = count_vector(g);
    std::int64_t p3 = 0;
    for (auto d : g.degrees()) {
      const auto x = static_cast<std::int64_t>(d);
      p3 += x * (x - 1) / 2;
    }
    EXPECT_EQ(c.p3, p3);
    const auto m = moments_from_count_vector(c);
    EXPECT_EQ(m.t1, 2 * static_cast<std::int64_t>(g.size()));
    EXPECT_GE(m.t4, 0);
    EXPECT_GE(m.s4, 0);
  }
}
