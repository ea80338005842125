// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qcone/closed_form.hpp"
#include "qcone/cone_spec.hpp"
#include "qcone/dqs.hpp"
#include "qcone/eigen.hpp"
#include "qcone/graphkit.hpp"
#include "qcone/moments.hpp"
#include "test_support.hpp"

namespace {

using namespace qcone;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(const char* id, bool ok, const std::string& detail, double seconds) {
  std::printf("%s %s  %s  [%.2fs]\n", id, ok ? "PASS" : "FAIL", detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

/// Runs body, which fills detail and returns pass/fail, and prints its line.
void criterion(const char* id, const std::function<bool(std::string&)>& body) {
  const auto t0 = Clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
  }
  report(id, ok, detail, std::chrono::duration<double>(Clock::now() - t0).count());
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

/// Non-increasing cycle multisets of the given size over [lo, hi].
void cycle_multisets(int size, int lo, int hi, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == size) {
    out.push_back(cur);
    return;
  }
  const int top = cur.empty() ? hi : cur.back();
  for (int k = top; k >= lo; --k) {
    cur.push_back(k);
    cycle_multisets(size, lo, hi, cur, out);
    cur.pop_back();
  }
}

ConeSpec make_spec(const std::vector<int>& cycles, int q, int s, int stars = 0) {
  ConeSpec spec;
  spec.cycles = cycles;
  spec.paths.insert(spec.paths.end(), static_cast<std::size_t>(q), 2);
  spec.paths.insert(spec.paths.end(), static_cast<std::size_t>(s), 1);
  spec.stars13 = stars;
  return spec;
}

/// G-family grid: t <= 3 cycles of length 3..12, q and s in 1..4, 7 <= n <= 60.
std::vector<ConeSpec> g_grid() {
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  for (int t = 1; t <= 3; ++t) cycle_multisets(t, 3, 12, cur, sets);
  std::vector<ConeSpec> out;
  for (const auto& c : sets)
    for (int q = 1; q <= 4; ++q)
      for (int s = 1; s <= 4; ++s) {
        auto spec = make_spec(c, q, s);
        if (spec.order() >= 7 && spec.order() <= 60) out.push_back(std::move(spec));
      }
  return out;
}

/// F-family grid: K13 plus at most two cycles, q in 1..4, s in 1..4
/// (s - 1 isolated vertices), 7 <= n <= 60.
std::vector<ConeSpec> f_grid() {
  std::vector<std::vector<int>> sets{{}};
  std::vector<int> cur;
  for (int t = 1; t <= 2; ++t) cycle_multisets(t, 3, 12, cur, sets);
  std::vector<ConeSpec> out;
  for (const auto& c : sets)
    for (int q = 1; q <= 4; ++q)
      for (int s = 1; s <= 4; ++s) {
        auto spec = make_spec(c, q, s - 1, 1);
        if (spec.order() >= 7 && spec.order() <= 60) out.push_back(std::move(spec));
      }
  return out;
}

const std::vector<ConeSpec>& grid() {
  static const auto g = g_grid();
  return g;
}

const std::vector<QSpectrum>& grid_spectra() {
  static const auto s = [] {
    std::vector<QSpectrum> out;
    out.reserve(grid().size());
    for (const auto& spec : grid()) out.push_back(q_spectrum(spec.realize()));
    return out;
  }();
  return s;
}

bool closed_vs_numeric(const std::vector<ConeSpec>& specs, const std::vector<QSpectrum>* numeric,
                       std::string& detail) {
  double worst = 0.0;
  std::size_t bad = 0;
  std::string first_bad;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto num = numeric ? (*numeric)[i] : q_spectrum(specs[i].realize());
    const double d = spectrum_compare(closed_spectrum(specs[i]), num);
    worst = std::max(worst, d);
    if (d > 1e-8) {
      if (bad++ == 0) first_bad = to_string(specs[i]);
    }
  }
  detail = std::to_string(specs.size()) + " specs, max distance " + fmt("%.3g", worst);
  if (bad) detail += ", " + std::to_string(bad) + " over 1e-8 (first " + first_bad + ")";
  return specs.size() >= 200 && bad == 0;
}

}  // namespace

int main() {
  const auto start = Clock::now();

  criterion("AC1", [](std::string& detail) {
    const auto t0 = Clock::now();
    const bool ok = closed_vs_numeric(grid(), &grid_spectra(), detail);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    detail += ", n in [7, 60]" + fmt(", %.1fs (limit 60s)", secs);
    return ok && secs <= 60.0;
  });

  criterion("AC2", [](std::string& detail) {
    const auto specs = f_grid();
    return closed_vs_numeric(specs, nullptr, detail);
  });

  criterion("AC3", [](std::string& detail) {
    std::size_t pairs = 0, bad = 0;
    double worst = 0.0;
    std::string first_bad;
    for (std::size_t i = 0; i < grid().size(); ++i) {
      const auto& g = grid()[i];
      if (g.count_cycles_of_length(3) == 0) continue;
      const auto mate = claw_mate(g);
      const auto hg = g.realize();
      const auto hm = mate.realize();
      const double d = spectrum_compare(grid_spectra()[i], q_spectrum(hm));
      worst = std::max(worst, d);
      ++pairs;
      if (d > 1e-8 || hg.degree_sequence() == hm.degree_sequence()) {
        if (bad++ == 0) first_bad = to_string(g);
      }
    }
    const auto g7 = parse_cone_spec("K1 v C3 + 1K2 + 1K1");
    const auto m7 = claw_mate(g7);
    const bool small_ok = to_string(m7) == "K1 v K13 + 1K2" &&
                          cospectral(q_spectrum(g7.realize()), q_spectrum(m7.realize())) &&
                          !isomorphic(g7.realize(), m7.realize());
    detail = std::to_string(pairs) + " pairs, max distance " + fmt("%.3g", worst) +
             ", n=7 pair " + (small_ok ? "ok" : "broken");
    if (bad) detail += ", " + std::to_string(bad) + " bad (first " + first_bad + ")";
    return pairs > 0 && bad == 0 && small_ok;
  });

  criterion("AC4", [](std::string& detail) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<std::size_t> order(2, 12);
    std::uniform_real_distribution<double> density(0.05, 0.95);
    double worst = 0.0;
    const int trials = 600;
    for (int i = 0; i < trials; ++i) {
      const auto g = fixtures::random_graph(rng, order(rng), density(rng));
      worst = std::max(worst, relative_discrepancy(moments_from_counts(g), moments_from_spectrum(g)));
    }
    const auto flag = moments_from_counts(parse_cone_spec("K1 v C3 + 1K2 + 1K1").realize());
    const bool flag_ok = flag == MomentVector{20, 92, 560, 3876, 148};
    detail = std::to_string(trials) + " graphs, max relative discrepancy " + fmt("%.3g", worst) +
             ", flagship (T1..T4,S4) = (" + std::to_string(flag.t1) + "," +
             std::to_string(flag.t2) + "," + std::to_string(flag.t3) + "," +
             std::to_string(flag.t4) + "," + std::to_string(flag.s4) + ")";
    return worst <= 1e-7 && flag_ok;
  });

  criterion("AC5", [](std::string& detail) {
    std::size_t checked = 0, bad = 0;
    std::string first_bad;
    for (const auto& g : grid()) {
      if (g.order() > 40) continue;
      ++checked;
      if (counts_closed_form(g) != count_vector(g.realize())) {
        if (bad++ == 0) first_bad = to_string(g);
      }
    }
    detail = std::to_string(checked) + " specs with n <= 40 compared exactly";
    if (bad) detail += ", " + std::to_string(bad) + " mismatches (first " + first_bad + ")";
    return checked > 0 && bad == 0;
  });

  criterion("AC6", [](std::string& detail) {
    std::size_t pairs = 0, star_pairs = 0, tilde_pairs = 0, bad = 0, not_strict = 0;
    auto check_pair = [&](const ConeSpec& g, const ConeSpec& other, const MomentVector& base) {
      const auto d = delta_moments(g, other);
      const auto m = moments_from_counts(other.realize());
      ++pairs;
      if (m.s4 - base.s4 != d.s4 || m.t4 - base.t4 != d.t4) ++bad;
      if (other.cycles.empty()) {
        ++star_pairs;
        if (!(m.t4 < base.t4)) ++not_strict;
      }
    };
    for (int k = 3; k <= 10; ++k)
      for (int q = 1; q <= 3; ++q)
        for (int s = 1; s <= 2; ++s) {
          const auto g = make_spec({k}, q, s);
          const auto base = moments_from_counts(g.realize());
          for (const auto& other : enumerate_family(g.order(), degree_profile(g)))
            check_pair(g, other, base);
          if (k >= 5 && q >= 2) {
            check_pair(g, split_cycle_candidate(g), base);
            ++tilde_pairs;
          }
        }
    detail = std::to_string(pairs) + " pairs (" + std::to_string(star_pairs) +
             " cycle-free, " + std::to_string(tilde_pairs) + " split-cycle), " +
             std::to_string(bad) + " delta mismatches, " + std::to_string(not_strict) +
             " non-strict T4";
    return pairs >= 100 && bad == 0 && not_strict == 0 && star_pairs > 0;
  });

  criterion("AC7", [](std::string& detail) {
    std::size_t sets = 0, members = 0, out_of_range = 0;
    double worst_spread = 0.0, worst_closed = 0.0;
    for (int c = 4; c <= 12; ++c)
      for (int q = 1; q <= 3; ++q)
        for (int s = 1; s <= 3; ++s) {
          std::vector<std::vector<int>> parts;
          detail::for_each_partition(c, 2, c, [&](const std::vector<int>& p) { parts.push_back(p); });
          if (parts.size() < 2) continue;
          double lo = 1e300, hi = -1e300;
          for (const auto& p : parts) {
            const auto spec = make_spec(p, q, s);
            const double x = q_spectrum(spec.realize()).largest();
            const double n = static_cast<double>(spec.order());
            lo = std::min(lo, x);
            hi = std::max(hi, x);
            worst_closed = std::max(worst_closed, std::abs(x - chi1_multigraph(spec)));
            if (!(x > n && x < n + 2)) ++out_of_range;
            ++members;
          }
          worst_spread = std::max(worst_spread, hi - lo);
          ++sets;
        }
    detail = std::to_string(sets) + " redistribution sets (" + std::to_string(members) +
             " cones), max spread " + fmt("%.3g", worst_spread) + ", max |numeric - quotient| " +
             fmt("%.3g", worst_closed) + ", " + std::to_string(out_of_range) +
             " outside (n, n+2)";
    return sets >= 50 && worst_spread <= 1e-9 && worst_closed <= 1e-9 && out_of_range == 0;
  });

  criterion("AC8", [](std::string& detail) {
    std::size_t bad = 0;
    std::string first_bad;
    for (std::size_t i = 0; i < grid().size(); ++i) {
      const auto& g = grid()[i];
      const std::size_t expect = g.num_isolated() + g.num_k2() - 1 + g.num_even_cycles();
      if (grid_spectra()[i].multiplicity(1.0) != expect ||
          closed_spectrum(g).multiplicity(1.0) != expect) {
        if (bad++ == 0) first_bad = to_string(g);
      }
    }
    detail = std::to_string(grid().size()) + " specs, m(1) = s + q - 1 + #even cycles";
    if (bad) detail += ", " + std::to_string(bad) + " violations (first " + first_bad + ")";
    return bad == 0;
  });

  criterion("AC9", [](std::string& detail) {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<std::size_t> small(3, 10);
    std::uniform_real_distribution<double> density(0.1, 0.9);
    const int target = 300;
    struct Tally {
      Lemma lemma;
      int applicable = 0;
      int failed = 0;
      std::string witness;
    };
    std::vector<Tally> tallies;
    for (Lemma l : {Lemma::kEdgeInterlacing, Lemma::kVertexInterlacing, Lemma::kNullity,
                    Lemma::kChi1Bound, Lemma::kPathCycle})
      tallies.push_back({l, 0, 0, {}});
    auto record = [](Tally& t, const ProbeResult& r) {
      if (r.status == ProbeStatus::kSkip) return;
      ++t.applicable;
      if (r.status == ProbeStatus::kFail) {
        if (t.failed++ == 0) t.witness = r.witness;
      }
    };
    // bounded-degree base so that the cone has d2 <= 4
    auto sparse_base = [&](std::size_t n) {
      MultiGraph b(n);
      std::vector<std::pair<Vertex, Vertex>> pairs;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
      std::shuffle(pairs.begin(), pairs.end(), rng);
      std::bernoulli_distribution keep(density(rng));
      for (auto [u, v] : pairs)
        if (b.degree(u) < 3 && b.degree(v) < 3 && keep(rng)) b.add_edge(u, v);
      return b;
    };
    std::uniform_int_distribution<std::size_t> big(8, 20), rest(0, 6);
    const std::vector<std::function<MultiGraph()>> draw{
        [&] { return fixtures::random_graph(rng, small(rng), density(rng)); },
        [&] {
          return fixtures::random_relabel(
              rng, cone(fixtures::random_graph(rng, small(rng), density(rng))));
        },
        [&] { return fixtures::random_graph(rng, small(rng), density(rng)); },
        [&] { return cone(sparse_base(big(rng))); },
        [&] { return fixtures::random_graph(rng, rest(rng), density(rng)); },
    };
    // inapplicable draws are skipped; keep sampling until each probe has enough
    for (std::size_t p = 0; p < tallies.size(); ++p)
      for (int attempt = 0; attempt < 20 * target && tallies[p].applicable < target; ++attempt)
        record(tallies[p], probe_lemma(draw[p](), tallies[p].lemma));
    bool ok = true;
    for (const auto& t : tallies) {
      detail += std::string(lemma_id(t.lemma)) + ":" + std::to_string(t.applicable) + "/" +
                std::to_string(t.failed) + "f ";
      if (t.failed) detail += "(" + t.witness + ") ";
      ok = ok && t.applicable >= target && t.failed == 0;
    }
    detail += "(applicable/failed)";
    return ok;
  });

  criterion("AC10", [](std::string& detail) {
    const auto g = parse_cone_spec("K1 v C3 + 1K2 + 1K1");
    const auto t0 = Clock::now();
    const auto rep = search_exhaustive(g.realize(), kCospectralTolerance, 1);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool has_mate = false, has_target = false;
    std::string names;
    for (const auto& h : rep.hits) {
      has_mate = has_mate || h.descriptor == "K1 v K13 + 1K2";
      has_target = has_target || h.is_target;
      names += (names.empty() ? "" : "; ") + h.descriptor;
    }
    detail = std::to_string(rep.search_space) + " labelled graphs, " +
             std::to_string(rep.hits.size()) + " classes {" + names + "}" +
             fmt(", %.2fs single-threaded (limit 120s)", secs);
    return rep.search_space == (1u << 21) && rep.hits.size() >= 2 && has_mate && has_target &&
           secs <= 120.0;
  });

  criterion("AC11", [](std::string& detail) {
    const Interval iv{0.0, 1.0, false, true};
    bool ok = true;
    for (int k : {5, 7, 9}) {
      const auto g = make_spec({k}, 2, 1);
      const auto f = split_cycle_candidate(g);
      const auto mg = count_in_interval(q_spectrum(g.realize()), iv, kGroupTolerance);
      const auto mf = count_in_interval(q_spectrum(f.realize()), iv, kGroupTolerance);
      detail += "k=" + std::to_string(k) + ": m_G=" + std::to_string(mg) +
                " m_F=" + std::to_string(mf) + "  ";
      ok = ok && mg == 3 && mf >= mg + 1;
    }
    return ok;
  });

  criterion("AC12", [](std::string& detail) {
    bool ok = true;
    for (int k : {6, 8}) {
      const auto g = make_spec({k}, 2, 1);
      const auto mate = split_cycle_mate_even(g);
      const auto mg = moments_from_counts(g.realize());
      const auto mf = moments_from_counts(mate.candidate.realize());
      const bool same = mg.t1 == mf.t1 && mg.t2 == mf.t2 && mg.t3 == mf.t3 && mg.t4 == mf.t4;
      detail += "k=" + std::to_string(k) + ": T1-T4 " + (same ? "equal" : "differ") +
                ", distance " + fmt("%.6g", mate.spectral_distance) + " (recorded)  ";
      ok = ok && same;
    }
    return ok;
  });

  const double total = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("%s: %d failed, %.1fs total\n", failures ? "FAIL" : "PASS", failures, total);
  return failures ? 1 : 0;
}
