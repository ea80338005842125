#pragma once

// Cospectral-mate search and numeric probes of interlacing and bound statements.
//
// search_family enumerates cones over cycles, paths and K13 blocks whose
// degree profile is compatible with the target's T1 and T2 (one apex of
// degree n - 1), compares Q-spectra, and reports every candidate within
// tolerance. search_exhaustive walks all labelled simple graphs of order
// n <= 8, pruned by the exact integer moments T1..T3 before any eigenvalue
// work, and deduplicates hits up to isomorphism.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qcone/closed_form.hpp"
#include "qcone/cone_spec.hpp"
#include "qcone/eigen.hpp"
#include "qcone/error.hpp"
#include "qcone/graph6.hpp"
#include "qcone/graphkit.hpp"
#include "qcone/moments.hpp"
#include "qcone/parallel.hpp"

namespace qcone {

// ---------------------------------------------------------------------------
// Isomorphism

inline constexpr std::size_t kMaxIsomorphismOrder = 16;

namespace detail {

/// Colour refinement run jointly on both graphs so colour ids are
/// comparable. Returns {colours of g, colours of h}.
inline std::pair<std::vector<int>, std::vector<int>> refine_colours(const MultiGraph& g,
                                                                    const MultiGraph& h) {
  const std::size_t n = g.order();
  std::vector<int> cg(n), ch(n);
  for (Vertex v = 0; v < n; ++v) {
    cg[v] = static_cast<int>(g.degree(v));
    ch[v] = static_cast<int>(h.degree(v));
  }
  using Signature = std::pair<int, std::vector<std::pair<int, int>>>;
  auto signature = [](const MultiGraph& x, const std::vector<int>& col, Vertex v) {
    Signature sig{col[v], {}};
    for (Vertex u = 0; u < x.order(); ++u)
      if (x.mult(v, u) != 0) sig.second.emplace_back(col[u], x.mult(v, u));
    std::sort(sig.second.begin(), sig.second.end());
    return sig;
  };
  std::size_t classes = 0;
  while (true) {
    std::vector<Signature> sg(n), sh(n);
    std::map<Signature, int> ids;
    for (Vertex v = 0; v < n; ++v) {
      sg[v] = signature(g, cg, v);
      sh[v] = signature(h, ch, v);
      ids.emplace(sg[v], 0);
      ids.emplace(sh[v], 0);
    }
    int next = 0;
    for (auto& [sig, id] : ids) id = next++;
    for (Vertex v = 0; v < n; ++v) {
      cg[v] = ids[sg[v]];
      ch[v] = ids[sh[v]];
    }
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return {cg, ch};
}

}  // namespace detail

/// Exact isomorphism test by colour refinement plus backtracking.
inline bool isomorphic(const MultiGraph& g, const MultiGraph& h) {
  if (g.order() > kMaxIsomorphismOrder || h.order() > kMaxIsomorphismOrder) {
    throw ScaleError("isomorphic: supports n <= 16");
  }
  if (g.order() != h.order() || g.size() != h.size()) return false;
  if (g.degree_sequence() != h.degree_sequence()) return false;
  const std::size_t n = g.order();
  const auto [cg, ch] = detail::refine_colours(g, h);
  {
    auto a = cg, b = ch;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  // Map g-vertices in order of increasing colour-class size.
  std::vector<std::size_t> class_size(n + 1 + *std::max_element(cg.begin(), cg.end()), 0);
  for (int c : cg) ++class_size[static_cast<std::size_t>(c)];
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return class_size[static_cast<std::size_t>(cg[a])] < class_size[static_cast<std::size_t>(cg[b])];
  });
  std::vector<Vertex> image(n, 0);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    if (depth == n) return true;
    const Vertex v = order[depth];
    for (Vertex w = 0; w < n; ++w) {
      if (used[w] || ch[w] != cg[v]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const Vertex u = order[d];
        ok = g.mult(v, u) == h.mult(w, image[u]);
      }
      if (!ok) continue;
      used[w] = true;
      image[v] = w;
      if (extend(depth + 1)) return true;
      used[w] = false;
    }
    return false;
  };
  return extend(0);
}

/// Recognises K1 v (cycles u paths u K13 blocks) in a simple graph.
inline std::optional<ConeSpec> recognize_cone(const MultiGraph& g) {
  if (!g.simple() || g.order() < 2) return std::nullopt;
  const std::size_t n = g.order();
  std::optional<Vertex> apex;
  for (Vertex v = 0; v < n && !apex; ++v)
    if (g.degree(v) == n - 1) apex = v;
  if (!apex) return std::nullopt;
  const MultiGraph base = g.without_vertex(*apex);
  const std::size_t bn = base.order();
  std::vector<bool> seen(bn, false);
  ConeSpec spec;
  for (Vertex root = 0; root < bn; ++root) {
    if (seen[root]) continue;
    std::vector<Vertex> comp{root};
    seen[root] = true;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex u : base.neighbours(comp[i]))
        if (!seen[u]) {
          seen[u] = true;
          comp.push_back(u);
        }
    std::size_t edges = 0;
    std::vector<std::size_t> deg;
    for (Vertex v : comp) {
      deg.push_back(base.degree(v));
      edges += base.degree(v);
    }
    edges /= 2;
    const std::size_t k = comp.size();
    const auto max_deg = *std::max_element(deg.begin(), deg.end());
    if (edges == k && max_deg == 2 && k >= 3) {
      spec.cycles.push_back(static_cast<int>(k));
    } else if (edges + 1 == k && max_deg <= 2) {
      spec.paths.push_back(static_cast<int>(k));
    } else if (k == 4 && edges == 3 && max_deg == 3) {
      ++spec.stars13;
    } else {
      return std::nullopt;
    }
  }
  return spec.canonical();
}

// ---------------------------------------------------------------------------
// Structured-family enumeration

struct DegreeProfile {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::int64_t n3 = 0;
  std::int64_t n4 = 0;
  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

/// Degree profile of a cone's non-apex vertices (vertices of degree 1..4).
inline DegreeProfile degree_profile(const ConeSpec& spec) {
  DegreeProfile p;
  p.n1 = static_cast<std::int64_t>(spec.num_isolated());
  p.n4 = spec.stars13;
  p.n2 = 2 * static_cast<std::int64_t>(spec.num_nontrivial_paths()) + 3 * p.n4;
  p.n3 = static_cast<std::int64_t>(spec.cycle_vertices());
  for (int l : spec.paths)
    if (l >= 3) p.n3 += l - 2;
  return p;
}

struct FamilyOptions {
  bool cycles = true;
  bool paths = true;
  bool stars = true;
};

namespace detail {

/// Calls fn(parts) for each partition of `total` into non-increasing parts
/// >= min_part, with at most max_parts parts.
inline void for_each_partition(int total, int min_part, int max_parts,
                               const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (remaining == 0) {
      fn(parts);
      return;
    }
    if (static_cast<int>(parts.size()) == max_parts) return;
    for (int p = std::min(cap, remaining); p >= min_part; --p) {
      parts.push_back(p);
      rec(remaining - p, p);
      parts.pop_back();
    }
  };
  if (total < 0) return;
  rec(total, total);
}

inline bool spec_less(const ConeSpec& a, const ConeSpec& b) {
  return std::tie(a.stars13, a.cycles, a.paths) < std::tie(b.stars13, b.cycles, b.paths);
}

}  // namespace detail

/// All cones K1 v (cycles >= 3 u paths u n4 K13 blocks) of order n whose
/// non-apex degree counts equal the profile. Results are canonical,
/// duplicate-free and sorted. An inconsistent profile yields no specs.
inline std::vector<ConeSpec> enumerate_family(std::size_t n, const DegreeProfile& prof,
                                              FamilyOptions opt = {}) {
  std::vector<ConeSpec> out;
  if (prof.n1 < 0 || prof.n2 < 0 || prof.n3 < 0 || prof.n4 < 0) return out;
  if (prof.n1 + prof.n2 + prof.n3 + prof.n4 + 1 != static_cast<std::int64_t>(n)) return out;
  if (prof.n4 > 0 && !opt.stars) return out;
  const std::int64_t path_ends = prof.n2 - 3 * prof.n4;
  if (path_ends < 0 || path_ends % 2 != 0) return out;
  const int num_paths = static_cast<int>(path_ends / 2);
  if (num_paths > 0 && !opt.paths) return out;
  const int n3 = static_cast<int>(prof.n3);
  for (int in_cycles = 0; in_cycles <= n3; ++in_cycles) {
    if (in_cycles > 0 && (!opt.cycles || in_cycles < 3)) continue;
    const int interior = n3 - in_cycles;
    if (num_paths == 0 && interior > 0) continue;
    detail::for_each_partition(in_cycles, 3, in_cycles, [&](const std::vector<int>& cyc) {
      detail::for_each_partition(interior, 1, num_paths, [&](const std::vector<int>& inner) {
        ConeSpec spec;
        spec.cycles = cyc;
        spec.stars13 = static_cast<int>(prof.n4);
        for (int i = 0; i < num_paths; ++i) {
          const int extra = i < static_cast<int>(inner.size()) ? inner[static_cast<std::size_t>(i)] : 0;
          spec.paths.push_back(2 + extra);
        }
        spec.paths.insert(spec.paths.end(), static_cast<std::size_t>(prof.n1), 1);
        out.push_back(spec.canonical());
      });
    });
  }
  std::sort(out.begin(), out.end(), detail::spec_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Search reports

struct SearchHit {
  std::string descriptor;  ///< cone-spec text when recognisable, else graph6
  std::string graph6;      ///< empty for multigraphs
  double distance = 0.0;
  bool is_target = false;
  std::uint64_t labelled_count = 1;  ///< exhaustive search: labelled graphs in the class
};

struct SearchReport {
  std::string target;
  double tolerance = kCospectralTolerance;
  bool exhaustive = false;
  std::uint64_t search_space = 0;  ///< candidates (family) or labelled graphs (exhaustive)
  std::uint64_t spectra_computed = 0;
  std::vector<SearchHit> hits;        ///< distance <= tolerance, one per isomorphism class
  std::vector<SearchHit> candidates;  ///< family search: every candidate with its distance
  std::vector<std::string> notes;
};

namespace detail {

inline std::string describe(const MultiGraph& g) {
  if (auto spec = recognize_cone(g)) return to_string(*spec);
  if (g.simple() && g.order() <= graph6::kMaxOrder) return graph6::encode(g);
  return "multigraph(n=" + std::to_string(g.order()) + ")";
}

/// Exact tr(Q), tr(Q^2), tr(Q^3) in integer arithmetic.
inline std::array<std::int64_t, 3> exact_q_traces(const MultiGraph& g) {
  const std::size_t n = g.order();
  std::vector<std::int64_t> q(n * n), q2(n * n, 0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) q[u * n + v] = g.mult(u, v);
    q[u * n + u] = static_cast<std::int64_t>(g.degree(u));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const auto a = q[i * n + k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < n; ++j) q2[i * n + j] += a * q[k * n + j];
    }
  std::array<std::int64_t, 3> t{0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    t[0] += q[i * n + i];
    t[1] += q2[i * n + i];
    for (std::size_t j = 0; j < n; ++j) t[2] += q2[i * n + j] * q[j * n + i];
  }
  return t;
}

inline void add_hypothesis_notes(const ConeSpec& target, std::vector<std::string>& notes) {
  if (!is_g_family(target)) return;
  const std::size_t n = target.order();
  const bool all_ge4 = std::all_of(target.cycles.begin(), target.cycles.end(),
                                   [](int k) { return k >= 4; });
  const bool all_odd = std::all_of(target.cycles.begin(), target.cycles.end(),
                                   [](int k) { return k % 2 == 1; });
  if (target.num_cycles() == 1 && all_ge4) {
    notes.push_back(std::string("single-cycle DQS hypothesis (k >= 4, n >= 21): ") +
                    (n >= 21 ? "holds" : "order below 21, exploratory"));
  }
  if (target.num_cycles() >= 2 && all_ge4 && all_odd) {
    notes.push_back(std::string("multi-cycle odd DQS hypothesis (k_i >= 4 odd, n >= 33): ") +
                    (n >= 33 ? "holds" : "order below 33, exploratory"));
  }
  if (target.count_cycles_of_length(3) > 0) {
    notes.push_back("C3 block present: the K13 replacement is a cospectral mate");
  }
}

}  // namespace detail

/// Cospectral mates of `target` inside the structured family.
inline SearchReport search_family(const ConeSpec& target, double tol = kCospectralTolerance,
                                  unsigned jobs = 1) {
  target.validate();
  const ConeSpec canon = target.canonical();
  const MultiGraph tg = canon.realize();
  const std::size_t n = tg.order();
  const auto traces = detail::exact_q_traces(tg);
  const QSpectrum tspec = q_spectrum(tg);

  std::vector<ConeSpec> cands;
  for (std::int64_t n4 = 0; n4 < static_cast<std::int64_t>(n); ++n4) {
    const auto sol = solve_degree_system(static_cast<std::int64_t>(n), traces[0], traces[1],
                                         traces[2], static_cast<std::int64_t>(n) - 1, n4);
    if (!sol.feasible) continue;
    auto fam = enumerate_family(n, {sol.n1, sol.n2, sol.n3, sol.n4});
    cands.insert(cands.end(), fam.begin(), fam.end());
  }
  if (std::find(cands.begin(), cands.end(), canon) == cands.end()) cands.push_back(canon);
  std::sort(cands.begin(), cands.end(), detail::spec_less);
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

  std::vector<double> dist(cands.size(), 0.0);
  parallel_for(cands.size(), jobs, [&](std::size_t i) {
    dist[i] = cands[i] == canon ? 0.0 : spectrum_compare(tspec, q_spectrum(cands[i].realize()));
  });

  SearchReport rep;
  rep.target = to_string(canon);
  rep.tolerance = tol;
  rep.exhaustive = false;
  rep.search_space = cands.size();
  rep.spectra_computed = cands.size();
  for (std::size_t i = 0; i < cands.size(); ++i) {
    SearchHit h;
    h.descriptor = to_string(cands[i]);
    if (n <= graph6::kMaxOrder) h.graph6 = graph6::encode(cands[i].realize());
    h.distance = dist[i];
    h.is_target = cands[i] == canon;
    rep.candidates.push_back(h);
    if (dist[i] <= tol) rep.hits.push_back(h);
  }
  detail::add_hypothesis_notes(canon, rep.notes);
  return rep;
}

inline constexpr std::size_t kMaxExhaustiveOrder = 8;

/// All simple graphs of order target.size() Q-cospectral with the target,
/// one entry per isomorphism class. When `target_graph` is given its class
/// is flagged.
inline SearchReport search_exhaustive(const QSpectrum& target, double tol = kCospectralTolerance,
                                      unsigned jobs = 1,
                                      const MultiGraph* target_graph = nullptr) {
  const std::size_t n = target.size();
  if (n < 1 || n > kMaxExhaustiveOrder) {
    throw ScaleError("search_exhaustive: supports 1 <= n <= 8, got n=" + std::to_string(n));
  }
  SearchReport rep;
  rep.target = target_graph != nullptr ? detail::describe(*target_graph)
                                       : "spectrum(n=" + std::to_string(n) + ")";
  rep.tolerance = tol;
  rep.exhaustive = true;
  const std::size_t pairs = n * (n - 1) / 2;
  rep.search_space = std::uint64_t{1} << pairs;

  // Moments of the target; a non-integral moment means no graph can match.
  std::array<double, 3> tm{0, 0, 0};
  for (double x : target.values()) {
    tm[0] += x;
    tm[1] += x * x;
    tm[2] += x * x * x;
  }
  std::array<std::int64_t, 3> ti{};
  for (std::size_t r = 0; r < 3; ++r) {
    ti[r] = std::llround(tm[r]);
    if (std::abs(tm[r] - static_cast<double>(ti[r])) > 1e-6 * std::max(1.0, std::abs(tm[r]))) {
      rep.notes.push_back("target moments are not integral; no simple graph matches");
      return rep;
    }
  }
  if (ti[0] % 2 != 0) {
    rep.notes.push_back("target trace is odd; no simple graph matches");
    return rep;
  }
  const int edges = static_cast<int>(ti[0] / 2);

  std::vector<std::pair<Vertex, Vertex>> pair_of;
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) pair_of.emplace_back(i, j);

  struct RawHit {
    std::uint64_t mask;
    double distance;
  };
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;
  const std::uint64_t chunks = (rep.search_space + kChunk - 1) / kChunk;
  std::vector<std::vector<RawHit>> found(chunks);
  std::vector<std::uint64_t> computed(chunks, 0);

  auto to_graph = [&](std::uint64_t mask) {
    MultiGraph g(n);
    for (std::size_t e = 0; e < pairs; ++e)
      if ((mask >> e) & 1) g.add_edge(pair_of[e].first, pair_of[e].second);
    return g;
  };

  parallel_for(static_cast<std::size_t>(chunks), jobs, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(rep.search_space, begin + kChunk);
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      if (std::popcount(mask) != edges) continue;
      std::array<std::uint32_t, kMaxExhaustiveOrder> adj{};
      for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
        const auto e = static_cast<std::size_t>(std::countr_zero(bits));
        adj[pair_of[e].first] |= 1u << pair_of[e].second;
        adj[pair_of[e].second] |= 1u << pair_of[e].first;
      }
      std::int64_t d2 = 0, d3 = 0;
      for (std::size_t v = 0; v < n; ++v) {
        const std::int64_t d = std::popcount(adj[v]);
        d2 += d * d;
        d3 += d * d * d;
      }
      if (d2 + 2 * edges != ti[1]) continue;
      std::int64_t tri = 0;
      for (std::size_t u = 0; u < n; ++u)
        for (std::uint32_t nb = adj[u] & ~((2u << u) - 1); nb != 0; nb &= nb - 1) {
          const auto v = static_cast<std::size_t>(std::countr_zero(nb));
          tri += std::popcount(adj[u] & adj[v] & ~((2u << v) - 1));
        }
      if (6 * tri + d3 + 3 * d2 != ti[2]) continue;
      ++computed[c];
      const double d = spectrum_compare(target, q_spectrum(to_graph(mask)));
      if (d <= tol) found[c].push_back({mask, d});
    }
  });

  for (auto c : computed) rep.spectra_computed += c;

  struct ClassRep {
    MultiGraph graph;
    std::vector<std::size_t> degseq;
    SearchHit hit;
  };
  std::vector<ClassRep> classes;
  for (const auto& chunk : found) {
    for (const auto& raw : chunk) {
      MultiGraph g = to_graph(raw.mask);
      auto ds = g.degree_sequence();
      bool merged = false;
      for (auto& cls : classes) {
        if (cls.degseq == ds && isomorphic(cls.graph, g)) {
          ++cls.hit.labelled_count;
          cls.hit.distance = std::max(cls.hit.distance, raw.distance);
          merged = true;
          break;
        }
      }
      if (merged) continue;
      SearchHit h;
      h.descriptor = detail::describe(g);
      h.graph6 = graph6::encode(g);
      h.distance = raw.distance;
      h.is_target = target_graph != nullptr && target_graph->simple() &&
                    isomorphic(*target_graph, g);
      classes.push_back({std::move(g), std::move(ds), std::move(h)});
    }
  }
  for (auto& cls : classes) rep.hits.push_back(std::move(cls.hit));
  rep.notes.push_back("isomorphism classes within tolerance: " + std::to_string(rep.hits.size()));
  return rep;
}

inline SearchReport search_exhaustive(const MultiGraph& target, double tol = kCospectralTolerance,
                                      unsigned jobs = 1) {
  if (target.order() > kMaxExhaustiveOrder) {
    throw ScaleError("search_exhaustive: supports n <= 8, got n=" +
                     std::to_string(target.order()));
  }
  return search_exhaustive(q_spectrum(target), tol, jobs, &target);
}

// ---------------------------------------------------------------------------
// Probes

enum class Lemma {
  kEdgeInterlacing,    ///< 2.2: chi_i(G) >= chi_i(G - e)
  kVertexInterlacing,  ///< 2.3: chi_i(G) - 1 >= chi_i(G - v) >= chi_{i+1}(G) - 1, v dominating
  kNullity,            ///< 2.4: m(0) = number of bipartite components
  kChi1Bound,          ///< 2.10: chi_1 <= d_1 + 3 under degree hypotheses
  kPathCycle,          ///< 5.1: a path loses to a cycle split in chi_1
};

inline std::optional<Lemma> parse_lemma_id(std::string_view id) {
  if (id == "2.2") return Lemma::kEdgeInterlacing;
  if (id == "2.3") return Lemma::kVertexInterlacing;
  if (id == "2.4") return Lemma::kNullity;
  if (id == "2.10") return Lemma::kChi1Bound;
  if (id == "5.1") return Lemma::kPathCycle;
  return std::nullopt;
}

inline const char* lemma_id(Lemma l) {
  switch (l) {
    case Lemma::kEdgeInterlacing: return "2.2";
    case Lemma::kVertexInterlacing: return "2.3";
    case Lemma::kNullity: return "2.4";
    case Lemma::kChi1Bound: return "2.10";
    case Lemma::kPathCycle: return "5.1";
  }
  return "?";
}

enum class ProbeStatus { kPass, kSkip, kFail };

inline const char* status_name(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::kPass: return "pass";
    case ProbeStatus::kSkip: return "skip";
    case ProbeStatus::kFail: return "fail";
  }
  return "?";
}

struct ProbeResult {
  Lemma lemma;
  ProbeStatus status = ProbeStatus::kSkip;
  std::size_t checks = 0;
  std::string witness;  ///< violating instance on failure, reason on skip
};

inline constexpr double kProbeTolerance = 1e-8;

namespace detail {

inline ProbeResult probe_edge_interlacing(const MultiGraph& g, double tol) {
  ProbeResult r{Lemma::kEdgeInterlacing, ProbeStatus::kSkip, 0, {}};
  const std::size_t n = g.order();
  if (n < 3 || g.size() == 0) {
    r.witness = "needs n >= 3 and at least one edge";
    return r;
  }
  const auto full = q_spectrum(g);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      if (!g.adjacent(u, v)) continue;
      MultiGraph h = g;
      h.remove_edge(u, v);
      const auto part = q_spectrum(h);
      for (std::size_t i = 0; i < n; ++i) {
        ++r.checks;
        if (full[i] < part[i] - tol) {
          r.status = ProbeStatus::kFail;
          r.witness = "edge (" + std::to_string(u) + "," + std::to_string(v) + "), i=" +
                      std::to_string(i + 1) + ": chi_i(G)=" + std::to_string(full[i]) +
                      " < chi_i(G-e)=" + std::to_string(part[i]);
          return r;
        }
      }
    }
  r.status = ProbeStatus::kPass;
  return r;
}

inline ProbeResult probe_vertex_interlacing(const MultiGraph& g, double tol) {
  ProbeResult r{Lemma::kVertexInterlacing, ProbeStatus::kSkip, 0, {}};
  const std::size_t n = g.order();
  if (!g.simple() || n < 2) {
    r.witness = "needs a simple graph with n >= 2";
    return r;
  }
  std::optional<Vertex> dom;
  for (Vertex v = 0; v < n && !dom; ++v)
    if (g.degree(v) == n - 1) dom = v;
  if (!dom) {
    r.witness = "no vertex of degree n-1";
    return r;
  }
  const auto full = q_spectrum(g);
  const auto part = q_spectrum(g.without_vertex(*dom));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    r.checks += 2;
    if (full[i] - 1.0 < part[i] - tol || part[i] < full[i + 1] - 1.0 - tol) {
      r.status = ProbeStatus::kFail;
      r.witness = "i=" + std::to_string(i + 1) + ": chi_i(G)=" + std::to_string(full[i]) +
                  ", chi_i(G-v)=" + std::to_string(part[i]) +
                  ", chi_{i+1}(G)=" + std::to_string(full[i + 1]);
      return r;
    }
  }
  r.status = ProbeStatus::kPass;
  return r;
}

inline ProbeResult probe_nullity(const MultiGraph& g) {
  ProbeResult r{Lemma::kNullity, ProbeStatus::kSkip, 0, {}};
  const auto zeros = q_spectrum(g).count_near(0.0, 1e-7);
  const auto bip = components_and_bipartiteness(g).bipartite;
  r.checks = 1;
  if (zeros == bip) {
    r.status = ProbeStatus::kPass;
  } else {
    r.status = ProbeStatus::kFail;
    r.witness = "m(0)=" + std::to_string(zeros) + " but " + std::to_string(bip) +
                " bipartite components";
  }
  return r;
}

inline ProbeResult probe_chi1_bound(const MultiGraph& g, double tol) {
  ProbeResult r{Lemma::kChi1Bound, ProbeStatus::kSkip, 0, {}};
  if (!g.simple() || g.order() < 2) {
    r.witness = "needs a simple graph with n >= 2";
    return r;
  }
  const auto cc = components_and_bipartiteness(g);
  const auto d = g.degree_sequence();
  const std::size_t d1 = d.front(), d2 = d[1], dn = d.back();
  const bool branch_a = d1 >= 11 && dn == 1;
  const bool branch_b = d1 >= 8 && dn >= 2 && dn < 8;
  if (cc.components != 1 || d2 > 4 || !(branch_a || branch_b)) {
    r.witness = "needs connected G with d2 <= 4 and (d1 >= 11 > 1 = dn or d1 >= 8 > dn >= 2)";
    return r;
  }
  const double chi1 = q_spectrum(g).largest();
  r.checks = 1;
  if (chi1 <= static_cast<double>(d1) + 3.0 + tol) {
    r.status = ProbeStatus::kPass;
  } else {
    r.status = ProbeStatus::kFail;
    r.witness = "chi1=" + std::to_string(chi1) + " > d1+3=" + std::to_string(d1 + 3);
  }
  return r;
}

}  // namespace detail

inline constexpr double kPathCycleMargin = 1e-9;

/// chi1(K1 v (P4 u H1)) < chi1(K1 v (C2 u K2 u H1)), and for 5 <= l <= l_max,
/// 3 <= r <= l-2: chi1(K1 v (P_l u H1)) < chi1(K1 v (C_r u P_{l-r} u H1)).
/// `rest` is H1; the comparisons must hold with margin > 1e-9.
inline ProbeResult probe_path_cycle(const MultiGraph& rest, int l_max = 9) {
  ProbeResult r{Lemma::kPathCycle, ProbeStatus::kSkip, 0, {}};
  auto chi1 = [&](std::initializer_list<MultiGraph> blocks) {
    std::vector<MultiGraph> parts(blocks);
    if (rest.order() > 0) parts.push_back(rest);
    return q_spectrum(cone(disjoint_union(std::span<const MultiGraph>(parts)))).largest();
  };
  auto check = [&](double lhs, double rhs, const std::string& what) {
    ++r.checks;
    if (!(rhs - lhs > kPathCycleMargin)) {
      r.status = ProbeStatus::kFail;
      r.witness = what + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs);
      return false;
    }
    return true;
  };
  if (!check(chi1({path_graph(4)}), chi1({digon(), path_graph(2)}), "l=4 vs C2+K2")) return r;
  for (int l = 5; l <= l_max; ++l) {
    const double lhs = chi1({path_graph(static_cast<std::size_t>(l))});
    for (int c = 3; c <= l - 2; ++c) {
      const double rhs = chi1({cycle_graph(static_cast<std::size_t>(c)),
                               path_graph(static_cast<std::size_t>(l - c))});
      if (!check(lhs, rhs, "l=" + std::to_string(l) + ", r=" + std::to_string(c))) return r;
    }
  }
  r.status = ProbeStatus::kPass;
  return r;
}

inline ProbeResult probe_lemma(const MultiGraph& g, Lemma lemma, double tol = kProbeTolerance) {
  switch (lemma) {
    case Lemma::kEdgeInterlacing: return detail::probe_edge_interlacing(g, tol);
    case Lemma::kVertexInterlacing: return detail::probe_vertex_interlacing(g, tol);
    case Lemma::kNullity: return detail::probe_nullity(g);
    case Lemma::kChi1Bound: return detail::probe_chi1_bound(g, tol);
    case Lemma::kPathCycle: return probe_path_cycle(g);
  }
  return {lemma, ProbeStatus::kSkip, 0, {}};
}

}  // namespace qcone
