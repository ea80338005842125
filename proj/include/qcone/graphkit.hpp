#pragma once

// Graph builders, graph combination, and brute-force structural counts.
// The counting routines here are deliberately naive: they are the ground
// truth that the closed-form counts in moments.hpp are checked against.

#include <cstdint>
#include <initializer_list>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "qcone/error.hpp"
#include "qcone/multigraph.hpp"

namespace qcone {

enum class GraphKind {
  kEdgeless,
  kPath,
  kCycle,
  kComplete,
  kCompleteBipartite,
  kStar,
  kZTree,
  kDigon,
};

// Canonical labellings:
//   path P_n       0-1-...-(n-1)
//   cycle C_n      i ~ i+1 (mod n)
//   K_{a,b}        parts {0..a-1} and {a..a+b-1}
//   star K_{1,r}   leaves 0..r-1, centre r
//   Z_n            path 0-1-...-(n-2) plus vertex n-1 attached to n-3
//   digon          vertices 0,1 joined by two parallel edges

inline MultiGraph edgeless(std::size_t n) { return MultiGraph(n); }

inline MultiGraph path_graph(std::size_t n) {
  if (n < 1) throw ParameterError("path needs at least 1 vertex");
  MultiGraph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

/// C_n for n >= 3; n == 2 yields the digon (multigraph extension).
inline MultiGraph cycle_graph(std::size_t n) {
  if (n < 2) throw ParameterError("cycle needs at least 2 vertices");
  MultiGraph g(n);
  if (n == 2) {
    g.add_edge(0, 1, 2);
    return g;
  }
  for (Vertex v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

inline MultiGraph digon() { return cycle_graph(2); }

inline MultiGraph complete_graph(std::size_t n) {
  if (n < 1) throw ParameterError("complete graph needs at least 1 vertex");
  MultiGraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline MultiGraph complete_bipartite(std::size_t a, std::size_t b) {
  if (a < 1 || b < 1) throw ParameterError("K_{a,b} needs a, b >= 1");
  MultiGraph g(a + b);
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = a; v < a + b; ++v) g.add_edge(u, v);
  return g;
}

inline MultiGraph star_graph(std::size_t leaves) {
  if (leaves < 1) throw ParameterError("star needs at least 1 leaf");
  MultiGraph g(leaves + 1);
  for (Vertex v = 0; v < leaves; ++v) g.add_edge(v, leaves);
  return g;
}

/// Z_n: duplicate an end vertex of P_{n-1}.
inline MultiGraph z_tree(std::size_t n) {
  if (n < 4) throw ParameterError("Z_n requires n >= 4, got " + std::to_string(n));
  MultiGraph g(n);
  for (Vertex v = 0; v + 1 < n - 1; ++v) g.add_edge(v, v + 1);
  g.add_edge(n - 1, n - 3);
  return g;
}

/// Dispatching builder. `a` is the order (or first part / leaf count); `b`
/// is the second part of K_{a,b}.
inline MultiGraph build(GraphKind kind, std::size_t a = 0, std::size_t b = 0) {
  switch (kind) {
    case GraphKind::kEdgeless:
      if (a < 1) throw ParameterError("edgeless graph needs at least 1 vertex");
      return edgeless(a);
    case GraphKind::kPath:
      return path_graph(a);
    case GraphKind::kCycle:
      if (a < 3) throw ParameterError("simple cycle needs at least 3 vertices");
      return cycle_graph(a);
    case GraphKind::kComplete:
      return complete_graph(a);
    case GraphKind::kCompleteBipartite:
      return complete_bipartite(a, b);
    case GraphKind::kStar:
      return star_graph(a);
    case GraphKind::kZTree:
      return z_tree(a);
    case GraphKind::kDigon:
      return digon();
  }
  throw ParameterError("unknown graph kind");
}

/// Block-diagonal union; parts keep their labels, offset by the orders of
/// the preceding parts.
inline MultiGraph disjoint_union(std::span<const MultiGraph> parts) {
  if (parts.empty()) throw ParameterError("disjoint_union of an empty list");
  std::size_t n = 0;
  for (const auto& p : parts) n += p.order();
  MultiGraph g(n);
  std::size_t offset = 0;
  for (const auto& p : parts) {
    for (Vertex u = 0; u < p.order(); ++u)
      for (Vertex v = u + 1; v < p.order(); ++v)
        if (p.mult(u, v) != 0) g.set_mult(offset + u, offset + v, p.mult(u, v));
    offset += p.order();
  }
  return g;
}

inline MultiGraph disjoint_union(std::initializer_list<MultiGraph> parts) {
  return disjoint_union(std::span<const MultiGraph>(parts.begin(), parts.size()));
}

/// K1 v base. The apex is appended as the last vertex.
inline MultiGraph cone(const MultiGraph& base) {
  if (base.order() < 1) throw ParameterError("cone over an empty graph");
  const std::size_t n = base.order();
  MultiGraph g(n + 1);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (base.mult(u, v) != 0) g.set_mult(u, v, base.mult(u, v));
  for (Vertex u = 0; u < n; ++u) g.add_edge(u, n);
  return g;
}

struct ComponentCounts {
  std::size_t components = 0;
  std::size_t bipartite = 0;
  friend bool operator==(const ComponentCounts&, const ComponentCounts&) = default;
};

/// Breadth-first 2-colouring per component. Parallel edges act like one
/// edge for colouring, so a bare digon component counts as bipartite.
inline ComponentCounts components_and_bipartiteness(const MultiGraph& g) {
  const std::size_t n = g.order();
  std::vector<int> colour(n, -1);
  ComponentCounts out;
  std::queue<Vertex> frontier;
  for (Vertex root = 0; root < n; ++root) {
    if (colour[root] != -1) continue;
    ++out.components;
    bool bipartite = true;
    colour[root] = 0;
    frontier.push(root);
    while (!frontier.empty()) {
      const Vertex v = frontier.front();
      frontier.pop();
      for (Vertex u = 0; u < n; ++u) {
        if (!g.adjacent(v, u)) continue;
        if (colour[u] == -1) {
          colour[u] = 1 - colour[v];
          frontier.push(u);
        } else if (colour[u] == colour[v]) {
          bipartite = false;
        }
      }
    }
    if (bipartite) ++out.bipartite;
  }
  return out;
}

enum class Pattern { kP3, kC3, kC4 };

inline constexpr std::size_t kMaxCountingOrder = 64;

/// Number of (not necessarily induced) subgraphs isomorphic to the pattern.
/// P3 by the degree formula, C3 over vertex triples, C4 over quadruples
/// (a 4-set carries up to three distinct 4-cycles).
inline std::int64_t count_subgraphs(const MultiGraph& g, Pattern pattern) {
  require_simple(g, "count_subgraphs");
  const std::size_t n = g.order();
  if (n > kMaxCountingOrder) {
    throw ScaleError("count_subgraphs supports n <= 64, got " + std::to_string(n));
  }
  std::int64_t count = 0;
  switch (pattern) {
    case Pattern::kP3:
      for (Vertex v = 0; v < n; ++v) {
        const auto d = static_cast<std::int64_t>(g.degree(v));
        count += d * (d - 1) / 2;
      }
      break;
    case Pattern::kC3:
      for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) {
          if (!g.adjacent(a, b)) continue;
          for (Vertex c = b + 1; c < n; ++c)
            if (g.adjacent(a, c) && g.adjacent(b, c)) ++count;
        }
      break;
    case Pattern::kC4: {
      auto cyc = [&](Vertex w, Vertex x, Vertex y, Vertex z) {
        return g.adjacent(w, x) && g.adjacent(x, y) && g.adjacent(y, z) &&
               g.adjacent(z, w);
      };
      for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
          for (Vertex c = b + 1; c < n; ++c)
            for (Vertex d = c + 1; d < n; ++d) {
              count += cyc(a, b, c, d);
              count += cyc(a, b, d, c);
              count += cyc(a, c, b, d);
            }
      break;
    }
  }
  return count;
}

/// Number of triangles through each vertex.
inline std::vector<std::int64_t> triangles_per_vertex(const MultiGraph& g) {
  require_simple(g, "triangles_per_vertex");
  const std::size_t n = g.order();
  std::vector<std::int64_t> t(n, 0);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) {
      if (!g.adjacent(a, b)) continue;
      for (Vertex c = b + 1; c < n; ++c)
        if (g.adjacent(a, c) && g.adjacent(b, c)) {
          ++t[a];
          ++t[b];
          ++t[c];
        }
    }
  return t;
}

struct TriangleEdgeSums {
  std::int64_t t_bar = 0;  ///< 8 * sum_v t(v) d(v)
  std::int64_t f_bar = 0;  ///< 4 * sum_{uv in E} d(u) d(v)
  friend bool operator==(const TriangleEdgeSums&, const TriangleEdgeSums&) = default;
};

inline TriangleEdgeSums t_bar_f_bar(const MultiGraph& g) {
  require_simple(g, "t_bar_f_bar");
  const auto deg = g.degrees();
  const auto tri = triangles_per_vertex(g);
  TriangleEdgeSums out;
  for (Vertex v = 0; v < g.order(); ++v)
    out.t_bar += tri[v] * static_cast<std::int64_t>(deg[v]);
  out.t_bar *= 8;
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v)
      if (g.adjacent(u, v))
        out.f_bar += static_cast<std::int64_t>(deg[u] * deg[v]);
  out.f_bar *= 4;
  return out;
}

}  // namespace qcone
