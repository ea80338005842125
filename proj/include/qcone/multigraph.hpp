#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qcone/error.hpp"

namespace qcone {

using Vertex = std::size_t;
using Multiplicity = std::uint16_t;

/// Undirected loopless multigraph stored as a dense symmetric table of edge
/// multiplicities. Simple graphs are the special case where every entry is
/// 0 or 1; a digon is a pair of vertices with multiplicity 2.
class MultiGraph {
 public:
  static constexpr std::size_t kMaxOrder = 4096;

  MultiGraph() = default;

  explicit MultiGraph(std::size_t n) : n_(n), mult_(n * n, 0) {
    if (n > kMaxOrder) {
      throw ParameterError("graph order " + std::to_string(n) + " exceeds " +
                           std::to_string(kMaxOrder));
    }
  }

  std::size_t order() const noexcept { return n_; }

  Multiplicity mult(Vertex u, Vertex v) const { return mult_[u * n_ + v]; }

  bool adjacent(Vertex u, Vertex v) const { return mult(u, v) != 0; }

  /// Adds `count` parallel edges between u and v.
  void add_edge(Vertex u, Vertex v, Multiplicity count = 1) {
    check_pair(u, v);
    mult_[u * n_ + v] = static_cast<Multiplicity>(mult_[u * n_ + v] + count);
    mult_[v * n_ + u] = mult_[u * n_ + v];
  }

  /// Removes one copy of the edge uv; the edge must exist.
  void remove_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    if (mult_[u * n_ + v] == 0) {
      throw ParameterError("remove_edge: no edge between " + std::to_string(u) +
                           " and " + std::to_string(v));
    }
    --mult_[u * n_ + v];
    mult_[v * n_ + u] = mult_[u * n_ + v];
  }

  void set_mult(Vertex u, Vertex v, Multiplicity m) {
    check_pair(u, v);
    mult_[u * n_ + v] = m;
    mult_[v * n_ + u] = m;
  }

  std::size_t degree(Vertex v) const {
    std::size_t d = 0;
    for (Vertex u = 0; u < n_; ++u) d += mult(v, u);
    return d;
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> out(n_);
    for (Vertex v = 0; v < n_; ++v) out[v] = degree(v);
    return out;
  }

  /// Degrees sorted non-increasing.
  std::vector<std::size_t> degree_sequence() const {
    auto d = degrees();
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
  }

  std::size_t size() const {
    std::size_t twice = 0;
    for (auto m : mult_) twice += m;
    return twice / 2;
  }

  bool simple() const {
    return std::all_of(mult_.begin(), mult_.end(),
                       [](Multiplicity m) { return m <= 1; });
  }

  std::vector<Vertex> neighbours(Vertex v) const {
    std::vector<Vertex> out;
    for (Vertex u = 0; u < n_; ++u)
      if (adjacent(v, u)) out.push_back(u);
    return out;
  }

  /// Copy with vertex v deleted; remaining vertices keep their relative order.
  MultiGraph without_vertex(Vertex v) const {
    if (v >= n_) throw ParameterError("without_vertex: vertex out of range");
    MultiGraph out(n_ - 1);
    for (Vertex a = 0, i = 0; a < n_; ++a) {
      if (a == v) continue;
      for (Vertex b = 0, j = 0; b < n_; ++b) {
        if (b == v) continue;
        out.mult_[i * out.n_ + j] = mult(a, b);
        ++j;
      }
      ++i;
    }
    return out;
  }

  /// Relabelled copy: vertex v of *this becomes perm[v].
  MultiGraph permuted(const std::vector<Vertex>& perm) const {
    if (perm.size() != n_) throw ParameterError("permuted: size mismatch");
    MultiGraph out(n_);
    for (Vertex a = 0; a < n_; ++a)
      for (Vertex b = 0; b < n_; ++b) out.mult_[perm[a] * n_ + perm[b]] = mult(a, b);
    return out;
  }

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

 private:
  void check_pair(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) throw ParameterError("vertex out of range");
    if (u == v) throw ParameterError("loops are not supported");
  }

  std::size_t n_ = 0;
  std::vector<Multiplicity> mult_;
};

/// Throws UnsupportedError unless g is simple.
inline void require_simple(const MultiGraph& g, const char* what) {
  if (!g.simple()) {
    throw UnsupportedError(std::string(what) + " requires a simple graph");
  }
}

}  // namespace qcone
