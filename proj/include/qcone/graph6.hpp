#pragma once

// graph6 short form (n <= 62): one header byte n+63, then the upper
// triangle of the adjacency matrix in column order (0,1),(0,2),(1,2),(0,3),...
// packed six bits per byte, most significant bit first, each byte +63.

#include <string>
#include <string_view>

#include "qcone/error.hpp"
#include "qcone/multigraph.hpp"

namespace qcone::graph6 {

inline constexpr std::size_t kMaxOrder = 62;

inline std::string encode(const MultiGraph& g) {
  require_simple(g, "graph6::encode");
  const std::size_t n = g.order();
  if (n < 1 || n > kMaxOrder) {
    throw FormatError("graph6 short form needs 1 <= n <= 62, got " + std::to_string(n));
  }
  std::string out(1, static_cast<char>(n + 63));
  int bits = 0;
  int acc = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(static_cast<char>(acc + 63));
        bits = 0;
        acc = 0;
      }
    }
  }
  if (bits > 0) out.push_back(static_cast<char>((acc << (6 - bits)) + 63));
  return out;
}

inline MultiGraph decode(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text.empty()) throw FormatError("graph6: empty input");
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) {
      throw FormatError("graph6: byte " + std::to_string(c) + " at offset " +
                        std::to_string(i) + " is outside 63..126");
    }
  }
  const std::size_t n = static_cast<unsigned char>(text[0]) - 63;
  if (n == 63) throw FormatError("graph6: orders above 62 are not supported");
  if (n == 0) throw FormatError("graph6: the null graph has no MultiGraph form");
  const std::size_t pairs = n * (n - 1) / 2;
  const std::size_t body = (pairs + 5) / 6;
  if (text.size() != 1 + body) {
    throw FormatError("graph6: expected " + std::to_string(1 + body) +
                      " bytes for n=" + std::to_string(n) + ", got " +
                      std::to_string(text.size()));
  }
  MultiGraph g(n);
  std::size_t k = 0;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i, ++k) {
      const int byte = static_cast<unsigned char>(text[1 + k / 6]) - 63;
      if ((byte >> (5 - static_cast<int>(k % 6))) & 1) g.add_edge(i, j);
    }
  }
  for (; k < body * 6; ++k) {
    const int byte = static_cast<unsigned char>(text[1 + k / 6]) - 63;
    if ((byte >> (5 - static_cast<int>(k % 6))) & 1) {
      throw FormatError("graph6: non-zero padding bits");
    }
  }
  return g;
}

}  // namespace qcone::graph6
