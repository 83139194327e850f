#include "hpkit/codec.hpp"

#include <array>

namespace hpkit {

namespace {

constexpr std::array<std::pair<char, Point>, 6> kAxisMoves = {{
    {'F', {1, 0, 0}},
    {'B', {-1, 0, 0}},
    {'L', {0, 1, 0}},
    {'R', {0, -1, 0}},
    {'U', {0, 0, 1}},
    {'D', {0, 0, -1}},
}};

bool axis_vector(char c, Point& out) {
  for (const auto& [ch, v] : kAxisMoves)
    if (ch == c) {
      out = v;
      return true;
    }
  return false;
}

std::string encode_step(const Point& v, const Lattice& lattice) {
  if (!lattice.is_neighbor_vector(v)) throw ValidationError("step is not a neighbor vector of lattice " + lattice.name());
  if (lattice.kind() != LatticeKind::Fcc) {
    for (const auto& [ch, w] : kAxisMoves)
      if (w == v) return std::string(1, ch);
  } else {
    // First letter carries the lexicographically earlier axis of the two
    // nonzero components, in the fixed F/B, L/R, U/D order.
    std::string out;
    for (const auto& [ch, w] : kAxisMoves) {
      if ((w.x != 0 && w.x == v.x) || (w.y != 0 && w.y == v.y) || (w.z != 0 && w.z == v.z)) out.push_back(ch);
      if (out.size() == 2) return out;
    }
  }
  throw ValidationError("step cannot be encoded on lattice " + lattice.name());
}

// One move starting at text[pos] (0-based); advances pos past it.
Point decode_step(std::string_view text, size_t& pos, const Lattice& lattice) {
  Point a;
  if (pos >= text.size() || !axis_vector(text[pos], a))
    throw ParseError("unknown move at position " + std::to_string(pos + 1), int(pos + 1));
  ++pos;
  if (lattice.kind() != LatticeKind::Fcc) {
    return a;
  }
  Point b;
  if (pos >= text.size() || !axis_vector(text[pos], b) || !lattice.is_neighbor_vector(a + b))
    throw ParseError("incomplete fcc move at position " + std::to_string(pos + 1), int(pos + 1));
  ++pos;
  return a + b;
}

}  // namespace

std::string encode_conformation(const Conformation& conf, const Lattice& lattice) {
  const size_t n = conf.backbone.size();
  if (n == 0) throw ValidationError("cannot encode an empty structure");
  const bool side = !conf.side_chains.empty();
  if (side && conf.side_chains.size() != n) throw ValidationError("side-chain count does not match backbone length");
  std::string out;
  for (size_t i = 0; i < n; ++i) {
    if (side) {
      out.push_back('(');
      out += encode_step(conf.side_chains[i] - conf.backbone[i], lattice);
      out.push_back(')');
    }
    if (i + 1 < n) out += encode_step(conf.backbone[i + 1] - conf.backbone[i], lattice);
  }
  return out;
}

Conformation decode_conformation(std::string_view text, const Lattice& lattice, ModelKind kind) {
  Conformation conf;
  Point cur{0, 0, 0};
  size_t pos = 0;
  if (kind == ModelKind::Backbone) {
    conf.backbone.push_back(cur);
    while (pos < text.size()) {
      cur = cur + decode_step(text, pos, lattice);
      conf.backbone.push_back(cur);
    }
    return conf;
  }
  while (true) {
    if (pos >= text.size() || text[pos] != '(')
      throw ParseError("expected '(' at position " + std::to_string(pos + 1), int(pos + 1));
    ++pos;
    const Point s = decode_step(text, pos, lattice);
    if (pos >= text.size() || text[pos] != ')')
      throw ParseError("expected ')' at position " + std::to_string(pos + 1), int(pos + 1));
    ++pos;
    conf.backbone.push_back(cur);
    conf.side_chains.push_back(cur + s);
    if (pos == text.size()) break;
    cur = cur + decode_step(text, pos, lattice);
  }
  return conf;
}

}  // namespace hpkit
