#pragma once

#include <string>
#include <string_view>

#include "hpkit/model.hpp"

namespace hpkit {

// Absolute move-string codec.
//
// cubic/sqr, one letter per move:
//   F=(1,0,0) B=(-1,0,0) L=(0,1,0) R=(0,-1,0) U=(0,0,1) D=(0,0,-1)
// fcc, two letters per move, the vector sum of the two directions:
//   {F,B}x{L,R,U,D} and {L,R}x{U,D}, e.g. FL=(1,1,0), LU=(0,1,1)
//
// A backbone structure of n monomers encodes as n-1 moves starting from its
// first point. A side-chain structure interleaves the per-residue side-chain
// move in parentheses: (s1) m1 (s2) m2 ... (sn). Decoding reproduces the
// structure up to translation (the first backbone point is the origin).

// Throws ValidationError if a step is not a neighbor vector of the lattice.
std::string encode_conformation(const Conformation& conf, const Lattice& lattice);

// Throws ParseError (with 1-based character position) on an unknown token.
// The returned structure may violate self-avoidance; run
// validate_conformation to obtain the report.
Conformation decode_conformation(std::string_view text, const Lattice& lattice, ModelKind kind);

}  // namespace hpkit
