#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "hpkit/model.hpp"

namespace hpkit {

// One equivalence class of structures sharing an H placement.
struct OracleClass {
  std::vector<Point> key;  // canonical H-placement tuple
  uint64_t size = 0;
  Conformation member;  // first structure encountered in the class
};

// Ground truth from exhaustive enumeration of the structure space.
struct OracleResult {
  Energy optimal_energy = 0;
  uint64_t degeneracy = 0;       // optimal structures, one count per symmetry orbit
  uint64_t core_degeneracy = 0;  // equivalence classes of optimal structures
  std::vector<OracleClass> classes;  // sorted by key
};

// Exhaustive enumeration bounds (monomer count).
int oracle_max_length(const Lattice& lattice, ModelKind kind);

// Emits every self-avoiding walk of n monomers starting at the origin; with
// symmetry_reduce, exactly one walk per orbit under translation and the point
// group (the lexicographically smallest point sequence of the orbit).
// Return false from the callback to stop early.
void enumerate_saws(int n, const Lattice& lattice, bool symmetry_reduce,
                    const std::function<bool(std::span<const Point>)>& walk);

// Enumerates all symmetry-reduced structures of the sequence, tracks the
// minimum energy, and partitions the optimal structures into equivalence
// classes keyed by canonical H placement.
OracleResult brute_force_optimal(const HpSequence& seq, const Lattice& lattice, ModelKind kind);

// Partition of the given structures by the model's equivalence relation,
// keyed canonically so symmetric copies land in one class.
std::vector<OracleClass> class_partition(const HpSequence& seq, std::span<const Conformation> structures,
                                         ModelKind kind, const Lattice& lattice);

}  // namespace hpkit
