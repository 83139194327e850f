#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hpkit/lattice.hpp"

namespace hpkit {

// A finite-domain CSP over lattice points. Domains are explicit point sets;
// the constraint vocabulary is exactly what structure threading needs:
// binary neighboring constraints and all-different scopes.
struct CspInstance {
  const Lattice* lattice = nullptr;
  std::vector<std::vector<Point>> domains;
  // (a, b): the values of variables a and b must differ by a neighbor vector.
  std::vector<std::pair<int, int>> neighbor_constraints;
  std::vector<std::vector<int>> all_different;  // variable scopes
  // Variables the search may branch on; empty means all. Restricted mode
  // branches these first and only probes the rest for satisfiability.
  std::vector<int> branch_set;
};

enum class SolveMode { First, All, Restricted };

struct SearchStats {
  uint64_t nodes_expanded = 0;   // search nodes entered after consistent propagation
  uint64_t solutions_emitted = 0;
  int max_depth = 0;

  SearchStats& operator+=(const SearchStats& o) {
    nodes_expanded += o.nodes_expanded;
    solutions_emitted += o.solutions_emitted;
    max_depth = max_depth > o.max_depth ? max_depth : o.max_depth;
    return *this;
  }
};

// Receives one value per variable; return false to stop the search.
using SolutionCallback = std::function<bool(std::span<const Point>)>;

// Depth-first search with propagation. Variable order: smallest current
// domain first, ties by variable index (restricted mode exhausts the branch
// set first). Value order: lexicographic by (x,y,z). Deterministic: equal
// inputs give identical solution sequences and stats.
//
//   First      emits at most one solution
//   All        emits every solution exactly once
//   Restricted emits one solution per distinct branch-set assignment that
//              extends to a full solution
//
// Throws ArgumentError on malformed instances.
SearchStats solve(const CspInstance& csp, SolveMode mode, const SolutionCallback& on_solution);

struct CountResult {
  uint64_t count = 0;
  bool at_least = false;  // true: enumeration stopped at the cutoff
  SearchStats stats;
};

// Exact solution count, or "at least cutoff" once the cutoff is reached.
CountResult count_solutions(const CspInstance& csp, uint64_t cutoff);

struct PropagationOutcome {
  bool consistent = false;
  std::vector<std::vector<Point>> domains;  // reduced; meaningful when consistent
};

// Fixpoint of neighbor arc consistency and singleton-based all-different
// pruning. Never removes a value that participates in a solution.
PropagationOutcome propagate(const CspInstance& csp);

}  // namespace hpkit
