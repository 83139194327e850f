#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hpkit/lattice.hpp"

namespace hpkit {

// An H/P sequence with its derived index data. Immutable after parse.
class HpSequence {
 public:
  // Accepts H and P only, case-insensitive; throws ParseError naming the
  // 1-based position of the first offending character. Length 1 is legal.
  static HpSequence parse(std::string_view text);

  const std::string& text() const { return text_; }
  int length() const { return int(text_.size()); }
  int num_h() const { return int(h_indices_.size()); }
  // 0-based positions of H monomers, ascending.
  const std::vector<int>& h_indices() const { return h_indices_; }
  // Number of consecutive H pairs (positions i, i+1 both H).
  int cons_hh() const { return cons_hh_; }
  bool is_h(int i) const { return text_[size_t(i)] == 'H'; }

 private:
  std::string text_;
  std::vector<int> h_indices_;
  int cons_hh_ = 0;
};

enum class ModelKind { Backbone, SideChain };

// A placed structure. `side_chains` is empty for backbone-only conformations
// and has one point per residue in the side-chain model.
struct Conformation {
  std::vector<Point> backbone;
  std::vector<Point> side_chains;
};

enum class ViolationKind { Connectivity, SelfAvoidance, LatticeMembership, SideChainAttachment, LengthMismatch };

// Indices are 1-based monomer positions as reported to users; j is 0 when a
// violation concerns a single position. For side-chain structures, positions
// n+1..2n refer to side-chain monomers 1..n.
struct Violation {
  ViolationKind kind;
  int i = 0;
  int j = 0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Checks length against the sequence, connectivity, mutual exclusion of all
// monomers, lattice membership, and (side-chain model) attachment. Returns
// the complete list of violations rather than stopping at the first.
ValidationReport validate_conformation(const HpSequence& seq, const Conformation& conf, const Lattice& lattice,
                                       ModelKind kind);

using Energy = int;  // non-positive: -1 per counted contact

// Count of H-H neighbor pairs at non-consecutive sequence positions, negated.
// Throws ValidationError if the conformation is not valid for the sequence.
Energy backbone_energy(const HpSequence& seq, const Conformation& conf, const Lattice& lattice);

// Count of H-H neighbor pairs among side-chain monomers, negated. All pairs
// i < j count; there is no consecutive-position exclusion in this model.
Energy side_chain_energy(const HpSequence& seq, const Conformation& conf, const Lattice& lattice);

// Structures are equivalent iff every H monomer sits on the same point
// (literal equality, no symmetry). Throws ValidationError on length mismatch.
bool equiv_backbone(const HpSequence& seq, const Conformation& a, const Conformation& b);

// Side-chain variant: compares H side-chain points only; backbones and P
// side chains are ignored entirely.
bool equiv_side_chain(const HpSequence& seq, const Conformation& a, const Conformation& b);

}  // namespace hpkit
