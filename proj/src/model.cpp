#include "hpkit/model.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>

namespace hpkit {

HpSequence HpSequence::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty sequence", 1);
  HpSequence seq;
  seq.text_.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    const char up = char(std::toupper(static_cast<unsigned char>(text[i])));
    if (up != 'H' && up != 'P')
      throw ParseError("invalid character '" + std::string(1, text[i]) + "' at position " + std::to_string(i + 1),
                       int(i + 1));
    seq.text_.push_back(up);
    if (up == 'H') {
      if (!seq.h_indices_.empty() && seq.h_indices_.back() == int(i) - 1) ++seq.cons_hh_;
      seq.h_indices_.push_back(int(i));
    }
  }
  return seq;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "OK";
  std::ostringstream os;
  for (size_t k = 0; k < violations.size(); ++k) {
    const Violation& v = violations[k];
    if (k) os << "; ";
    switch (v.kind) {
      case ViolationKind::Connectivity: os << "connectivity violation at index " << v.i; break;
      case ViolationKind::SelfAvoidance: os << "self-avoidance violation at indices (" << v.i << "," << v.j << ")"; break;
      case ViolationKind::LatticeMembership: os << "lattice-membership violation at index " << v.i; break;
      case ViolationKind::SideChainAttachment: os << "side-chain-attachment violation at index " << v.i; break;
      case ViolationKind::LengthMismatch: os << "length-mismatch (expected " << v.i << ", got " << v.j << ")"; break;
    }
  }
  return os.str();
}

ValidationReport validate_conformation(const HpSequence& seq, const Conformation& conf, const Lattice& lattice,
                                       ModelKind kind) {
  ValidationReport report;
  const int n = seq.length();
  const auto& bb = conf.backbone;
  if (int(bb.size()) != n) {
    report.violations.push_back({ViolationKind::LengthMismatch, n, int(bb.size())});
    return report;
  }
  if (kind == ModelKind::SideChain && int(conf.side_chains.size()) != n) {
    report.violations.push_back({ViolationKind::LengthMismatch, n, int(conf.side_chains.size())});
    return report;
  }

  for (int i = 0; i < n; ++i)
    if (!lattice.contains(bb[size_t(i)]) || !in_coord_range(bb[size_t(i)]))
      report.violations.push_back({ViolationKind::LatticeMembership, i + 1, 0});
  for (int i = 0; i + 1 < n; ++i)
    if (!lattice.is_neighbor_vector(bb[size_t(i)] - bb[size_t(i + 1)]))
      report.violations.push_back({ViolationKind::Connectivity, i + 1, 0});

  // All monomers of the structure must be pairwise distinct; in the
  // side-chain model that covers the union of backbone and side chains.
  std::vector<Point> all = bb;
  if (kind == ModelKind::SideChain) {
    for (int i = 0; i < n; ++i) {
      const Point& s = conf.side_chains[size_t(i)];
      if (!lattice.contains(s) || !in_coord_range(s))
        report.violations.push_back({ViolationKind::LatticeMembership, n + i + 1, 0});
      if (!lattice.is_neighbor_vector(s - bb[size_t(i)]))
        report.violations.push_back({ViolationKind::SideChainAttachment, i + 1, 0});
    }
    all.insert(all.end(), conf.side_chains.begin(), conf.side_chains.end());
  }
  std::unordered_map<uint64_t, int> seen;
  seen.reserve(all.size() * 2);
  for (int i = 0; i < int(all.size()); ++i) {
    if (!in_coord_range(all[size_t(i)])) continue;  // already reported above
    auto [it, inserted] = seen.try_emplace(pack_point(all[size_t(i)]), i);
    if (!inserted) report.violations.push_back({ViolationKind::SelfAvoidance, it->second + 1, i + 1});
  }
  return report;
}

namespace {

void require_valid(const HpSequence& seq, const Conformation& conf, const Lattice& lattice, ModelKind kind) {
  ValidationReport report = validate_conformation(seq, conf, lattice, kind);
  if (!report.ok()) throw ValidationError("invalid structure: " + report.to_string());
}

}  // namespace

Energy backbone_energy(const HpSequence& seq, const Conformation& conf, const Lattice& lattice) {
  require_valid(seq, conf, lattice, ModelKind::Backbone);
  const auto& h = seq.h_indices();
  int contacts = 0;
  for (size_t a = 0; a < h.size(); ++a)
    for (size_t b = a + 1; b < h.size(); ++b) {
      if (h[b] == h[a] + 1) continue;  // consecutive pairs never count
      if (lattice.is_neighbor_vector(conf.backbone[size_t(h[a])] - conf.backbone[size_t(h[b])])) ++contacts;
    }
  return -contacts;
}

Energy side_chain_energy(const HpSequence& seq, const Conformation& conf, const Lattice& lattice) {
  require_valid(seq, conf, lattice, ModelKind::SideChain);
  const auto& h = seq.h_indices();
  int contacts = 0;
  for (size_t a = 0; a < h.size(); ++a)
    for (size_t b = a + 1; b < h.size(); ++b)
      if (lattice.is_neighbor_vector(conf.side_chains[size_t(h[a])] - conf.side_chains[size_t(h[b])])) ++contacts;
  return -contacts;
}

bool equiv_backbone(const HpSequence& seq, const Conformation& a, const Conformation& b) {
  if (int(a.backbone.size()) != seq.length() || int(b.backbone.size()) != seq.length())
    throw ValidationError("length mismatch between sequence and structures");
  for (int i : seq.h_indices())
    if (a.backbone[size_t(i)] != b.backbone[size_t(i)]) return false;
  return true;
}

bool equiv_side_chain(const HpSequence& seq, const Conformation& a, const Conformation& b) {
  if (int(a.side_chains.size()) != seq.length() || int(b.side_chains.size()) != seq.length())
    throw ValidationError("length mismatch between sequence and structures");
  for (int i : seq.h_indices())
    if (a.side_chains[size_t(i)] != b.side_chains[size_t(i)]) return false;
  return true;
}

}  // namespace hpkit
