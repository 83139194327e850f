#include "hpkit/solver.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace hpkit {

namespace {

// Trail-based engine. Domains are sparse sets of window indices (the window
// is the sorted union of all domain points, so index order is value order);
// a removal swaps the value past the live prefix and undo just restores the
// size, which keeps backtracking allocation-free.
class Engine {
 public:
  Engine(const CspInstance& csp, SolveMode mode, const SolutionCallback& cb)
      : csp_(csp), mode_(mode), cb_(cb) {
    validate();
    build();
  }

  SearchStats run() {
    for (int v = 0; v < nvars_; ++v) enqueue(v);
    if (run_queue()) search(0, false);
    return stats_;
  }

  PropagationOutcome root_propagation() {
    PropagationOutcome out;
    for (int v = 0; v < nvars_; ++v) enqueue(v);
    out.consistent = run_queue();
    if (out.consistent) {
      out.domains.resize(size_t(nvars_));
      for (int v = 0; v < nvars_; ++v) {
        std::vector<int> live(dom_[size_t(v)].begin(), dom_[size_t(v)].begin() + dsize_[size_t(v)]);
        std::sort(live.begin(), live.end());
        for (int w : live) out.domains[size_t(v)].push_back(window_[size_t(w)]);
      }
    }
    return out;
  }

 private:
  void validate() {
    if (csp_.lattice == nullptr) throw ArgumentError("csp has no lattice");
    nvars_ = int(csp_.domains.size());
    if (nvars_ == 0) throw ArgumentError("csp has no variables");
    auto check_var = [&](int v) {
      if (v < 0 || v >= nvars_) throw ArgumentError("constraint references undeclared variable");
    };
    for (const auto& [a, b] : csp_.neighbor_constraints) {
      check_var(a);
      check_var(b);
      if (a == b) throw ArgumentError("neighbor constraint on a single variable");
    }
    for (const auto& scope : csp_.all_different)
      for (int v : scope) check_var(v);
    for (int v : csp_.branch_set) check_var(v);
    for (const auto& d : csp_.domains)
      for (const Point& p : d)
        if (!in_coord_range(p)) throw ArgumentError("domain point outside the supported coordinate range");
  }

  void build() {
    // Window: sorted union of all domain points; index = lexicographic rank.
    for (const auto& d : csp_.domains) window_.insert(window_.end(), d.begin(), d.end());
    std::sort(window_.begin(), window_.end());
    window_.erase(std::unique(window_.begin(), window_.end()), window_.end());
    index_of_.reserve(window_.size() * 2);
    for (int i = 0; i < int(window_.size()); ++i) index_of_.emplace(pack_point(window_[size_t(i)]), i);

    deg_ = int(csp_.lattice->neighbor_vectors().size());
    adj_.assign(window_.size() * size_t(deg_), -1);
    for (int i = 0; i < int(window_.size()); ++i) {
      int k = 0;
      for (const Point& v : csp_.lattice->neighbor_vectors()) {
        const Point q = window_[size_t(i)] + v;
        if (!in_coord_range(q)) continue;
        auto it = index_of_.find(pack_point(q));
        if (it != index_of_.end()) adj_[size_t(i) * size_t(deg_) + size_t(k++)] = it->second;
      }
    }

    dom_.resize(size_t(nvars_));
    pos_.assign(size_t(nvars_), std::vector<int>(window_.size(), -1));
    dsize_.resize(size_t(nvars_));
    for (int v = 0; v < nvars_; ++v) {
      std::vector<int> vals;
      for (const Point& p : csp_.domains[size_t(v)]) vals.push_back(index_of_.at(pack_point(p)));
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
      dom_[size_t(v)] = vals;
      dsize_[size_t(v)] = int(vals.size());
      for (int i = 0; i < int(vals.size()); ++i) pos_[size_t(v)][size_t(vals[size_t(i)])] = i;
    }

    arcs_.resize(size_t(nvars_));
    for (const auto& [a, b] : csp_.neighbor_constraints) {
      arcs_[size_t(a)].push_back(b);
      arcs_[size_t(b)].push_back(a);
    }
    scopes_of_.resize(size_t(nvars_));
    for (int s = 0; s < int(csp_.all_different.size()); ++s)
      for (int v : csp_.all_different[size_t(s)]) scopes_of_[size_t(v)].push_back(s);

    is_branch_.assign(size_t(nvars_), csp_.branch_set.empty() ? 1 : 0);
    for (int v : csp_.branch_set) is_branch_[size_t(v)] = 1;

    in_queue_.assign(size_t(nvars_), 0);
    solution_.resize(size_t(nvars_));
  }

  bool contains(int v, int val) const {
    const int p = pos_[size_t(v)][size_t(val)];
    return p >= 0 && p < dsize_[size_t(v)];
  }

  void remove_at(int v, int p) {
    auto& dv = dom_[size_t(v)];
    auto& pv = pos_[size_t(v)];
    const int val = dv[size_t(p)];
    const int last = --dsize_[size_t(v)];
    const int moved = dv[size_t(last)];
    dv[size_t(p)] = moved;
    pv[size_t(moved)] = p;
    dv[size_t(last)] = val;
    pv[size_t(val)] = last;
    trail_.push_back(v);
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      ++dsize_[size_t(trail_.back())];
      trail_.pop_back();
    }
  }

  void enqueue(int v) {
    if (!in_queue_[size_t(v)]) {
      in_queue_[size_t(v)] = 1;
      queue_.push_back(v);
    }
  }

  // Remove values of u that have no neighbor support in v.
  bool revise(int u, int v) {
    bool changed = false;
    const int* adj = adj_.data();
    int i = 0;
    while (i < dsize_[size_t(u)]) {
      const int x = dom_[size_t(u)][size_t(i)];
      bool supported = false;
      const int* row = adj + size_t(x) * size_t(deg_);
      for (int k = 0; k < deg_; ++k) {
        const int w = row[k];
        if (w >= 0 && contains(v, w)) {
          supported = true;
          break;
        }
      }
      if (supported) {
        ++i;
      } else {
        remove_at(u, i);
        changed = true;
      }
    }
    if (changed) enqueue(u);
    return dsize_[size_t(u)] > 0;
  }

  // Fixpoint loop; on failure the queue is drained and flags cleared.
  bool run_queue() {
    bool ok = true;
    size_t head = 0;
    while (head < queue_.size()) {
      const int v = queue_[head++];
      in_queue_[size_t(v)] = 0;
      if (dsize_[size_t(v)] == 0) {
        ok = false;
        break;
      }
      if (dsize_[size_t(v)] == 1) {
        const int val = dom_[size_t(v)][0];
        for (int s : scopes_of_[size_t(v)]) {
          for (int u : csp_.all_different[size_t(s)]) {
            if (u == v || !contains(u, val)) continue;
            remove_at(u, pos_[size_t(u)][size_t(val)]);
            if (dsize_[size_t(u)] == 0) {
              ok = false;
              goto done;
            }
            enqueue(u);
          }
        }
      }
      for (int u : arcs_[size_t(v)]) {
        if (!revise(u, v)) {
          ok = false;
          goto done;
        }
      }
    }
  done:
    for (size_t i = head; i < queue_.size(); ++i) in_queue_[size_t(queue_[i])] = 0;
    queue_.clear();
    return ok;
  }

  int select_var(bool probing) const {
    int best = -1;
    int best_size = std::numeric_limits<int>::max();
    for (int v = 0; v < nvars_; ++v) {
      if (mode_ == SolveMode::Restricted && !probing && !is_branch_[size_t(v)]) continue;
      const int s = dsize_[size_t(v)];
      if (s >= 2 && s < best_size) {
        best = v;
        best_size = s;
      }
    }
    return best;
  }

  bool any_unassigned() const {
    for (int v = 0; v < nvars_; ++v)
      if (dsize_[size_t(v)] > 1) return true;
    return false;
  }

  void emit() {
    for (int v = 0; v < nvars_; ++v) solution_[size_t(v)] = window_[size_t(dom_[size_t(v)][0])];
    ++stats_.solutions_emitted;
    if (!cb_(solution_)) abort_ = true;
  }

  void search(int depth, bool probing) {
    if (abort_) return;
    ++stats_.nodes_expanded;
    if (depth > stats_.max_depth) stats_.max_depth = depth;

    const int v = select_var(probing);
    if (v < 0) {
      if (mode_ == SolveMode::Restricted && !probing && any_unassigned()) {
        const size_t mark = trail_.size();
        search(depth, true);
        undo_to(mark);
        found_ = false;
        return;
      }
      emit();
      if (probing) found_ = true;
      if (mode_ == SolveMode::First && !probing) abort_ = true;
      return;
    }

    // Smallest value in the current domain (window index = value order).
    int val = dom_[size_t(v)][0];
    for (int i = 1; i < dsize_[size_t(v)]; ++i) val = std::min(val, dom_[size_t(v)][size_t(i)]);

    // Branch v = val.
    size_t mark = trail_.size();
    {
      int i = 0;
      while (i < dsize_[size_t(v)]) {
        if (dom_[size_t(v)][size_t(i)] != val)
          remove_at(v, i);
        else
          ++i;
      }
      enqueue(v);
      if (run_queue()) search(depth + 1, probing);
      undo_to(mark);
    }
    if (abort_ || (probing && found_)) return;

    // Branch v != val.
    mark = trail_.size();
    remove_at(v, pos_[size_t(v)][size_t(val)]);
    if (dsize_[size_t(v)] > 0) {
      enqueue(v);
      if (run_queue()) search(depth, probing);
    }
    undo_to(mark);
  }

  const CspInstance& csp_;
  SolveMode mode_;
  const SolutionCallback& cb_;
  int nvars_ = 0;
  int deg_ = 0;
  std::vector<Point> window_;
  std::unordered_map<uint64_t, int> index_of_;
  std::vector<int> adj_;
  std::vector<std::vector<int>> dom_;
  std::vector<std::vector<int>> pos_;
  std::vector<int> dsize_;
  std::vector<int> trail_;
  std::vector<std::vector<int>> arcs_;
  std::vector<std::vector<int>> scopes_of_;
  std::vector<int> queue_;
  std::vector<char> in_queue_;
  std::vector<char> is_branch_;
  std::vector<Point> solution_;
  SearchStats stats_;
  bool abort_ = false;
  bool found_ = false;
};

}  // namespace

SearchStats solve(const CspInstance& csp, SolveMode mode, const SolutionCallback& on_solution) {
  Engine engine(csp, mode, on_solution);
  return engine.run();
}

CountResult count_solutions(const CspInstance& csp, uint64_t cutoff) {
  CountResult result;
  result.stats = solve(csp, SolveMode::All, [&](std::span<const Point>) {
    ++result.count;
    if (result.count >= cutoff) {
      result.at_least = true;
      return false;
    }
    return true;
  });
  return result;
}

PropagationOutcome propagate(const CspInstance& csp) {
  const SolutionCallback nop = [](std::span<const Point>) { return true; };
  Engine engine(csp, SolveMode::All, nop);
  return engine.root_propagation();
}

}  // namespace hpkit
