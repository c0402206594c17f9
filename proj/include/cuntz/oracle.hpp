// Brute-force verifier: realizes representation classes as branching
// function systems on truncated label sets, forms products and
// endomorphism compositions, and reads decompositions off the orbit
// structure of the combined map.
//
// Labels are "modified prefix + anchor" words: a finite prefix of letters
// grafted onto the defining cycle (at a phase) or chain (at a depth). The
// letter maps f_i realize the generators; every non-frontier label lies in
// the image of exactly one f_i, so the inverse is a partial function
// (the shift) whose orbit structure carries the decomposition: finite
// shift orbits are cycles, orbits that leave through the frontier are
// chains.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "endo.hpp"
#include "rep.hpp"
#include "word.hpp"

namespace cuntz {

struct LeafInfo {
  bool chain;
  int period;  // cycle length (cycle leaf) or tail period (chain leaf)
};

class TruncatedBfs {
 public:
  int alphabet() const { return alphabet_; }
  std::size_t size() const { return rings_.size(); }
  std::string name(std::size_t x) const {
    return names_.empty() ? "#" + std::to_string(x) : names_[x];
  }

  /// Target of f_letter on label x, or -1 when truncated away.
  std::int32_t target(int letter, std::size_t x) const {
    return maps_[letter - 1][x];
  }

  /// A label is frontier when some f_i or its preimage fell off the
  /// truncation.
  bool frontier(std::size_t x) const { return frontier_[x] != 0; }

  /// Index of the distinguished cyclic vector's label, or -1.
  std::ptrdiff_t gp() const { return gp_; }

  /// Tail annotations denote each label's underlying infinite word; they
  /// become invalid once the maps are rewritten by an endomorphism.
  bool tails_valid() const { return tails_valid_; }
  const LassoWord& tail(std::size_t x) const {
    if (!tails_valid_) throw std::logic_error("TruncatedBfs: tails invalid");
    return tails_[x];
  }

  long long ring(std::size_t x) const { return rings_[x]; }
  const std::vector<LeafInfo>& leaves() const { return leaves_; }

  /// Normalized phase key identifying which infinite-orbit component a
  /// label belongs to; two labels share a component exactly when their
  /// keys agree (valid for chain-bearing systems with valid tails).
  std::vector<long long> end_key(std::size_t x) const {
    std::size_t ref = 0;
    while (ref < leaves_.size() && !leaves_[ref].chain) ++ref;
    if (ref == leaves_.size())
      throw std::logic_error("TruncatedBfs: end_key needs a chain leaf");
    const long long* ph = &phases_[x * leaves_.size()];
    const long long base = ph[ref];
    std::vector<long long> key(leaves_.size());
    for (std::size_t t = 0; t < leaves_.size(); ++t) {
      long long d = ph[t] - base;
      if (!leaves_[t].chain) {
        const long long k = leaves_[t].period;
        d = ((d % k) + k) % k;
      }
      key[t] = d;
    }
    return key;
  }

  friend TruncatedBfs canonical_bfs(const RepClass&, int, int, bool);
  friend TruncatedBfs product_bfs(const TruncatedBfs&, const TruncatedBfs&);
  friend TruncatedBfs compose_bfs(const TruncatedBfs&, const PermEndo&);

 private:
  TruncatedBfs() = default;

  // Marks frontier labels and checks the truncated Cuntz relation: the
  // f_i images are pairwise disjoint and each f_i is injective.
  void finalize() {
    const std::size_t n = size();
    std::vector<char> has_pre(n, 0);
    for (const auto& row : maps_)
      for (std::size_t x = 0; x < n; ++x) {
        const std::int32_t y = row[x];
        if (y < 0) continue;
        if (has_pre[y])
          throw std::logic_error("TruncatedBfs: overlapping letter images");
        has_pre[y] = 1;
      }
    frontier_.assign(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      if (!has_pre[x]) frontier_[x] = 1;
      for (const auto& row : maps_)
        if (row[x] < 0) frontier_[x] = 1;
    }
  }

  int alphabet_ = 0;
  std::vector<std::string> names_;
  std::vector<std::vector<std::int32_t>> maps_;  // maps_[letter-1][label]
  std::vector<char> frontier_;
  std::vector<LassoWord> tails_;
  std::vector<long long> phases_;  // per label, per leaf, flattened
  std::vector<long long> rings_;   // max chain anchor
  std::vector<LeafInfo> leaves_;
  bool tails_valid_ = true;
  std::ptrdiff_t gp_ = -1;
};

namespace detail {

constexpr std::size_t kBfsCellLimit = 48'000'000;  // labels x letters

inline std::string bfs_label_name(const Letters& mods, long long anchor) {
  std::string s;
  for (std::size_t i = 0; i < mods.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(mods[i]);
  }
  s += '@';
  s += std::to_string(anchor);
  return s;
}

struct Sigma {
  // to[x] = the unique y with f_{letter[x]}(y) = x, or -1.
  std::vector<std::int32_t> to;
  std::vector<std::int32_t> letter;
};

inline Sigma compute_sigma(const TruncatedBfs& b,
                           const std::vector<char>* active = nullptr) {
  Sigma s;
  s.to.assign(b.size(), -1);
  s.letter.assign(b.size(), -1);
  for (int i = 1; i <= b.alphabet(); ++i)
    for (std::size_t x = 0; x < b.size(); ++x) {
      if (active && !(*active)[x]) continue;
      const std::int32_t y = b.target(i, x);
      if (y < 0 || (active && !(*active)[y])) continue;
      if (s.to[y] >= 0)
        throw std::logic_error("TruncatedBfs: ambiguous preimage");
      s.to[y] = static_cast<std::int32_t>(x);
      s.letter[y] = i;
    }
  return s;
}

}  // namespace detail

/// The canonical truncated model of a class: labels are modified prefixes
/// of length <= mod_budget grafted onto the defining cycle (cycle classes,
/// anchored at each phase) or onto the defining tail (chain classes,
/// anchored at depths 0..depth). mod_budget defaults to depth.
///
/// Prepending a letter to a label is exactly the letter map, so the maps
/// are built while the label tree is grown, spine first, then ring by
/// ring of longer prefixes. annotate may be turned off to skip names and
/// tails when the model only feeds a composition, which rewrites the maps
/// and invalidates tails anyway.
inline TruncatedBfs canonical_bfs(const RepClass& r, int depth,
                                  int mod_budget = -1, bool annotate = true) {
  if (depth < 1) throw std::invalid_argument("canonical_bfs: depth < 1");
  if (mod_budget < 0) mod_budget = depth;
  const int n = r.alphabet();

  const bool is_chain = !r.is_cycle();
  Letters cycle =
      is_chain ? r.chain_tail().cycle() : r.cycle_word().letters();
  const long long k = static_cast<long long>(cycle.size());
  const long long anchors = is_chain ? depth + 1 : k;
  auto chain_letter = [&](long long t) {
    return cycle[static_cast<std::size_t>(t % k)];
  };
  // The letter that steps from anchor a one position backward along the
  // defining word, i.e. the one prefix letter a spine label absorbs.
  auto strip_letter = [&](long long a) {
    return is_chain ? (a == 0 ? 0 : chain_letter(a - 1))
                    : cycle[static_cast<std::size_t>((a + k - 1) % k)];
  };
  auto strip_target = [&](long long a) {
    return is_chain ? a - 1 : (a + k - 1) % k;
  };

  {
    double est = static_cast<double>(anchors) * n;
    for (int t = 0; t < mod_budget; ++t) est *= n;
    if (est > static_cast<double>(detail::kBfsCellLimit))
      throw std::invalid_argument("canonical_bfs: label set too large");
  }

  TruncatedBfs b;
  b.alphabet_ = n;
  b.leaves_.push_back({is_chain, static_cast<int>(k)});
  b.tails_valid_ = annotate;
  b.maps_.assign(n, {});
  std::vector<Letters> mods;
  std::vector<long long> anchor_of;
  auto add_label = [&](Letters u, long long a) {
    const auto x = static_cast<std::int32_t>(b.rings_.size());
    b.rings_.push_back(is_chain ? a : 0);
    b.phases_.push_back(a - static_cast<long long>(u.size()));
    for (auto& row : b.maps_) row.push_back(-1);
    mods.push_back(std::move(u));
    anchor_of.push_back(a);
    return x;
  };

  for (long long a = 0; a < anchors; ++a) add_label({}, a);
  for (long long a = 0; a < anchors; ++a)
    if (!is_chain || a >= 1)
      b.maps_[strip_letter(a) - 1][a] =
          static_cast<std::int32_t>(strip_target(a));

  // grow prefix rings; processing labels in index order is breadth-first
  for (std::size_t x = 0; x < mods.size(); ++x) {
    if (static_cast<int>(mods[x].size()) >= mod_budget) continue;
    const long long a = anchor_of[x];
    const bool spine = mods[x].empty();
    for (int i = 1; i <= n; ++i) {
      if (spine && (!is_chain || a >= 1) && i == strip_letter(a)) continue;
      Letters child{i};
      child.insert(child.end(), mods[x].begin(), mods[x].end());
      b.maps_[i - 1][x] = add_label(std::move(child), a);
    }
  }

  if (annotate) {
    b.names_.reserve(mods.size());
    b.tails_.reserve(mods.size());
    for (std::size_t x = 0; x < mods.size(); ++x) {
      b.names_.push_back(detail::bfs_label_name(mods[x], anchor_of[x]));
      const long long rot = is_chain ? anchor_of[x] % k : anchor_of[x];
      Letters tail_cycle(cycle.begin() + rot, cycle.end());
      tail_cycle.insert(tail_cycle.end(), cycle.begin(), cycle.begin() + rot);
      b.tails_.emplace_back(n, mods[x], std::move(tail_cycle));
    }
  }
  b.gp_ = 0;
  b.finalize();
  return b;
}

/// Product system over the packed alphabet: labels are pairs in row-major
/// order, the packed letter acts coordinatewise, and a pair is frontier
/// when either coordinate is.
inline TruncatedBfs product_bfs(const TruncatedBfs& b1,
                                const TruncatedBfs& b2) {
  const int n = b1.alphabet(), m = b2.alphabet();
  const int nm = detail::checked_alphabet_product(n, m);
  const std::size_t s1 = b1.size(), s2 = b2.size();
  if (s1 * s2 > detail::kBfsCellLimit / static_cast<std::size_t>(nm))
    throw std::invalid_argument("product_bfs: label set too large");

  const std::size_t size = s1 * s2;
  TruncatedBfs b;
  b.alphabet_ = nm;
  b.tails_valid_ = b1.tails_valid() && b2.tails_valid();
  b.leaves_ = b1.leaves();
  b.leaves_.insert(b.leaves_.end(), b2.leaves().begin(), b2.leaves().end());
  const std::size_t l1 = b1.leaves_.size(), l2 = b2.leaves_.size();
  b.names_.reserve(size);
  b.rings_.reserve(size);
  b.phases_.reserve(size * (l1 + l2));
  if (b.tails_valid_) b.tails_.reserve(size);
  for (std::size_t x1 = 0; x1 < s1; ++x1)
    for (std::size_t x2 = 0; x2 < s2; ++x2) {
      b.names_.push_back("(" + b1.name(x1) + "," + b2.name(x2) + ")");
      b.rings_.push_back(std::max(b1.ring(x1), b2.ring(x2)));
      for (std::size_t t = 0; t < l1; ++t)
        b.phases_.push_back(b1.phases_[x1 * l1 + t]);
      for (std::size_t t = 0; t < l2; ++t)
        b.phases_.push_back(b2.phases_[x2 * l2 + t]);
      if (b.tails_valid_)
        b.tails_.push_back(pack_lcm(b1.tail(x1), b2.tail(x2)));
    }
  b.maps_.assign(nm, std::vector<std::int32_t>(size, -1));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) {
      auto& row = b.maps_[pack_index(n, m, i, j) - 1];
      for (std::size_t x1 = 0; x1 < s1; ++x1) {
        const std::int32_t y1 = b1.target(i, x1);
        if (y1 < 0) continue;
        for (std::size_t x2 = 0; x2 < s2; ++x2) {
          const std::int32_t y2 = b2.target(j, x2);
          if (y2 < 0) continue;
          row[x1 * s2 + x2] =
              static_cast<std::int32_t>(static_cast<std::size_t>(y1) * s2 +
                                        static_cast<std::size_t>(y2));
        }
      }
    }
  if (b1.gp() >= 0 && b2.gp() >= 0)
    b.gp_ = static_cast<std::ptrdiff_t>(
        static_cast<std::size_t>(b1.gp()) * s2 +
        static_cast<std::size_t>(b2.gp()));
  b.finalize();
  return b;
}

/// Rewrites the maps for the composition with an endomorphism: the new
/// action of letter i applies f_i and then the monomial unitary, realized
/// as "walk the shift back depth() steps, rewrite the consumed word, walk
/// forward". Tail annotations become invalid.
inline TruncatedBfs compose_bfs(const TruncatedBfs& base, const PermEndo& e) {
  if (base.alphabet() != e.alphabet())
    throw std::invalid_argument("compose_bfs: alphabet mismatch");
  const int n = base.alphabet();
  const int l = e.depth();
  detail::Sigma sig = detail::compute_sigma(base);

  TruncatedBfs b;
  b.alphabet_ = n;
  b.names_ = base.names_;
  b.rings_ = base.rings_;
  b.phases_ = base.phases_;
  b.leaves_ = base.leaves_;
  b.tails_valid_ = false;
  b.gp_ = base.gp_;
  b.maps_.assign(n, std::vector<std::int32_t>(base.size(), -1));
  Letters consumed(l);
  for (int i = 1; i <= n; ++i)
    for (std::size_t x = 0; x < base.size(); ++x) {
      std::int32_t cur = base.target(i, x);
      if (cur < 0) continue;
      bool ok = true;
      for (int t = 0; t < l && ok; ++t) {
        if (sig.to[cur] < 0) {
          ok = false;
          break;
        }
        consumed[t] = sig.letter[cur];
        cur = sig.to[cur];
      }
      if (!ok) continue;
      const Word image = e.apply(Word(n, consumed));
      for (int t = l - 1; t >= 0 && cur >= 0; --t)
        cur = base.target(image[t], cur);
      if (cur >= 0) b.maps_[i - 1][x] = cur;
    }
  b.finalize();
  return b;
}

struct DecomposeResult {
  Decomposition decomposition;
  bool complete;
};

namespace detail {

struct Census {
  std::map<RepClass, std::uint64_t> cycles;
  std::map<RepClass, std::uint64_t> chains;  // end-group counts per class
  bool discarded_frontier_cycle = false;
  bool all_accounted = true;
};

// One orbit census of the system restricted to rings <= cap (cap < 0
// means everything). Deterministic: labels are visited in index order,
// which is fixed at construction (spine first, then prefix rings).
inline Census census(const TruncatedBfs& b, long long cap) {
  const std::size_t n = b.size();
  std::vector<char> active(n, 1);
  if (cap >= 0)
    for (std::size_t x = 0; x < n; ++x) active[x] = b.ring(x) <= cap;
  Sigma sig = compute_sigma(b, &active);

  std::vector<char> frontier(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (!active[x]) continue;
    if (sig.to[x] < 0) frontier[x] = 1;
    for (int i = 1; i <= b.alphabet(); ++i) {
      const std::int32_t y = b.target(i, x);
      if (y < 0 || !active[y]) frontier[x] = 1;
    }
  }

  // Walk the shift's functional graph: every active label flows to a
  // cycle or to a terminal with no preimage (an exit).
  constexpr std::int32_t kUnseen = -1;
  std::vector<std::int32_t> comp(n, kUnseen);
  struct Terminal {
    bool is_cycle;
    bool kept = false;
    RepClass cls = RepClass::cycle(2, Word(2, {1}));  // overwritten
  };
  std::vector<Terminal> terminals;
  std::map<std::vector<long long>, std::pair<std::int32_t, RepClass>> ends;
  Census out;

  std::vector<std::size_t> path;
  for (std::size_t x0 = 0; x0 < n; ++x0) {
    if (!active[x0] || comp[x0] != kUnseen) continue;
    path.clear();
    std::size_t cur = x0;
    std::int32_t tid = -1;
    for (;;) {
      comp[cur] = -2;  // on current path
      path.push_back(cur);
      const std::int32_t nxt = sig.to[cur];
      if (nxt < 0) {
        // exit terminal
        if (b.tails_valid()) {
          RepClass cls = RepClass::chain(b.alphabet(), b.tail(cur));
          auto key = b.end_key(cur);
          auto it = ends.find(key);
          if (it == ends.end()) {
            tid = static_cast<std::int32_t>(terminals.size());
            terminals.push_back({false, true, cls});
            ends.emplace(std::move(key), std::make_pair(tid, cls));
            ++out.chains[cls];
          } else {
            tid = it->second.first;
            if (!(it->second.second == cls))
              throw std::logic_error("census: end group class mismatch");
          }
        } else {
          tid = static_cast<std::int32_t>(terminals.size());
          terminals.push_back({false, false, RepClass::cycle(2, Word(2, {1}))});
        }
        break;
      }
      if (comp[nxt] == -2) {
        // closed a new shift cycle; read its word along the path
        std::size_t start = path.size();
        while (start > 0 && path[start - 1] != static_cast<std::size_t>(nxt))
          --start;
        --start;
        Letters word;
        bool touches_frontier = false;
        for (std::size_t t = start; t < path.size(); ++t) {
          word.push_back(sig.letter[path[t]]);
          if (frontier[path[t]]) touches_frontier = true;
        }
        tid = static_cast<std::int32_t>(terminals.size());
        if (touches_frontier) {
          terminals.push_back({true, false, RepClass::cycle(2, Word(2, {1}))});
          out.discarded_frontier_cycle = true;
        } else {
          RepClass cls = RepClass::cycle(b.alphabet(), Word(b.alphabet(), word));
          terminals.push_back({true, true, cls});
          ++out.cycles[cls];
        }
        break;
      }
      if (comp[nxt] != kUnseen) {
        tid = comp[nxt];
        break;
      }
      cur = static_cast<std::size_t>(nxt);
    }
    for (std::size_t t : path) comp[t] = tid;
  }

  for (std::size_t x = 0; x < n; ++x) {
    if (!active[x] || frontier[x]) continue;
    if (!terminals[comp[x]].kept) out.all_accounted = false;
  }
  return out;
}

}  // namespace detail

/// Reads the decomposition off the orbit structure. Cycle multiplicities
/// are exact counts. Chain multiplicities count infinite-orbit components;
/// a class is certified countably infinite when its component count still
/// grows across three truncation windows one tail period apart.
inline DecomposeResult decompose_bfs(const TruncatedBfs& b) {
  bool has_chain_leaf = false;
  long long step = 1;
  for (const LeafInfo& lf : b.leaves()) {
    if (lf.chain) has_chain_leaf = true;
    step = std::lcm(step, static_cast<long long>(lf.period));
  }

  detail::Census full = detail::census(b, -1);
  Decomposition d(b.alphabet());
  for (const auto& [cls, cnt] : full.cycles) d.add(cls, Mult::finite(cnt));

  if (has_chain_leaf && !full.chains.empty()) {
    long long top = 0;
    for (std::size_t x = 0; x < b.size(); ++x) top = std::max(top, b.ring(x));
    const bool can_probe = top >= 2 * step;
    detail::Census mid, low;
    if (can_probe) {
      mid = detail::census(b, top - step);
      low = detail::census(b, top - 2 * step);
    }
    for (const auto& [cls, cnt] : full.chains) {
      bool omega = false;
      if (can_probe) {
        const auto mi = mid.chains.find(cls);
        const auto lo = low.chains.find(cls);
        const std::uint64_t cm = mi == mid.chains.end() ? 0 : mi->second;
        const std::uint64_t cl = lo == low.chains.end() ? 0 : lo->second;
        omega = cl < cm && cm < cnt;
      }
      d.add(cls, omega ? Mult::infinite() : Mult::finite(cnt));
    }
  }
  // An empty reading of a nonempty system certifies nothing.
  const bool complete = full.all_accounted &&
                        !full.discarded_frontier_cycle &&
                        !(d.empty() && b.size() > 0);
  return {d, complete};
}

/// Vector-state value <GP, pi(s_a s_b^*) GP> for the canonical model;
/// always 0 or 1. Throws when the truncation cannot decide.
inline int state_eval(const TruncatedBfs& b, const Word& a, const Word& bw) {
  if (b.gp() < 0) throw std::invalid_argument("state_eval: no GP label");
  detail::Sigma sig = detail::compute_sigma(b);
  std::int32_t cur = static_cast<std::int32_t>(b.gp());
  for (std::size_t t = 0; t < bw.size(); ++t) {
    if (sig.to[cur] < 0)
      throw std::invalid_argument("state_eval: insufficient depth");
    if (sig.letter[cur] != bw[t]) return 0;
    cur = sig.to[cur];
  }
  for (std::size_t t = a.size(); t-- > 0;) {
    cur = b.target(a[t], cur);
    if (cur < 0)
      throw std::invalid_argument("state_eval: insufficient depth");
  }
  return cur == b.gp() ? 1 : 0;
}

inline int state_eval(const RepClass& r, const Word& a, const Word& bw,
                      int depth) {
  return state_eval(canonical_bfs(r, depth), a, bw);
}

struct BranchResult {
  Decomposition decomposition;
  bool complete;
};

/// Decomposition of (class composed with endomorphism), by simulation on
/// the truncated canonical model. complete reports whether every
/// non-frontier label was accounted to a detected component.
inline BranchResult branch(const RepClass& r, const PermEndo& e,
                           int depth_budget) {
  if (!r.is_cycle())
    throw std::invalid_argument("branch: chain classes not supported");
  if (r.alphabet() != e.alphabet())
    throw std::invalid_argument("branch: alphabet mismatch");
  TruncatedBfs model = compose_bfs(
      canonical_bfs(r, depth_budget, depth_budget, /*annotate=*/false), e);
  DecomposeResult res = decompose_bfs(model);
  return {res.decomposition, res.complete};
}

inline BranchResult branch(const Decomposition& d, const PermEndo& e,
                           int depth_budget) {
  Decomposition out(d.alphabet());
  bool complete = true;
  for (const auto& [r, m] : d.components()) {
    BranchResult part = branch(r, e, depth_budget);
    complete = complete && part.complete;
    for (const auto& [cls, pm] : part.decomposition.components())
      out.add(cls, pm * m);
  }
  return {out, complete};
}

/// Functional-graph dump: one node per label, letter-tagged edges.
inline void write_dot(const TruncatedBfs& b, std::ostream& os) {
  static const char* palette[] = {"black",   "red",    "blue",  "green4",
                                  "orange3", "purple", "brown", "cyan4"};
  os << "digraph bfs {\n  rankdir=LR;\n  node [shape=box, fontsize=9];\n";
  for (std::size_t x = 0; x < b.size(); ++x)
    os << "  n" << x << " [label=\"" << b.name(x) << "\""
       << (b.frontier(x) ? ", style=dashed" : "")
       << (static_cast<std::ptrdiff_t>(x) == b.gp() ? ", penwidth=2" : "")
       << "];\n";
  for (int i = 1; i <= b.alphabet(); ++i)
    for (std::size_t x = 0; x < b.size(); ++x) {
      const std::int32_t y = b.target(i, x);
      if (y < 0) continue;
      os << "  n" << x << " -> n" << y << " [label=\"" << i << "\", color=\""
         << palette[(i - 1) % 8] << "\"];\n";
    }
  os << "}\n";
}

}  // namespace cuntz
