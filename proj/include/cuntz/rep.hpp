// Cyclic representation classes of the Cuntz algebra O_N that admit a
// permuted basis, and their tensor-product decompositions into canonical
// direct sums.
#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "word.hpp"

namespace cuntz {

/// Multiplicity of a direct summand: a positive integer or countably
/// infinite. Infinity absorbs under + and *.
class Mult {
 public:
  static Mult finite(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("Mult: zero multiplicity");
    return Mult(k, false);
  }
  static Mult infinite() { return Mult(0, true); }
  static Mult one() { return finite(1); }

  bool is_infinite() const { return infinite_; }
  std::uint64_t count() const {
    if (infinite_) throw std::logic_error("Mult: infinite has no count");
    return count_;
  }

  Mult& operator+=(const Mult& o) {
    infinite_ = infinite_ || o.infinite_;
    count_ = infinite_ ? 0 : count_ + o.count_;
    return *this;
  }
  friend Mult operator*(const Mult& a, const Mult& b) {
    if (a.infinite_ || b.infinite_) return infinite();
    return finite(a.count_ * b.count_);
  }
  friend bool operator==(const Mult&, const Mult&) = default;

 private:
  Mult(std::uint64_t c, bool inf) : count_(c), infinite_(inf) {}
  std::uint64_t count_;
  bool infinite_;
};

/// A cyclic permutative representation class of O_N: either a cycle,
/// keyed by the lexicographically least rotation of its defining word, or
/// a chain, keyed by its tail (prefixes never change the class, so the
/// canonical chain has an empty prefix and a least-rotated primitive
/// cycle).
class RepClass {
 public:
  enum class Kind { cycle, chain };

  static RepClass cycle(int alphabet, const Word& j) {
    if (j.empty())
      throw std::invalid_argument("RepClass: empty cycle word");
    return RepClass(alphabet, canonical_rotation(Word(alphabet, j.letters())));
  }

  static RepClass chain(int alphabet, const LassoWord& j) {
    Word tail = canonical_rotation(Word(alphabet, j.cycle()));
    return RepClass(alphabet, LassoWord(alphabet, {}, tail.letters()));
  }

  Kind kind() const { return kind_; }
  bool is_cycle() const { return kind_ == Kind::cycle; }
  int alphabet() const { return alphabet_; }

  const Word& cycle_word() const {
    if (!is_cycle()) throw std::logic_error("RepClass: not a cycle");
    return word_;
  }
  const LassoWord& chain_tail() const {
    if (is_cycle()) throw std::logic_error("RepClass: not a chain");
    return tail_;
  }

  /// The word that keys the class: cycle word, or the chain's tail cycle.
  const Word& key_word() const { return word_; }

  friend bool operator==(const RepClass&, const RepClass&) = default;

  /// Sort order used everywhere a decomposition is listed: cycles before
  /// chains, then shorter words, then lexicographic.
  friend bool operator<(const RepClass& a, const RepClass& b) {
    if (a.alphabet_ != b.alphabet_) return a.alphabet_ < b.alphabet_;
    if (a.kind_ != b.kind_) return a.kind_ == Kind::cycle;
    return a.word_ < b.word_;
  }

 private:
  RepClass(int alphabet, Word w)
      : alphabet_(alphabet), kind_(Kind::cycle), word_(std::move(w)),
        tail_(alphabet, {}, {1}) {}
  RepClass(int alphabet, LassoWord t)
      : alphabet_(alphabet), kind_(Kind::chain),
        word_(alphabet, t.cycle()), tail_(std::move(t)) {}

  int alphabet_;
  Kind kind_;
  Word word_;       // cycle word, or the chain's tail cycle
  LassoWord tail_;  // meaningful for chains only
};

/// A direct sum of representation classes with multiplicities, kept
/// aggregated and sorted.
class Decomposition {
 public:
  explicit Decomposition(int alphabet) : alphabet_(alphabet) {
    detail::check_alphabet(alphabet);
  }

  static Decomposition of(const RepClass& r) {
    Decomposition d(r.alphabet());
    d.add(r, Mult::one());
    return d;
  }

  int alphabet() const { return alphabet_; }
  const std::map<RepClass, Mult>& components() const { return components_; }
  bool empty() const { return components_.empty(); }

  void add(const RepClass& r, Mult m) {
    if (r.alphabet() != alphabet_)
      throw std::invalid_argument("Decomposition: component alphabet " +
                                  std::to_string(r.alphabet()) +
                                  " != " + std::to_string(alphabet_));
    auto [it, fresh] = components_.emplace(r, m);
    if (!fresh) it->second += m;
  }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;

 private:
  int alphabet_;
  std::map<RepClass, Mult> components_;
};

inline Decomposition direct_sum(const Decomposition& a,
                                const Decomposition& b) {
  if (a.alphabet() != b.alphabet())
    throw std::invalid_argument("direct_sum: alphabet mismatch");
  Decomposition out = a;
  for (const auto& [r, m] : b.components()) out.add(r, m);
  return out;
}

inline RepClass relabel(const RepClass& r, const Perm& p) {
  if (p.degree() != r.alphabet())
    throw std::invalid_argument("relabel: permutation degree != alphabet");
  if (r.is_cycle())
    return RepClass::cycle(r.alphabet(), relabel(r.cycle_word(), p));
  return RepClass::chain(
      r.alphabet(),
      LassoWord(r.alphabet(), {},
                relabel(Word(r.alphabet(), r.chain_tail().cycle()), p)
                    .letters()));
}

inline Decomposition relabel(const Decomposition& d, const Perm& p) {
  Decomposition out(d.alphabet());
  for (const auto& [r, m] : d.components()) out.add(relabel(r, p), m);
  return out;
}

/// Decomposes the tensor product of two cyclic classes.
///
///   cycle(a) (x) cycle(b):  gcd(a,b) cycles of length lcm(a,b), the packs
///                           of the left word with each rotation of the
///                           right word.
///   chain    (x) cycle(b):  b chains, the packs of the tail with each
///                           rotation of the right word.
///   chain    (x) chain:     the distinct tail classes of the packs with
///                           all tail shifts of the right word, each with
///                           infinite multiplicity.
///   cycle    (x) chain:     the mirror case, via the transposition
///                           relabeling of the product taken in the other
///                           order.
inline Decomposition tensor(const RepClass& r1, const RepClass& r2) {
  const int n = r1.alphabet(), m = r2.alphabet();
  const int nm = detail::checked_alphabet_product(n, m);
  Decomposition out(nm);
  if (r1.is_cycle() && r2.is_cycle()) {
    const Word& k = r1.cycle_word();
    const Word& l = r2.cycle_word();
    const std::size_t g = std::gcd(k.size(), l.size());
    for (std::size_t i = 1; i <= g; ++i)
      out.add(RepClass::cycle(nm, pack_lcm(k, rotate(l, i))), Mult::one());
    return out;
  }
  if (!r1.is_cycle() && r2.is_cycle()) {
    const LassoWord& k = r1.chain_tail();
    const Word& l = r2.cycle_word();
    for (std::size_t i = 1; i <= l.size(); ++i)
      out.add(RepClass::chain(nm, pack_lcm(k, rotate(l, i))), Mult::one());
    return out;
  }
  if (!r1.is_cycle() && !r2.is_cycle()) {
    const LassoWord& k = r1.chain_tail();
    const LassoWord& l = r2.chain_tail();
    // Tail classes depend only on the relative phase of the two cycles,
    // so one period window of shifts meets every class of the two-sided
    // family.
    for (std::size_t i = 0; i < l.cycle().size(); ++i)
      out.add(RepClass::chain(nm, pack_lcm(k, shift(l, i))),
              Mult::infinite());
    return out;
  }
  // cycle (x) chain: transpose, then relabel N(j-1)+i -> M(i-1)+j.
  Decomposition swapped = tensor(r2, r1);
  Perm p = relabel_perm({m, n}, Perm::transposition(2, 1, 2),
                        Perm::identity(2));
  return relabel(swapped, p);
}

inline Decomposition tensor(const Decomposition& d1, const Decomposition& d2) {
  const int nm = detail::checked_alphabet_product(d1.alphabet(), d2.alphabet());
  Decomposition out(nm);
  for (const auto& [r1, m1] : d1.components())
    for (const auto& [r2, m2] : d2.components()) {
      const Mult scale = m1 * m2;
      const Decomposition pair = tensor(r1, r2);
      for (const auto& [r, m] : pair.components()) out.add(r, m * scale);
    }
  return out;
}

inline Decomposition tensor_power(const Decomposition& d, int n) {
  if (n < 1) throw std::invalid_argument("tensor_power: exponent must be >= 1");
  Decomposition out = d;
  for (int t = 1; t < n; ++t) out = tensor(out, d);
  return out;
}

/// Unitary equivalence of classes: cycles agree when their canonical
/// rotations agree; chains agree when their tails do.
inline bool equivalent(const RepClass& r1, const RepClass& r2) {
  if (r1.alphabet() != r2.alphabet())
    throw std::invalid_argument("equivalent: alphabet mismatch");
  return r1 == r2;
}

/// Cycles are irreducible exactly when their word is non-periodic; chains
/// are irreducible at class level.
inline bool irreducible(const RepClass& r) {
  if (!r.is_cycle()) return true;
  return primitive_root(r.cycle_word()).exponent == 1;
}

}  // namespace cuntz
