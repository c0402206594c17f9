// Word algebra over finite alphabets {1..N}: finite words, eventually
// periodic infinite words (lasso encoding), index packing bijections and
// letter permutations. Everything here is an immutable value.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cuntz {

using Letters = std::vector<int>;

namespace detail {

inline void check_alphabet(int n) {
  if (n < 2)
    throw std::invalid_argument("alphabet size must be >= 2, got " +
                                std::to_string(n));
}

inline void check_letters(int n, const Letters& ls) {
  for (int a : ls)
    if (a < 1 || a > n)
      throw std::invalid_argument("letter " + std::to_string(a) +
                                  " outside alphabet {1.." + std::to_string(n) +
                                  "}");
}

inline int checked_alphabet_product(int n, int m) {
  long long p = static_cast<long long>(n) * m;
  if (p > (1 << 30))
    throw std::invalid_argument("alphabet product too large: " +
                                std::to_string(p));
  return static_cast<int>(p);
}

}  // namespace detail

/// A finite word over {1..N}. The empty word is the unit of concatenation
/// and may combine with words over any alphabet.
class Word {
 public:
  Word(int alphabet, Letters letters)
      : alphabet_(alphabet), letters_(std::move(letters)) {
    detail::check_alphabet(alphabet_);
    detail::check_letters(alphabet_, letters_);
  }

  static Word unit(int alphabet) { return Word(alphabet, {}); }

  int alphabet() const { return alphabet_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letters& letters() const { return letters_; }
  int operator[](std::size_t pos) const { return letters_[pos]; }

  friend bool operator==(const Word&, const Word&) = default;

  /// Orders by alphabet, then shortlex.
  friend bool operator<(const Word& a, const Word& b) {
    if (a.alphabet_ != b.alphabet_) return a.alphabet_ < b.alphabet_;
    if (a.size() != b.size()) return a.size() < b.size();
    return a.letters_ < b.letters_;
  }

 private:
  int alphabet_;
  Letters letters_;
};

inline Word concat(const Word& a, const Word& b) {
  if (!a.empty() && !b.empty() && a.alphabet() != b.alphabet())
    throw std::invalid_argument("concat: alphabet mismatch");
  int n = a.empty() && !b.empty() ? b.alphabet() : a.alphabet();
  Letters out = a.letters();
  out.insert(out.end(), b.letters().begin(), b.letters().end());
  return Word(n, std::move(out));
}

/// k-fold repetition; power(j, 0) is the unit word.
inline Word power(const Word& j, int k) {
  if (k < 0) throw std::invalid_argument("power: negative exponent");
  Letters out;
  out.reserve(j.size() * static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t)
    out.insert(out.end(), j.letters().begin(), j.letters().end());
  return Word(j.alphabet(), std::move(out));
}

/// Cyclic rotation starting at position i (1-based); rotate(w, 1) == w.
inline Word rotate(const Word& w, std::size_t i) {
  if (i < 1 || i > w.size())
    throw std::invalid_argument("rotate: start position out of range");
  Letters out(w.letters().begin() + (i - 1), w.letters().end());
  out.insert(out.end(), w.letters().begin(), w.letters().begin() + (i - 1));
  return Word(w.alphabet(), std::move(out));
}

/// The packing bijection {1..N} x {1..M} -> {1..NM}, (a,b) -> M(a-1)+b.
inline int pack_index(int n, int m, int a, int b) {
  detail::check_alphabet(n);
  detail::check_alphabet(m);
  if (a < 1 || a > n || b < 1 || b > m)
    throw std::invalid_argument("pack_index: letter out of range");
  return m * (a - 1) + b;
}

inline std::pair<int, int> unpack_index(int n, int m, int x) {
  detail::check_alphabet(n);
  detail::check_alphabet(m);
  if (x < 1 || x > n * m)
    throw std::invalid_argument("unpack_index: letter out of range");
  return {(x - 1) / m + 1, (x - 1) % m + 1};
}

/// Letterwise pack of two equal-length words into the product alphabet.
inline Word pack(const Word& k, const Word& l) {
  if (k.size() != l.size() || k.empty())
    throw std::invalid_argument("pack: words must have equal nonzero length");
  const int n = k.alphabet(), m = l.alphabet();
  const int nm = detail::checked_alphabet_product(n, m);
  Letters out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    out[i] = pack_index(n, m, k[i], l[i]);
  return Word(nm, std::move(out));
}

/// Unfolds both words to their common period lcm(|k|,|l|) and packs
/// letterwise.
inline Word pack_lcm(const Word& k, const Word& l) {
  if (k.empty() || l.empty())
    throw std::invalid_argument("pack_lcm: empty operand");
  const int n = k.alphabet(), m = l.alphabet();
  const int nm = detail::checked_alphabet_product(n, m);
  const std::size_t c = std::lcm(k.size(), l.size());
  Letters out(c);
  for (std::size_t i = 0; i < c; ++i)
    out[i] = pack_index(n, m, k[i % k.size()], l[i % l.size()]);
  return Word(nm, std::move(out));
}

/// Index of the lexicographically least rotation (Booth's algorithm).
inline std::size_t least_rotation_index(const Letters& s) {
  const std::size_t n = s.size();
  if (n == 0) throw std::invalid_argument("least_rotation_index: empty word");
  std::vector<std::ptrdiff_t> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const int sj = s[j % n];
    std::ptrdiff_t i = f[j - k - 1];
    while (i != -1 && sj != s[(k + i + 1) % n]) {
      if (sj < s[(k + i + 1) % n]) k = j - i - 1;
      i = f[i];
    }
    if (sj != s[(k + i + 1) % n]) {
      if (sj < s[k % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k;
}

/// Lexicographically least cyclic rotation; idempotent.
inline Word canonical_rotation(const Word& w) {
  if (w.empty())
    throw std::invalid_argument("canonical_rotation: empty word");
  return rotate(w, least_rotation_index(w.letters()) + 1);
}

struct PrimitiveRoot {
  Word root;
  int exponent;
};

/// Smallest p with w = p^e; exponent 1 means w is non-periodic.
inline PrimitiveRoot primitive_root(const Word& w) {
  const std::size_t n = w.size();
  if (n == 0) throw std::invalid_argument("primitive_root: empty word");
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i)
      ok = w[i] == w[i % d];
    if (ok) {
      Letters head(w.letters().begin(), w.letters().begin() + d);
      return {Word(w.alphabet(), std::move(head)), static_cast<int>(n / d)};
    }
  }
  return {w, 1};  // unreachable, d == n always matches
}

/// A permutation of {1..n}, stored as its image list.
class Perm {
 public:
  explicit Perm(std::vector<int> image) : image_(std::move(image)) {
    const int n = static_cast<int>(image_.size());
    if (n == 0) throw std::invalid_argument("Perm: empty image list");
    std::vector<char> seen(image_.size(), 0);
    for (int v : image_) {
      if (v < 1 || v > n || seen[v - 1])
        throw std::invalid_argument("Perm: image list is not a bijection");
      seen[v - 1] = 1;
    }
  }

  static Perm identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 1);
    return Perm(std::move(img));
  }

  static Perm transposition(int n, int a, int b) {
    Perm p = identity(n);
    if (a < 1 || a > n || b < 1 || b > n)
      throw std::invalid_argument("transposition: point out of range");
    std::swap(p.image_[a - 1], p.image_[b - 1]);
    return p;
  }

  int degree() const { return static_cast<int>(image_.size()); }

  int operator()(int x) const {
    if (x < 1 || x > degree())
      throw std::invalid_argument("Perm: point out of range");
    return image_[x - 1];
  }

  Perm inverse() const {
    std::vector<int> img(image_.size());
    for (int x = 1; x <= degree(); ++x) img[image_[x - 1] - 1] = x;
    return Perm(std::move(img));
  }

  bool is_identity() const {
    for (int x = 1; x <= degree(); ++x)
      if (image_[x - 1] != x) return false;
    return true;
  }

  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  std::vector<int> image_;
};

/// (f . g)(x) = f(g(x)).
inline Perm compose(const Perm& f, const Perm& g) {
  if (f.degree() != g.degree())
    throw std::invalid_argument("compose: degree mismatch");
  std::vector<int> img(f.degree());
  for (int x = 1; x <= f.degree(); ++x) img[x - 1] = f(g(x));
  return Perm(std::move(img));
}

/// Applies a letter permutation letterwise.
inline Word relabel(const Word& w, const Perm& p) {
  if (p.degree() != w.alphabet())
    throw std::invalid_argument("relabel: permutation degree != alphabet");
  Letters out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = p(w[i]);
  return Word(w.alphabet(), std::move(out));
}

/// Nested pack of (i_{sigma(1)},...,i_{sigma(n)}) with mixed radices
/// N_{sigma(1)},...,N_{sigma(n)}; a bijection tuples -> {1..prod N_t}.
inline int multi_index(const std::vector<int>& alphabets, const Perm& sigma,
                       const std::vector<int>& letters) {
  const int n = static_cast<int>(alphabets.size());
  if (n < 2) throw std::invalid_argument("multi_index: need >= 2 slots");
  if (sigma.degree() != n || static_cast<int>(letters.size()) != n)
    throw std::invalid_argument("multi_index: dimension mismatch");
  long long total = 1;
  for (int t = 1; t <= n; ++t) {
    const int nt = alphabets[t - 1];
    detail::check_alphabet(nt);
    const int it = letters[t - 1];
    if (it < 1 || it > nt)
      throw std::invalid_argument("multi_index: letter out of range");
    total *= nt;
    if (total > (1 << 30))
      throw std::invalid_argument("multi_index: alphabet product too large");
  }
  long long acc = letters[sigma(1) - 1];
  for (int t = 2; t <= n; ++t) {
    const int slot = sigma(t);
    acc = static_cast<long long>(alphabets[slot - 1]) * (acc - 1) +
          letters[slot - 1];
  }
  return static_cast<int>(acc);
}

/// The letter permutation of {1..prod N_t} sending the eta-pack of every
/// tuple to its sigma-pack. relabel_perm(Ns, s, s) is the identity and
/// relabel_perm(Ns, s, e) . relabel_perm(Ns, e, t) == relabel_perm(Ns, s, t).
inline Perm relabel_perm(const std::vector<int>& alphabets, const Perm& sigma,
                         const Perm& eta) {
  const int n = static_cast<int>(alphabets.size());
  if (n < 2) throw std::invalid_argument("relabel_perm: need >= 2 slots");
  if (sigma.degree() != n || eta.degree() != n)
    throw std::invalid_argument("relabel_perm: permutation degree mismatch");
  long long m = 1;
  for (int nt : alphabets) {
    detail::check_alphabet(nt);
    m *= nt;
    if (m > (1 << 30))
      throw std::invalid_argument("relabel_perm: alphabet product too large");
  }
  std::vector<int> img(static_cast<std::size_t>(m), 0);
  std::vector<int> tuple(alphabets.size(), 1);
  for (;;) {
    img[multi_index(alphabets, eta, tuple) - 1] =
        multi_index(alphabets, sigma, tuple);
    int t = n - 1;
    while (t >= 0 && tuple[t] == alphabets[t]) tuple[t--] = 1;
    if (t < 0) break;
    ++tuple[t];
  }
  return Perm(std::move(img));
}

/// An eventually periodic infinite word: finite prefix + primitive cycle
/// repeated forever. Canonical form makes equality of values coincide with
/// equality of the denoted infinite words: the cycle is primitive and the
/// prefix is minimal (its last letter never duplicates the letter obtained
/// by rotating the cycle backward one step).
class LassoWord {
 public:
  LassoWord(int alphabet, Letters prefix, Letters cycle)
      : alphabet_(alphabet), prefix_(std::move(prefix)),
        cycle_(std::move(cycle)) {
    detail::check_alphabet(alphabet_);
    detail::check_letters(alphabet_, prefix_);
    detail::check_letters(alphabet_, cycle_);
    if (cycle_.empty())
      throw std::invalid_argument("LassoWord: cycle must be nonempty");
    canonicalize();
  }

  int alphabet() const { return alphabet_; }
  const Letters& prefix() const { return prefix_; }
  const Letters& cycle() const { return cycle_; }

  /// Letter at 0-based position in the infinite word.
  int at(std::size_t pos) const {
    if (pos < prefix_.size()) return prefix_[pos];
    return cycle_[(pos - prefix_.size()) % cycle_.size()];
  }

  Letters expand(std::size_t count) const {
    Letters out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = at(i);
    return out;
  }

  friend bool operator==(const LassoWord&, const LassoWord&) = default;

  friend bool operator<(const LassoWord& a, const LassoWord& b) {
    if (a.alphabet_ != b.alphabet_) return a.alphabet_ < b.alphabet_;
    if (a.prefix_ != b.prefix_) return a.prefix_ < b.prefix_;
    return a.cycle_ < b.cycle_;
  }

 private:
  void canonicalize() {
    // primitive cycle
    PrimitiveRoot pr = primitive_root(Word(alphabet_, cycle_));
    cycle_ = pr.root.letters();
    // minimal prefix: absorb trailing prefix letters into the cycle phase
    while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
      prefix_.pop_back();
      std::rotate(cycle_.begin(), cycle_.end() - 1, cycle_.end());
    }
  }

  int alphabet_;
  Letters prefix_;
  Letters cycle_;
};

/// Tail shift: for i >= 0 drops the first i letters, for i < 0 prepends
/// |i| copies of the letter 1. Padding touches only a finite prefix, so
/// the tail class is unchanged.
inline LassoWord shift(const LassoWord& w, long long i) {
  if (i >= 0) {
    std::size_t drop = static_cast<std::size_t>(i);
    const std::size_t from_prefix = std::min(drop, w.prefix().size());
    Letters pre(w.prefix().begin() + from_prefix, w.prefix().end());
    Letters cyc = w.cycle();
    drop -= from_prefix;
    if (pre.empty() && drop > 0) {
      const std::size_t r = drop % cyc.size();
      std::rotate(cyc.begin(), cyc.begin() + r, cyc.end());
    }
    return LassoWord(w.alphabet(), std::move(pre), std::move(cyc));
  }
  Letters pre(static_cast<std::size_t>(-i), 1);
  pre.insert(pre.end(), w.prefix().begin(), w.prefix().end());
  return LassoWord(w.alphabet(), std::move(pre), w.cycle());
}

/// Letterwise pack of an infinite word with the periodic unfolding of a
/// finite word.
inline LassoWord pack_lcm(const LassoWord& k, const Word& l) {
  if (l.empty()) throw std::invalid_argument("pack_lcm: empty finite factor");
  const int n = k.alphabet(), m = l.alphabet();
  const int nm = detail::checked_alphabet_product(n, m);
  const std::size_t off = k.prefix().size();
  const std::size_t per = std::lcm(k.cycle().size(), l.size());
  Letters pre(off), cyc(per);
  for (std::size_t t = 0; t < off; ++t)
    pre[t] = pack_index(n, m, k.at(t), l[t % l.size()]);
  for (std::size_t t = 0; t < per; ++t)
    cyc[t] = pack_index(n, m, k.at(off + t), l[(off + t) % l.size()]);
  return LassoWord(nm, std::move(pre), std::move(cyc));
}

/// Letterwise pack of two infinite words.
inline LassoWord pack_lcm(const LassoWord& k, const LassoWord& l) {
  const int n = k.alphabet(), m = l.alphabet();
  const int nm = detail::checked_alphabet_product(n, m);
  const std::size_t off = std::max(k.prefix().size(), l.prefix().size());
  const std::size_t per = std::lcm(k.cycle().size(), l.cycle().size());
  Letters pre(off), cyc(per);
  for (std::size_t t = 0; t < off; ++t)
    pre[t] = pack_index(n, m, k.at(t), l.at(t));
  for (std::size_t t = 0; t < per; ++t)
    cyc[t] = pack_index(n, m, k.at(off + t), l.at(off + t));
  return LassoWord(nm, std::move(pre), std::move(cyc));
}

}  // namespace cuntz
