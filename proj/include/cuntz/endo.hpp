// Endomorphisms of O_N of the form s_i -> u s_i, where u is the monomial
// unitary of a permutation of the length-l words over {1..N}. Supports
// their monomial expansions and the tensor product into O_{NM}.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "word.hpp"

namespace cuntz {

namespace detail {

inline std::size_t word_space_size(int alphabet, int depth) {
  std::size_t s = 1;
  for (int t = 0; t < depth; ++t) {
    s *= static_cast<std::size_t>(alphabet);
    if (s > (1u << 26))
      throw std::invalid_argument("word table too large: alphabet " +
                                  std::to_string(alphabet) + ", depth " +
                                  std::to_string(depth));
  }
  return s;
}

// Big-endian word <-> table index.
inline std::size_t encode_word(int alphabet, const Letters& w) {
  std::size_t code = 0;
  for (int a : w) code = code * alphabet + static_cast<std::size_t>(a - 1);
  return code;
}

inline Letters decode_word(int alphabet, int depth, std::size_t code) {
  Letters w(depth);
  for (int t = depth - 1; t >= 0; --t) {
    w[t] = static_cast<int>(code % alphabet) + 1;
    code /= alphabet;
  }
  return w;
}

}  // namespace detail

/// A bijection on {1..N}^l, stored at its canonical depth: whenever the
/// map factors as a shallower bijection times the identity on trailing
/// letters, the shallower depth is kept.
class PermEndo {
 public:
  static PermEndo identity(int alphabet) {
    detail::check_alphabet(alphabet);
    std::vector<std::uint32_t> t(static_cast<std::size_t>(alphabet));
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = static_cast<std::uint32_t>(i);
    return PermEndo(alphabet, 1, std::move(t));
  }

  static PermEndo from_word_map(int alphabet, int depth,
                                const std::vector<std::pair<Word, Word>>& pairs) {
    detail::check_alphabet(alphabet);
    if (depth < 1) throw std::invalid_argument("PermEndo: depth must be >= 1");
    const std::size_t size = detail::word_space_size(alphabet, depth);
    if (pairs.size() != size)
      throw std::invalid_argument("PermEndo: expected " +
                                  std::to_string(size) + " pairs, got " +
                                  std::to_string(pairs.size()));
    std::vector<std::uint32_t> table(size, 0);
    std::vector<char> defined(size, 0), hit(size, 0);
    for (const auto& [k, j] : pairs) {
      if (k.size() != static_cast<std::size_t>(depth) ||
          j.size() != static_cast<std::size_t>(depth))
        throw std::invalid_argument("PermEndo: word length != depth");
      detail::check_letters(alphabet, k.letters());
      detail::check_letters(alphabet, j.letters());
      const std::size_t kc = detail::encode_word(alphabet, k.letters());
      const std::size_t jc = detail::encode_word(alphabet, j.letters());
      if (defined[kc])
        throw std::invalid_argument("PermEndo: duplicate source word");
      if (hit[jc])
        throw std::invalid_argument("PermEndo: map is not a bijection");
      defined[kc] = hit[jc] = 1;
      table[kc] = static_cast<std::uint32_t>(jc);
    }
    return PermEndo(alphabet, depth, std::move(table));
  }

  static PermEndo from_letter_perm(const Perm& p) {
    std::vector<std::uint32_t> t(static_cast<std::size_t>(p.degree()));
    for (int x = 1; x <= p.degree(); ++x)
      t[x - 1] = static_cast<std::uint32_t>(p(x) - 1);
    return PermEndo(p.degree(), 1, std::move(t));
  }

  int alphabet() const { return alphabet_; }
  int depth() const { return depth_; }
  const std::vector<std::uint32_t>& table() const { return table_; }

  /// Image of a word; |k| must be >= depth(), trailing letters pass
  /// through untouched.
  Word apply(const Word& k) const {
    if (k.size() < static_cast<std::size_t>(depth_))
      throw std::invalid_argument("PermEndo: word shorter than depth");
    Letters head(k.letters().begin(), k.letters().begin() + depth_);
    Letters out = detail::decode_word(
        alphabet_, depth_, table_[detail::encode_word(alphabet_, head)]);
    out.insert(out.end(), k.letters().begin() + depth_, k.letters().end());
    return Word(alphabet_, std::move(out));
  }

  friend bool operator==(const PermEndo&, const PermEndo&) = default;

 private:
  PermEndo(int alphabet, int depth, std::vector<std::uint32_t> table)
      : alphabet_(alphabet), depth_(depth), table_(std::move(table)) {
    reduce_depth();
  }

  // Strips trailing identity factors: if map(u a) == f(u) a for all u, a,
  // keep f instead.
  void reduce_depth() {
    const std::size_t n = static_cast<std::size_t>(alphabet_);
    while (depth_ > 1) {
      const std::size_t heads = table_.size() / n;
      std::vector<std::uint32_t> f(heads, 0);
      bool factors = true;
      for (std::size_t u = 0; u < heads && factors; ++u) {
        const std::uint32_t base = table_[u * n];
        if (base % n != 0) {
          factors = false;
          break;
        }
        f[u] = base / static_cast<std::uint32_t>(n);
        for (std::size_t a = 1; a < n; ++a)
          if (table_[u * n + a] != f[u] * n + a) {
            factors = false;
            break;
          }
      }
      if (!factors) break;
      table_ = std::move(f);
      --depth_;
    }
  }

  int alphabet_;
  int depth_;
  std::vector<std::uint32_t> table_;
};

/// One term s_left s_right^* of a monomial sum; all coefficients are +1.
struct Monomial {
  Word left;
  Word right;
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.left != b.left) return a.left < b.left;
    return a.right < b.right;
  }
};

using MonomialSum = std::vector<Monomial>;

namespace detail {

// Replaces every full group { s_{Ja} s_{Ka}^* : a = 1..N } by s_J s_K^*.
inline void collapse_monomials(int alphabet, MonomialSum& sum) {
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::pair<Word, Word>, std::vector<std::size_t>> groups;
    for (std::size_t idx = 0; idx < sum.size(); ++idx) {
      const Monomial& t = sum[idx];
      if (t.left.empty() || t.right.empty()) continue;
      if (t.left.letters().back() != t.right.letters().back()) continue;
      Letters j(t.left.letters().begin(), t.left.letters().end() - 1);
      Letters k(t.right.letters().begin(), t.right.letters().end() - 1);
      groups[{Word(alphabet, std::move(j)), Word(alphabet, std::move(k))}]
          .push_back(idx);
    }
    for (const auto& [jk, members] : groups) {
      if (members.size() != static_cast<std::size_t>(alphabet)) continue;
      std::vector<char> seen(static_cast<std::size_t>(alphabet), 0);
      bool full = true;
      for (std::size_t idx : members) {
        const int a = sum[idx].left.letters().back();
        if (seen[a - 1]) full = false;
        seen[a - 1] = 1;
      }
      if (!full) continue;
      std::vector<std::size_t> drop(members.begin(), members.end());
      std::sort(drop.rbegin(), drop.rend());
      for (std::size_t idx : drop) sum.erase(sum.begin() + idx);
      sum.push_back({jk.first, jk.second});
      changed = true;
      break;
    }
  }
  std::sort(sum.begin(), sum.end());
}

}  // namespace detail

/// The image of the generator s_i as a normalized monomial sum
/// Sum_w s_{map(i w)} s_w^*, with full groups over a common stem merged.
inline MonomialSum monomials(const PermEndo& e, int letter) {
  const int n = e.alphabet();
  if (letter < 1 || letter > n)
    throw std::invalid_argument("monomials: letter out of range");
  MonomialSum sum;
  const int l = e.depth();
  const std::size_t suffixes = detail::word_space_size(n, l - 1);
  for (std::size_t c = 0; c < suffixes; ++c) {
    Letters w = detail::decode_word(n, l - 1, c);
    Letters k = {letter};
    k.insert(k.end(), w.begin(), w.end());
    sum.push_back({e.apply(Word(n, std::move(k))), Word(n, std::move(w))});
  }
  detail::collapse_monomials(n, sum);
  return sum;
}

/// Tensor product: the bijection on {1..NM}^max(l,k) obtained by packing
/// the two maps letterwise after padding the shallower one with the
/// identity on trailing letters.
inline PermEndo tensor(const PermEndo& e1, const PermEndo& e2) {
  const int n = e1.alphabet(), m = e2.alphabet();
  const int nm = detail::checked_alphabet_product(n, m);
  const int d = std::max(e1.depth(), e2.depth());
  const std::size_t size = detail::word_space_size(nm, d);
  std::vector<std::pair<Word, Word>> pairs;
  pairs.reserve(size);
  for (std::size_t c = 0; c < size; ++c) {
    Letters x = detail::decode_word(nm, d, c);
    Letters k(d), q(d);
    for (int t = 0; t < d; ++t) {
      auto [a, b] = unpack_index(n, m, x[t]);
      k[t] = a;
      q[t] = b;
    }
    Word gk = e1.apply(Word(n, std::move(k)));
    Word hq = e2.apply(Word(m, std::move(q)));
    pairs.emplace_back(Word(nm, std::move(x)), pack(gk, hq));
  }
  return PermEndo::from_word_map(nm, d, pairs);
}

/// Packed permutation of letters: (g*h)(M(i-1)+j) = M(g(i)-1)+h(j). The
/// tensor of two depth-1 endomorphisms is the depth-1 endomorphism of the
/// packed permutation.
inline Perm pack_perm(const Perm& g, const Perm& h) {
  const int n = g.degree(), m = h.degree();
  const int nm = detail::checked_alphabet_product(n, m);
  std::vector<int> img(static_cast<std::size_t>(nm));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j)
      img[pack_index(n, m, i, j) - 1] = pack_index(n, m, g(i), h(j));
  return Perm(std::move(img));
}

namespace builtin {

// The two depth-2 endomorphisms of O_2 that swap one pair of length-2
// words, and their tensor products on O_4.
inline const PermEndo& psi12() {
  static const PermEndo e = PermEndo::from_word_map(
      2, 2,
      {{Word(2, {1, 1}), Word(2, {1, 2})},
       {Word(2, {1, 2}), Word(2, {1, 1})},
       {Word(2, {2, 1}), Word(2, {2, 1})},
       {Word(2, {2, 2}), Word(2, {2, 2})}});
  return e;
}

inline const PermEndo& psi13() {
  static const PermEndo e = PermEndo::from_word_map(
      2, 2,
      {{Word(2, {1, 1}), Word(2, {2, 1})},
       {Word(2, {1, 2}), Word(2, {1, 2})},
       {Word(2, {2, 1}), Word(2, {1, 1})},
       {Word(2, {2, 2}), Word(2, {2, 2})}});
  return e;
}

inline const PermEndo& rho() {
  static const PermEndo e = tensor(psi12(), psi13());
  return e;
}

inline const PermEndo& rhobar() {
  static const PermEndo e = tensor(psi13(), psi12());
  return e;
}

}  // namespace builtin

inline const PermEndo* find_builtin_endo(std::string_view name) {
  if (name == "psi12") return &builtin::psi12();
  if (name == "psi13") return &builtin::psi13();
  if (name == "rho") return &builtin::rho();
  if (name == "rhobar") return &builtin::rhobar();
  return nullptr;
}

}  // namespace cuntz
