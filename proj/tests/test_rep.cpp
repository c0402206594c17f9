#include <doctest.h>

#include <numeric>
#include <random>

#include "cuntz/rep.hpp"

using namespace cuntz;

namespace {

RepClass cyc(int n, Letters ls) { return RepClass::cycle(n, Word(n, ls)); }
RepClass chn(int n, Letters pre, Letters c) {
  return RepClass::chain(n, LassoWord(n, std::move(pre), std::move(c)));
}

Decomposition sum_of(std::initializer_list<RepClass> rs) {
  Decomposition d(rs.begin()->alphabet());
  for (const RepClass& r : rs) d.add(r, Mult::one());
  return d;
}

Word random_word(std::mt19937& rng, int alphabet, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> letter(1, alphabet);
  Letters ls(len(rng));
  for (int& a : ls) a = letter(rng);
  return Word(alphabet, std::move(ls));
}

}  // namespace

TEST_CASE("multiplicity arithmetic") {
  Mult a = Mult::finite(2);
  a += Mult::finite(3);
  CHECK(a == Mult::finite(5));
  a += Mult::infinite();
  CHECK(a.is_infinite());
  CHECK((Mult::infinite() * Mult::finite(7)).is_infinite());
  CHECK(Mult::finite(2) * Mult::finite(3) == Mult::finite(6));
  CHECK_THROWS_AS(Mult::finite(0), std::invalid_argument);
}

TEST_CASE("cycle classes canonicalize by least rotation") {
  CHECK(cyc(4, {2, 4}) == cyc(4, {2, 4}));
  CHECK(cyc(4, {4, 2}) == cyc(4, {2, 4}));
  CHECK(cyc(4, {4, 2}).cycle_word() == Word(4, {2, 4}));
  CHECK_THROWS_AS(cyc(2, {3}), std::invalid_argument);
  CHECK_THROWS_AS(RepClass::cycle(2, Word::unit(2)), std::invalid_argument);
  // periodic words stay distinct from their root
  CHECK(cyc(2, {1, 1}) != cyc(2, {1}));
}

TEST_CASE("chain classes are keyed by their tail") {
  CHECK(chn(2, {}, {2, 1}) == chn(2, {}, {1, 2}));
  CHECK(chn(2, {1, 2, 2}, {2, 1}) == chn(2, {}, {1, 2}));
  CHECK(chn(2, {}, {1, 2, 1, 2}) == chn(2, {}, {1, 2}));
  CHECK(chn(2, {}, {1}).chain_tail() == LassoWord(2, {}, {1}));
  CHECK(chn(2, {}, {1}) != chn(2, {}, {2}));
}

TEST_CASE("one-letter products") {
  CHECK(tensor(cyc(2, {1}), cyc(2, {1})) == Decomposition::of(cyc(4, {1})));
  CHECK(tensor(cyc(2, {1}), cyc(2, {2})) == Decomposition::of(cyc(4, {2})));
  CHECK(tensor(cyc(2, {2}), cyc(2, {1})) == Decomposition::of(cyc(4, {3})));
  CHECK(tensor(cyc(2, {2}), cyc(2, {2})) == Decomposition::of(cyc(4, {4})));
}

TEST_CASE("two-letter products") {
  CHECK(tensor(cyc(2, {1, 2}), cyc(2, {1, 2})) ==
        sum_of({cyc(4, {1, 4}), cyc(4, {2, 3})}));
  // periodic left factor: both rotations land in the same class
  Decomposition d = tensor(cyc(2, {1, 1}), cyc(2, {1, 2}));
  Decomposition expect(4);
  expect.add(cyc(4, {1, 2}), Mult::finite(2));
  CHECK(d == expect);
}

TEST_CASE("cycle product shape: gcd many, lcm long, cycles only") {
  std::mt19937 rng(31);
  for (int t = 0; t < 60; ++t) {
    Word k = random_word(rng, 3, 6);
    Word l = random_word(rng, 2, 6);
    Decomposition d = tensor(RepClass::cycle(3, k), RepClass::cycle(2, l));
    std::uint64_t count = 0;
    for (const auto& [r, m] : d.components()) {
      CHECK(r.is_cycle());
      CHECK(r.cycle_word().size() == std::lcm(k.size(), l.size()));
      count += m.count();
    }
    CHECK(count == std::gcd(k.size(), l.size()));
  }
}

TEST_CASE("rotation of either factor never changes the product") {
  std::mt19937 rng(37);
  for (int t = 0; t < 40; ++t) {
    Word k = random_word(rng, 2, 5);
    Word l = random_word(rng, 3, 5);
    Decomposition base = tensor(RepClass::cycle(2, k), RepClass::cycle(3, l));
    for (std::size_t i = 1; i <= k.size(); ++i)
      for (std::size_t j = 1; j <= l.size(); ++j)
        CHECK(tensor(RepClass::cycle(2, rotate(k, i)),
                     RepClass::cycle(3, rotate(l, j))) == base);
  }
}

TEST_CASE("tensor distributes over direct sums") {
  std::mt19937 rng(41);
  for (int t = 0; t < 30; ++t) {
    Decomposition d1 = Decomposition::of(RepClass::cycle(2, random_word(rng, 2, 4)));
    Decomposition d2 = Decomposition::of(RepClass::cycle(3, random_word(rng, 3, 4)));
    Decomposition d3 = Decomposition::of(RepClass::cycle(3, random_word(rng, 3, 4)));
    CHECK(tensor(d1, direct_sum(d2, d3)) ==
          direct_sum(tensor(d1, d2), tensor(d1, d3)));
    CHECK(tensor(direct_sum(d2, d3), d1) ==
          direct_sum(tensor(d2, d1), tensor(d3, d1)));
  }
}

TEST_CASE("tensor is associative") {
  std::mt19937 rng(43);
  for (int t = 0; t < 25; ++t) {
    Decomposition d1 = Decomposition::of(RepClass::cycle(2, random_word(rng, 2, 4)));
    Decomposition d2 = Decomposition::of(RepClass::cycle(3, random_word(rng, 3, 4)));
    Decomposition d3 = Decomposition::of(RepClass::cycle(2, random_word(rng, 2, 4)));
    CHECK(tensor(tensor(d1, d2), d3) == tensor(d1, tensor(d2, d3)));
  }
}

TEST_CASE("transposing the factors acts as a letter relabeling") {
  std::mt19937 rng(47);
  const Perm swap12 = Perm::transposition(2, 1, 2);
  for (int t = 0; t < 40; ++t) {
    const int n = 2, m = 3;
    Decomposition d1 = Decomposition::of(RepClass::cycle(n, random_word(rng, n, 4)));
    Decomposition d2 = Decomposition::of(RepClass::cycle(m, random_word(rng, m, 4)));
    Perm alpha = relabel_perm({n, m}, swap12, Perm::identity(2));
    CHECK(tensor(d2, d1) == relabel(tensor(d1, d2), alpha));
  }
  // and with a chain on one side
  Decomposition c1 = Decomposition::of(chn(2, {}, {1, 2}));
  Decomposition c2 = Decomposition::of(cyc(2, {2}));
  Perm alpha = relabel_perm({2, 2}, swap12, Perm::identity(2));
  CHECK(tensor(c2, c1) == relabel(tensor(c1, c2), alpha));
}

TEST_CASE("chain times cycle") {
  CHECK(tensor(chn(2, {}, {1}), cyc(2, {2})) ==
        Decomposition::of(chn(4, {}, {2})));
  // two rotations of a periodic cycle word collapse to one class
  Decomposition d = tensor(chn(2, {}, {1}), cyc(2, {2, 2}));
  Decomposition expect(4);
  expect.add(chn(4, {}, {2}), Mult::finite(2));
  CHECK(d == expect);
  // every component of a chain product is a chain
  std::mt19937 rng(53);
  for (int t = 0; t < 30; ++t) {
    Word l = random_word(rng, 2, 5);
    Decomposition p = tensor(chn(2, {}, {1, 2}), RepClass::cycle(2, l));
    std::uint64_t count = 0;
    for (const auto& [r, m] : p.components()) {
      CHECK(!r.is_cycle());
      count += m.count();
    }
    CHECK(count == l.size());
  }
}

TEST_CASE("cycle times chain via the mirror relabeling") {
  CHECK(tensor(cyc(2, {1}), chn(2, {}, {2})) ==
        Decomposition::of(chn(4, {}, {2})));
  // direct letterwise check: (1)^inf packed with tail of (1 2)^inf
  Decomposition d = tensor(cyc(2, {1}), chn(2, {}, {1, 2}));
  LassoWord direct = pack_lcm(LassoWord(2, {}, {1}), LassoWord(2, {}, {1, 2}));
  CHECK(d == Decomposition::of(RepClass::chain(4, direct)));
}

TEST_CASE("chain times chain: one window of tail classes, all infinite") {
  Decomposition d = tensor(chn(2, {}, {1}), chn(2, {}, {2}));
  Decomposition expect(4);
  expect.add(chn(4, {}, {2}), Mult::infinite());
  CHECK(d == expect);

  // widening the enumeration window produces no new classes
  LassoWord k(2, {}, {1, 2});
  LassoWord l(2, {}, {1, 1, 2});
  Decomposition narrow = tensor(chn(2, {}, {1, 2}), chn(2, {}, {1, 1, 2}));
  Decomposition wide(4);
  for (int i = -9; i <= 9; ++i)
    wide.add(RepClass::chain(4, pack_lcm(k, shift(l, i))), Mult::infinite());
  CHECK(narrow == wide);
}

TEST_CASE("tensor_power") {
  Decomposition d = Decomposition::of(cyc(2, {1, 2}));
  CHECK(tensor_power(d, 1) == d);
  Decomposition cube = tensor_power(d, 3);
  CHECK(cube == sum_of({cyc(8, {1, 8}), cyc(8, {2, 7}), cyc(8, {3, 6}),
                        cyc(8, {4, 5})}));
  CHECK_THROWS_AS(tensor_power(d, 0), std::invalid_argument);
}

TEST_CASE("equivalent") {
  CHECK_FALSE(equivalent(cyc(4, {2}), cyc(4, {3})));
  CHECK(equivalent(cyc(4, {2, 4}), cyc(4, {4, 2})));
  CHECK_FALSE(equivalent(cyc(4, {2, 4}), cyc(4, {3, 4})));
  CHECK_FALSE(equivalent(cyc(4, {1}), chn(4, {}, {1})));
  CHECK(equivalent(chn(2, {1}, {2, 1}), chn(2, {}, {1, 2})));
  CHECK_THROWS_AS(equivalent(cyc(2, {1}), cyc(4, {1})), std::invalid_argument);
}

TEST_CASE("irreducible") {
  CHECK(irreducible(cyc(4, {2, 4})));
  CHECK(irreducible(cyc(4, {1})));
  CHECK_FALSE(irreducible(cyc(2, {1, 1})));
  CHECK(irreducible(chn(2, {}, {1})));
}

TEST_CASE("relabel") {
  const Perm swap23 = Perm::transposition(4, 2, 3);
  CHECK(relabel(Decomposition::of(cyc(4, {2})), swap23) ==
        Decomposition::of(cyc(4, {3})));
  Decomposition d = sum_of({cyc(4, {2, 4}), cyc(4, {3, 4})});
  CHECK(relabel(d, Perm::identity(4)) == d);
  CHECK(relabel(relabel(d, swap23), swap23) == d);
  CHECK(relabel(d, swap23) == sum_of({cyc(4, {2, 4}), cyc(4, {3, 4})}));
}
