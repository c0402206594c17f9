// Acceptance suite: the headline identities and cross-checks, one
// pass/fail line per criterion. Everything is exact combinatorics; the
// stated per-criterion time limits are asserted as well.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cuntz/expr.hpp"
#include "cuntz/oracle.hpp"
#include "cuntz/rep.hpp"

using namespace cuntz;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define REQUIRE_TRUE(cond)                                       \
  do {                                                           \
    if (!(cond)) throw Failure("requirement failed: " #cond);    \
  } while (0)

RepClass cyc(int n, Letters ls) { return RepClass::cycle(n, Word(n, ls)); }
RepClass chn(int n, Letters c) {
  return RepClass::chain(n, LassoWord(n, {}, std::move(c)));
}

Decomposition one(const RepClass& r) { return Decomposition::of(r); }

Word random_word(std::mt19937& rng, int alphabet, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> letter(1, alphabet);
  Letters ls(len(rng));
  for (int& a : ls) a = letter(rng);
  return Word(alphabet, std::move(ls));
}

// Mod-prefix budget keeping a two-factor oracle product at desk scale.
int pair_mod_budget(const RepClass& r1, const RepClass& r2, int depth) {
  std::vector<const RepClass*> lits = {&r1, &r2};
  int best = 1;
  for (int m = 1; m <= depth; ++m) {
    double total = 1;
    for (const RepClass* r : lits)
      total *= detail::model_size_estimate(*r, depth, m);
    if (total > 60000) break;
    best = m;
  }
  return best;
}

// ---- criterion bodies -----------------------------------------------------

void one_letter_table() {
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      REQUIRE_TRUE(tensor(cyc(2, {i}), cyc(2, {j})) ==
                   one(cyc(4, {2 * (i - 1) + j})));
}

void two_letter_formula() {
  const int m = 2;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int ip = 1; ip <= 2; ++ip)
        for (int jp = 1; jp <= 2; ++jp) {
          Decomposition expect(4);
          expect.add(cyc(4, {m * (i - 1) + ip, m * (j - 1) + jp}),
                     Mult::one());
          expect.add(cyc(4, {m * (i - 1) + jp, m * (j - 1) + ip}),
                     Mult::one());
          REQUIRE_TRUE(tensor(cyc(2, {i, j}), cyc(2, {ip, jp})) == expect);
        }
}

void tensor_powers() {
  const Decomposition base = one(cyc(2, {1, 2}));
  for (int n = 1; n <= 6; ++n) {
    const int big = 1 << n;
    Decomposition expect(big);
    for (int i = 1; i <= big / 2; ++i)
      expect.add(cyc(big, {i, big - i + 1}), Mult::one());
    const Decomposition got = tensor_power(base, n);
    REQUIRE_TRUE(got == expect);
    for (const auto& [r, mult] : got.components())
      REQUIRE_TRUE(mult == Mult::one());  // multiplicity-free
  }
  Decomposition cube = tensor_power(base, 3);
  Decomposition printed(8);
  for (Letters w : {Letters{1, 8}, Letters{3, 6}, Letters{2, 7}, Letters{4, 5}})
    printed.add(cyc(8, w), Mult::one());
  REQUIRE_TRUE(cube == printed);
}

MonomialSum table(int alphabet,
                  std::initializer_list<std::pair<Letters, Letters>> terms) {
  MonomialSum out;
  for (const auto& [l, r] : terms)
    out.push_back({Word(alphabet, l), Word(alphabet, r)});
  std::sort(out.begin(), out.end());
  return out;
}

void endo_tensor_monomials() {
  const PermEndo rho = tensor(builtin::psi12(), builtin::psi13());
  const PermEndo rhobar = tensor(builtin::psi13(), builtin::psi12());
  REQUIRE_TRUE(builtin::rho() == rho);
  REQUIRE_TRUE(builtin::rhobar() == rhobar);

  const std::vector<MonomialSum> rho_rows = {
      table(4, {{{2, 3}, {1}}, {{1, 4}, {2}}, {{2, 1}, {3}}, {{1, 2}, {4}}}),
      table(4, {{{1, 3}, {1}}, {{2, 4}, {2}}, {{1, 1}, {3}}, {{2, 2}, {4}}}),
      table(4, {{{4, 1}, {1}}, {{3, 2}, {2}}, {{4, 3}, {3}}, {{3, 4}, {4}}}),
      table(4, {{{3, 1}, {1}}, {{4, 2}, {2}}, {{3, 3}, {3}}, {{4, 4}, {4}}})};
  const std::vector<MonomialSum> rhobar_rows = {
      table(4, {{{3, 2}, {1}}, {{3, 1}, {2}}, {{1, 4}, {3}}, {{1, 3}, {4}}}),
      table(4, {{{4, 1}, {1}}, {{4, 2}, {2}}, {{2, 3}, {3}}, {{2, 4}, {4}}}),
      table(4, {{{1, 2}, {1}}, {{1, 1}, {2}}, {{3, 4}, {3}}, {{3, 3}, {4}}}),
      table(4, {{{2, 1}, {1}}, {{2, 2}, {2}}, {{4, 3}, {3}}, {{4, 4}, {4}}})};
  for (int i = 1; i <= 4; ++i) {
    REQUIRE_TRUE(monomials(rho, i) == rho_rows[i - 1]);
    REQUIRE_TRUE(monomials(rhobar, i) == rhobar_rows[i - 1]);
  }
}

void branching_laws() {
  BranchResult a = branch(cyc(2, {1}), builtin::psi12(), 8);
  REQUIRE_TRUE(a.complete);
  REQUIRE_TRUE(a.decomposition == one(cyc(2, {1, 2})));
  BranchResult b = branch(cyc(2, {1}), builtin::psi13(), 8);
  REQUIRE_TRUE(b.complete);
  REQUIRE_TRUE(b.decomposition == one(cyc(2, {2})));
  BranchResult c = branch(cyc(4, {1}), builtin::rho(), 8);
  REQUIRE_TRUE(c.complete);
  REQUIRE_TRUE(c.decomposition == one(cyc(4, {2, 4})));
  BranchResult d = branch(cyc(4, {1}), builtin::rhobar(), 8);
  REQUIRE_TRUE(d.complete);
  REQUIRE_TRUE(d.decomposition == one(cyc(4, {3, 4})));
}

void branching_inequivalence() {
  REQUIRE_TRUE(!equivalent(cyc(4, {2, 4}), cyc(4, {3, 4})));
  const Decomposition lhs = branch(cyc(4, {1}), builtin::rho(), 8).decomposition;
  const Decomposition rhs =
      branch(cyc(4, {1}), builtin::rhobar(), 8).decomposition;
  REQUIRE_TRUE(!(lhs == rhs));
}

void oracle_vs_formula_random() {
  std::mt19937 rng(20260808);
  std::uniform_int_distribution<int> alpha(2, 4);
  for (int t = 0; t < 200; ++t) {
    const int n = alpha(rng), m = alpha(rng);
    const Word k = random_word(rng, n, 6);
    const Word l = random_word(rng, m, 6);
    const RepClass r1 = RepClass::cycle(n, k), r2 = RepClass::cycle(m, l);
    const int depth = static_cast<int>(k.size() + l.size()) + 2;
    const int mods = pair_mod_budget(r1, r2, depth);
    DecomposeResult res = decompose_bfs(product_bfs(
        canonical_bfs(r1, depth, mods), canonical_bfs(r2, depth, mods)));
    REQUIRE_TRUE(res.complete);
    REQUIRE_TRUE(res.decomposition == tensor(r1, r2));
    std::uint64_t count = 0;
    for (const auto& [r, mult] : res.decomposition.components()) {
      REQUIRE_TRUE(r.cycle_word().size() == std::lcm(k.size(), l.size()));
      count += mult.count();
    }
    REQUIRE_TRUE(count == std::gcd(k.size(), l.size()));
  }
}

void algebraic_laws() {
  // associativity, exhaustively, over the two-letter alphabet
  std::vector<Word> words;
  for (int len = 1; len <= 3; ++len)
    for (int code = 0; code < (1 << len); ++code) {
      Letters ls(len);
      for (int t = 0; t < len; ++t) ls[t] = ((code >> t) & 1) + 1;
      words.push_back(Word(2, ls));
    }
  for (const Word& a : words)
    for (const Word& b : words)
      for (const Word& c : words) {
        Decomposition d1 = one(RepClass::cycle(2, a));
        Decomposition d2 = one(RepClass::cycle(2, b));
        Decomposition d3 = one(RepClass::cycle(2, c));
        REQUIRE_TRUE(tensor(tensor(d1, d2), d3) ==
                     tensor(d1, tensor(d2, d3)));
      }

  std::mt19937 rng(97);
  // distributivity over random direct sums
  for (int t = 0; t < 40; ++t) {
    Decomposition d1 = one(RepClass::cycle(2, random_word(rng, 2, 4)));
    Decomposition d2 = one(RepClass::cycle(3, random_word(rng, 3, 4)));
    Decomposition d3 = one(RepClass::cycle(3, random_word(rng, 3, 4)));
    REQUIRE_TRUE(tensor(d1, direct_sum(d2, d3)) ==
                 direct_sum(tensor(d1, d2), tensor(d1, d3)));
  }
  // rotation invariance of the raw component family
  auto family = [](const Word& k, const Word& l) {
    const int nm = k.alphabet() * l.alphabet();
    Decomposition out(nm);
    const std::size_t g = std::gcd(k.size(), l.size());
    for (std::size_t i = 1; i <= g; ++i)
      out.add(RepClass::cycle(nm, pack_lcm(k, rotate(l, i))), Mult::one());
    return out;
  };
  for (int t = 0; t < 40; ++t) {
    Word k = random_word(rng, 2, 4);
    Word l = random_word(rng, 3, 4);
    Decomposition base = family(k, l);
    for (std::size_t i = 1; i <= k.size(); ++i)
      for (std::size_t j = 1; j <= l.size(); ++j)
        REQUIRE_TRUE(family(rotate(k, i), rotate(l, j)) == base);
  }
  // transposition acts by the computed letter relabeling
  const Perm swap12 = Perm::transposition(2, 1, 2);
  for (int t = 0; t < 40; ++t) {
    const int n = 2, m = 3;
    Decomposition d1 = one(RepClass::cycle(n, random_word(rng, n, 4)));
    Decomposition d2 = one(RepClass::cycle(m, random_word(rng, m, 4)));
    const Perm alpha = relabel_perm({n, m}, swap12, Perm::identity(2));
    REQUIRE_TRUE(tensor(d2, d1) == relabel(tensor(d1, d2), alpha));
  }
}

void branch_tensor_compatibility() {
  const std::vector<RepClass> reps = {cyc(2, {1}),    cyc(2, {2}),
                                      cyc(2, {1, 1}), cyc(2, {1, 2}),
                                      cyc(2, {2, 2})};
  const std::vector<const PermEndo*> endos = {
      &builtin::psi12(), &builtin::psi13(), nullptr /* identity */};
  const PermEndo id2 = PermEndo::identity(2);
  auto endo_at = [&](std::size_t i) -> const PermEndo& {
    return endos[i] ? *endos[i] : id2;
  };
  std::map<std::pair<std::string, std::pair<std::size_t, std::size_t>>,
           Decomposition>
      cache;
  for (const RepClass& r1 : reps)
    for (const RepClass& r2 : reps)
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          const PermEndo packed = tensor(endo_at(i), endo_at(j));
          const Decomposition lhs_base = tensor(one(r1), one(r2));
          Decomposition lhs(4);
          bool complete = true;
          for (const auto& [cls, mult] : lhs_base.components()) {
            auto key = std::make_pair(print(cls), std::make_pair(i, j));
            auto it = cache.find(key);
            if (it == cache.end()) {
              BranchResult br = branch(cls, packed, 6);
              complete = complete && br.complete;
              it = cache.emplace(key, br.decomposition).first;
            }
            for (const auto& [c2, m2] : it->second.components())
              lhs.add(c2, m2 * mult);
          }
          REQUIRE_TRUE(complete);
          BranchResult b1 = branch(r1, endo_at(i), 6);
          BranchResult b2 = branch(r2, endo_at(j), 6);
          REQUIRE_TRUE(b1.complete);
          REQUIRE_TRUE(b2.complete);
          REQUIRE_TRUE(lhs == tensor(b1.decomposition, b2.decomposition));
        }
}

void chain_cases() {
  const std::vector<std::pair<int, Letters>> tails = {
      {2, {1}}, {2, {2}}, {2, {1, 2}}, {2, {1, 1, 2}}, {3, {1, 2, 3}}};
  const std::vector<std::pair<int, Letters>> cycles = {
      {2, {1}}, {2, {2}}, {2, {1, 2}}, {2, {2, 2}}, {2, {1, 1, 2}},
      {3, {1, 3}}};
  const int depth = 12;
  for (const auto& [cn, tail] : tails)
    for (const auto& [yn, word] : cycles) {
      const RepClass c = chn(cn, tail);
      const RepClass y = RepClass::cycle(yn, Word(yn, word));
      // chain (x) cycle
      DecomposeResult res = decompose_bfs(product_bfs(
          canonical_bfs(c, depth, 2), canonical_bfs(y, depth, 2)));
      REQUIRE_TRUE(res.complete);
      REQUIRE_TRUE(res.decomposition == tensor(c, y));
      // cycle (x) chain, via the mirror relabeling in the closed form
      DecomposeResult mirror = decompose_bfs(product_bfs(
          canonical_bfs(y, depth, 2), canonical_bfs(c, depth, 2)));
      REQUIRE_TRUE(mirror.complete);
      REQUIRE_TRUE(mirror.decomposition == tensor(y, c));
    }
  // chain (x) chain: class sets match and every class is certified omega
  for (const auto& [cn, t1] : tails)
    for (const auto& [cn2, t2] : tails) {
      if (cn != cn2) continue;
      const RepClass c1 = chn(cn, t1), c2 = chn(cn, t2);
      DecomposeResult res = decompose_bfs(product_bfs(
          canonical_bfs(c1, depth, 2), canonical_bfs(c2, depth, 2)));
      REQUIRE_TRUE(res.complete);
      REQUIRE_TRUE(res.decomposition == tensor(c1, c2));
      for (const auto& [cls, mult] : res.decomposition.components())
        REQUIRE_TRUE(mult.is_infinite());
    }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_ms;
    std::function<void()> body;
  };
  const std::vector<Criterion> criteria = {
      {"1. one-letter product table", 1.0, one_letter_table},
      {"2. two-letter product formula", 10.0, two_letter_formula},
      {"3. tensor powers of the two-letter class, n=1..6", 1000.0,
       tensor_powers},
      {"4. endomorphism tensor monomial tables", 10.0, endo_tensor_monomials},
      {"5. branching laws of the built-ins", 100.0, branching_laws},
      {"6. branching distinguishes the two O_4 endomorphisms", 100.0,
       branching_inequivalence},
      {"7. oracle vs closed form, 200 random cycle pairs", 30000.0,
       oracle_vs_formula_random},
      {"8. algebraic laws (associativity, distributivity, rotation, "
       "transposition)",
       30000.0, algebraic_laws},
      {"9. branching compatible with tensor products", 5000.0,
       branch_tensor_compatibility},
      {"10. chain cases against the oracle at depth 12", 10000.0,
       chain_cases},
  };

  // warm-up so the first timed criterion is not paying allocator setup
  (void)tensor(cyc(2, {1}), cyc(2, {1}));

  int failures = 0;
  double total_ms = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count();
    total_ms += ms;
    bool pass = error.empty();
    if (pass && ms > c.limit_ms) {
      pass = false;
      error = "exceeded time limit of " + std::to_string(c.limit_ms) + " ms";
    }
    std::printf("[%s] %-70s (%.2f ms)\n", pass ? "PASS" : "FAIL", c.name, ms);
    if (!pass) {
      std::printf("       %s\n", error.c_str());
      ++failures;
    }
  }
  std::printf("%d/%zu criteria passed, total %.1f ms\n",
              static_cast<int>(criteria.size()) - failures, criteria.size(),
              total_ms);
  if (total_ms > 60000.0) {
    std::printf("[FAIL] total runtime exceeded one minute\n");
    ++failures;
  }
  return failures;
}
