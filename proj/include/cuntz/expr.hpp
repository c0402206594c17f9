// Expression layer: text syntax for representation classes and operators
// on them, plus the two evaluation routes (closed-form decomposition and
// the truncated-model oracle).
//
// Grammar, loosest to tightest:
//   sum     := tensor  { "(+)" tensor }
//   tensor  := compose { "(x)" compose }
//   compose := power   { "o" endoref }
//   power   := atom    { "^" INT }
//   atom    := "P" "(" INT ";" INT* [ "|" INT+ ] ")"  |  "(" sum ")"
//   endoref := NAME | "endo:" PATH
//
// "P(N; l1 l2 ...)" is a cycle literal, "P(N; p1 .. | c1 ..)" a chain
// (prefix | repeating cycle). Letters are whitespace-separated integers.
#pragma once

#include <cctype>
#include <functional>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "endo.hpp"
#include "oracle.hpp"
#include "rep.hpp"
#include "word.hpp"

namespace cuntz {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " +
                           std::to_string(position) + ")"),
        pos(position) {}
  std::size_t pos;
};

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DepthError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Tag { rep, tensor, direct_sum, power, compose };

  Tag tag;
  std::size_t pos = 0;           // source position, for diagnostics
  RepClass rep;                  // tag == rep
  ExprPtr lhs, rhs;              // binary nodes
  int exponent = 0;              // tag == power
  std::string endo_name;         // tag == compose

  explicit Expr(RepClass r, std::size_t p)
      : tag(Tag::rep), pos(p), rep(std::move(r)) {}
  Expr(Tag t, ExprPtr a, ExprPtr b, std::size_t p)
      : tag(t), pos(p), rep(RepClass::cycle(2, Word(2, {1}))),
        lhs(std::move(a)), rhs(std::move(b)) {}

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.tag != b.tag) return false;
    switch (a.tag) {
      case Tag::rep:
        return a.rep == b.rep;
      case Tag::power:
        return a.exponent == b.exponent && *a.lhs == *b.lhs;
      case Tag::compose:
        return a.endo_name == b.endo_name && *a.lhs == *b.lhs;
      default:
        return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
    }
  }
};

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr run() {
    ExprPtr e = sum();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  ExprPtr sum() {
    ExprPtr e = tensor();
    while (accept_op("(+)")) {
      std::size_t at = pos_;
      ExprPtr r = tensor();
      auto node = std::make_shared<Expr>(Expr::Tag::direct_sum, e, r, at);
      e = node;
    }
    return e;
  }

  ExprPtr tensor() {
    ExprPtr e = compose();
    while (accept_op("(x)")) {
      std::size_t at = pos_;
      ExprPtr r = compose();
      e = std::make_shared<Expr>(Expr::Tag::tensor, e, r, at);
    }
    return e;
  }

  ExprPtr compose() {
    ExprPtr e = powered();
    for (;;) {
      skip_ws();
      if (!at_word("o")) break;
      pos_ += 1;
      std::size_t at = pos_;
      std::string name = endo_ref();
      auto node = std::make_shared<Expr>(Expr::Tag::compose, e, nullptr, at);
      node->endo_name = std::move(name);
      e = node;
    }
    return e;
  }

  ExprPtr powered() {
    ExprPtr e = atom();
    for (;;) {
      skip_ws();
      if (pos_ >= src_.size() || src_[pos_] != '^') break;
      ++pos_;
      std::size_t at = pos_;
      const int n = integer();
      if (n < 1) throw ParseError("power exponent must be >= 1", at);
      auto node = std::make_shared<Expr>(Expr::Tag::power, e, nullptr, at);
      node->exponent = n;
      e = node;
    }
    return e;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    if (src_[pos_] == '(') {
      ++pos_;
      ExprPtr e = sum();
      expect(')');
      return e;
    }
    if (src_[pos_] == 'P') return rep_literal();
    throw ParseError("expected a class literal or '('", pos_);
  }

  // P(N; l1 l2 ...)  or  P(N; p1 ... | c1 ...)
  ExprPtr rep_literal() {
    const std::size_t at = pos_;
    ++pos_;  // 'P'
    expect('(');
    const int n = integer();
    if (n < 2) throw ParseError("alphabet must be >= 2", at);
    expect(';');
    Letters first = letter_list();
    skip_ws();
    RepClass r = RepClass::cycle(2, Word(2, {1}));
    if (pos_ < src_.size() && src_[pos_] == '|') {
      ++pos_;
      Letters cyc = letter_list();
      if (cyc.empty())
        throw ParseError("chain literal needs a nonempty cycle", pos_);
      try {
        r = RepClass::chain(n, LassoWord(n, first, cyc));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), at);
      }
    } else {
      if (first.empty())
        throw ParseError("cycle literal needs at least one letter", pos_);
      try {
        r = RepClass::cycle(n, Word(n, first));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), at);
      }
    }
    expect(')');
    return std::make_shared<Expr>(r, at);
  }

  std::string endo_ref() {
    skip_ws();
    const std::size_t at = pos_;
    if (at_word("endo:")) {
      pos_ += 5;
      std::string path;
      while (pos_ < src_.size() && !std::isspace(unsigned(src_[pos_])) &&
             src_[pos_] != ')')
        path += src_[pos_++];
      if (path.empty()) throw ParseError("empty path after endo:", at);
      return "endo:" + path;
    }
    std::string name;
    while (pos_ < src_.size() &&
           (std::isalnum(unsigned(src_[pos_])) || src_[pos_] == '_'))
      name += src_[pos_++];
    if (name.empty()) throw ParseError("expected an endomorphism name", at);
    return name;
  }

  Letters letter_list() {
    Letters out;
    for (;;) {
      skip_ws();
      if (pos_ >= src_.size() || !std::isdigit(unsigned(src_[pos_]))) break;
      out.push_back(integer());
    }
    return out;
  }

  int integer() {
    skip_ws();
    const std::size_t at = pos_;
    long long v = 0;
    if (pos_ >= src_.size() || !std::isdigit(unsigned(src_[pos_])))
      throw ParseError("expected an integer", at);
    while (pos_ < src_.size() && std::isdigit(unsigned(src_[pos_]))) {
      v = v * 10 + (src_[pos_] - '0');
      if (v > (1 << 30)) throw ParseError("integer too large", at);
      ++pos_;
    }
    return static_cast<int>(v);
  }

  bool accept_op(std::string_view op) {
    skip_ws();
    if (src_.substr(pos_, op.size()) != op) return false;
    pos_ += op.size();
    return true;
  }

  // True when the source continues with this word followed by a
  // non-identifier character (so "o" never eats the head of a name).
  bool at_word(std::string_view w) const {
    if (src_.substr(pos_, w.size()) != w) return false;
    if (w.back() == ':') return true;
    const std::size_t nxt = pos_ + w.size();
    return nxt >= src_.size() ||
           (!std::isalnum(unsigned(src_[nxt])) && src_[nxt] != '_');
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= src_.size() || src_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(unsigned(src_[pos_]))) ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse(std::string_view src) { return detail::Parser(src).run(); }

// ---------------------------------------------------------------------------
// printing

inline std::string print(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(w[i]);
  }
  return s;
}

inline std::string print(const RepClass& r) {
  std::string s = "P(" + std::to_string(r.alphabet()) + "; ";
  if (r.is_cycle()) {
    s += print(r.cycle_word());
  } else {
    s += "| " + print(Word(r.alphabet(), r.chain_tail().cycle()));
  }
  return s + ")";
}

inline std::string print(const Mult& m) {
  return m.is_infinite() ? "inf" : std::to_string(m.count());
}

inline std::string print(const Decomposition& d) {
  if (d.empty()) return "(empty)";
  std::string s;
  for (const auto& [r, m] : d.components()) {
    if (!s.empty()) s += " (+) ";
    if (!(m == Mult::one())) s += print(m) + "*";
    s += print(r);
  }
  return s;
}

namespace detail {

inline int precedence(Expr::Tag t) {
  switch (t) {
    case Expr::Tag::direct_sum: return 0;
    case Expr::Tag::tensor: return 1;
    case Expr::Tag::compose: return 2;
    case Expr::Tag::power: return 3;
    case Expr::Tag::rep: return 4;
  }
  return 4;
}

inline void print_expr(const Expr& e, int context, std::string& out) {
  const int mine = precedence(e.tag);
  const bool parens = mine < context;
  if (parens) out += '(';
  switch (e.tag) {
    case Expr::Tag::rep:
      out += print(e.rep);
      break;
    case Expr::Tag::tensor:
      print_expr(*e.lhs, mine, out);
      out += " (x) ";
      print_expr(*e.rhs, mine + 1, out);
      break;
    case Expr::Tag::direct_sum:
      print_expr(*e.lhs, mine, out);
      out += " (+) ";
      print_expr(*e.rhs, mine + 1, out);
      break;
    case Expr::Tag::compose:
      print_expr(*e.lhs, mine, out);
      out += " o ";
      out += e.endo_name;
      break;
    case Expr::Tag::power:
      print_expr(*e.lhs, mine + 1, out);
      out += '^';
      out += std::to_string(e.exponent);
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

inline std::string print(const Expr& e) {
  std::string out;
  detail::print_expr(e, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// evaluation

/// Maps an endomorphism reference ("psi12", "endo:file.json", ...) to the
/// endomorphism it names.
using EndoResolver = std::function<PermEndo(const std::string&)>;

inline EndoResolver builtin_only_resolver() {
  return [](const std::string& name) -> PermEndo {
    if (const PermEndo* e = find_builtin_endo(name)) return *e;
    throw EvalError("unknown endomorphism: " + name);
  };
}

struct EvalOptions {
  int depth = 8;  // truncation budget for compositions and oracle models
  EndoResolver resolve = builtin_only_resolver();
};

/// Length of the longest literal word in the expression; the default
/// truncation depth is derived from it.
inline std::size_t max_literal_length(const Expr& e) {
  switch (e.tag) {
    case Expr::Tag::rep: {
      const RepClass& r = e.rep;
      return r.is_cycle() ? r.cycle_word().size()
                          : r.chain_tail().prefix().size() +
                                r.chain_tail().cycle().size();
    }
    case Expr::Tag::power:
    case Expr::Tag::compose:
      return max_literal_length(*e.lhs);
    default:
      return std::max(max_literal_length(*e.lhs), max_literal_length(*e.rhs));
  }
}

inline int default_depth(const Expr& e) {
  return 2 * static_cast<int>(max_literal_length(e)) + 4;
}

/// Alphabet of the value an expression denotes; checks direct-sum and
/// composition consistency.
inline int check_alphabets(const Expr& e, const EndoResolver& resolve) {
  switch (e.tag) {
    case Expr::Tag::rep:
      return e.rep.alphabet();
    case Expr::Tag::tensor:
      return detail::checked_alphabet_product(
          check_alphabets(*e.lhs, resolve), check_alphabets(*e.rhs, resolve));
    case Expr::Tag::direct_sum: {
      const int a = check_alphabets(*e.lhs, resolve);
      const int b = check_alphabets(*e.rhs, resolve);
      if (a != b)
        throw EvalError("direct sum of different alphabets (" +
                        std::to_string(a) + " vs " + std::to_string(b) +
                        ") at position " + std::to_string(e.pos));
      return a;
    }
    case Expr::Tag::power: {
      int a = check_alphabets(*e.lhs, resolve);
      long long acc = 1;
      for (int t = 0; t < e.exponent; ++t) {
        acc *= a;
        if (acc > (1 << 30)) throw EvalError("power alphabet too large");
      }
      return static_cast<int>(acc);
    }
    case Expr::Tag::compose: {
      const int a = check_alphabets(*e.lhs, resolve);
      const PermEndo endo = resolve(e.endo_name);
      if (endo.alphabet() != a)
        throw EvalError("composition alphabet mismatch (" + std::to_string(a) +
                        " vs " + std::to_string(endo.alphabet()) +
                        ") at position " + std::to_string(e.pos));
      return a;
    }
  }
  throw EvalError("corrupt expression");
}

/// Closed-form route: tensor/sum/power by the decomposition formulae,
/// composition by truncated simulation (throws DepthError when the budget
/// cannot certify completeness).
inline Decomposition eval(const Expr& e, const EvalOptions& opt) {
  switch (e.tag) {
    case Expr::Tag::rep:
      return Decomposition::of(e.rep);
    case Expr::Tag::tensor:
      return tensor(eval(*e.lhs, opt), eval(*e.rhs, opt));
    case Expr::Tag::direct_sum:
      return direct_sum(eval(*e.lhs, opt), eval(*e.rhs, opt));
    case Expr::Tag::power:
      return tensor_power(eval(*e.lhs, opt), e.exponent);
    case Expr::Tag::compose: {
      const Decomposition base = eval(*e.lhs, opt);
      for (const auto& [r, m] : base.components())
        if (!r.is_cycle())
          throw EvalError("composition is only supported on cycle classes");
      BranchResult res = branch(base, opt.resolve(e.endo_name), opt.depth);
      if (!res.complete)
        throw DepthError("truncation depth " + std::to_string(opt.depth) +
                         " too small to certify the branching; raise --depth");
      return res.decomposition;
    }
  }
  throw EvalError("corrupt expression");
}

namespace detail {

inline void collect_literals(const Expr& e, int reps,
                             std::vector<const RepClass*>& out) {
  switch (e.tag) {
    case Expr::Tag::rep:
      for (int t = 0; t < reps; ++t) out.push_back(&e.rep);
      return;
    case Expr::Tag::power:
      collect_literals(*e.lhs, reps * e.exponent, out);
      return;
    case Expr::Tag::compose:
      collect_literals(*e.lhs, reps, out);
      return;
    default:
      collect_literals(*e.lhs, reps, out);
      collect_literals(*e.rhs, reps, out);
  }
}

inline double model_size_estimate(const RepClass& r, int depth, int mods) {
  const double n = r.alphabet();
  double words = 1;
  double pw = 1;
  for (int t = 1; t <= mods; ++t) {
    pw *= n;
    words += pw;
  }
  const double anchors =
      r.is_cycle() ? static_cast<double>(r.cycle_word().size()) : depth + 1;
  return words * anchors;
}

// Largest uniform modified-prefix budget that keeps the full product of
// all literal models within the label cap. Purely a function of the
// expression and depth, so oracle runs stay deterministic.
inline int oracle_mod_budget(const std::vector<const RepClass*>& literals,
                             int depth) {
  constexpr double cap = 300'000.0;
  int best = 1;
  for (int m = 1; m <= depth; ++m) {
    double total = 1;
    for (const RepClass* r : literals) {
      total *= model_size_estimate(*r, depth, m);
      if (total > cap) break;
    }
    if (total > cap) break;
    best = m;
  }
  return best;
}

}  // namespace detail

/// Oracle route: builds truncated models for the literals and evaluates
/// the expression with product/compose on the systems themselves. Direct
/// sums decompose summand by summand, so the result is a list of systems.
inline std::vector<TruncatedBfs> oracle_eval(const Expr& e,
                                             const EvalOptions& opt,
                                             int mod_budget) {
  switch (e.tag) {
    case Expr::Tag::rep:
      return {canonical_bfs(e.rep, opt.depth, mod_budget)};
    case Expr::Tag::direct_sum: {
      std::vector<TruncatedBfs> out = oracle_eval(*e.lhs, opt, mod_budget);
      std::vector<TruncatedBfs> rhs = oracle_eval(*e.rhs, opt, mod_budget);
      for (auto& b : rhs) out.push_back(std::move(b));
      return out;
    }
    case Expr::Tag::tensor: {
      std::vector<TruncatedBfs> out;
      for (const TruncatedBfs& a : oracle_eval(*e.lhs, opt, mod_budget))
        for (const TruncatedBfs& b : oracle_eval(*e.rhs, opt, mod_budget))
          out.push_back(product_bfs(a, b));
      return out;
    }
    case Expr::Tag::power: {
      std::vector<TruncatedBfs> acc = oracle_eval(*e.lhs, opt, mod_budget);
      for (int t = 1; t < e.exponent; ++t) {
        std::vector<TruncatedBfs> next;
        for (const TruncatedBfs& a : acc)
          for (const TruncatedBfs& b : oracle_eval(*e.lhs, opt, mod_budget))
            next.push_back(product_bfs(a, b));
        acc = std::move(next);
      }
      return acc;
    }
    case Expr::Tag::compose: {
      const PermEndo endo = opt.resolve(e.endo_name);
      std::vector<TruncatedBfs> out;
      for (const TruncatedBfs& a : oracle_eval(*e.lhs, opt, mod_budget))
        out.push_back(compose_bfs(a, endo));
      return out;
    }
  }
  throw EvalError("corrupt expression");
}

struct OracleCheck {
  Decomposition formula;
  Decomposition oracle;
  bool complete;
  bool match;
};

/// Evaluates both routes and compares them exactly.
inline OracleCheck oracle_check(const Expr& e, const EvalOptions& opt,
                                const TruncatedBfs** dot_system = nullptr,
                                std::vector<TruncatedBfs>* keep = nullptr) {
  check_alphabets(e, opt.resolve);
  Decomposition formula = eval(e, opt);

  std::vector<const RepClass*> literals;
  detail::collect_literals(e, 1, literals);
  const int mods = detail::oracle_mod_budget(literals, opt.depth);
  std::vector<TruncatedBfs> systems = oracle_eval(e, opt, mods);

  Decomposition combined(formula.alphabet());
  bool complete = true;
  for (const TruncatedBfs& b : systems) {
    DecomposeResult r = decompose_bfs(b);
    complete = complete && r.complete;
    for (const auto& [cls, m] : r.decomposition.components())
      combined.add(cls, m);
  }
  const bool match = complete && combined == formula;
  if (keep) {
    *keep = std::move(systems);
    if (dot_system && !keep->empty()) *dot_system = &keep->front();
  }
  return {std::move(formula), std::move(combined), complete, match};
}

}  // namespace cuntz
