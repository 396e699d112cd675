#include "minrev/logic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace minrev {

std::string Assignment::to_string() const {
  std::string s;
  for (int i = vars - 1; i >= 0; --i) s.push_back(value(i + 1) ? '1' : '0');
  return s;
}

Formula::Ptr Formula::constant(bool value) {
  static const Ptr t(new Formula(Kind::True, 0, nullptr, nullptr));
  static const Ptr f(new Formula(Kind::False, 0, nullptr, nullptr));
  return value ? t : f;
}

Formula::Ptr Formula::variable(int index) {
  if (index < 1 || index > kMaxVariables)
    throw Error("variable index out of range: " + std::to_string(index));
  return Ptr(new Formula(Kind::Var, index, nullptr, nullptr));
}

Formula::Ptr Formula::negation(Ptr f) {
  return Ptr(new Formula(Kind::Not, 0, std::move(f), nullptr));
}
Formula::Ptr Formula::conjunction(Ptr lhs, Ptr rhs) {
  return Ptr(new Formula(Kind::And, 0, std::move(lhs), std::move(rhs)));
}
Formula::Ptr Formula::disjunction(Ptr lhs, Ptr rhs) {
  return Ptr(new Formula(Kind::Or, 0, std::move(lhs), std::move(rhs)));
}
Formula::Ptr Formula::implication(Ptr lhs, Ptr rhs) {
  return Ptr(new Formula(Kind::Implies, 0, std::move(lhs), std::move(rhs)));
}
Formula::Ptr Formula::biconditional(Ptr lhs, Ptr rhs) {
  return Ptr(new Formula(Kind::Iff, 0, std::move(lhs), std::move(rhs)));
}

int Formula::max_var() const {
  switch (kind_) {
    case Kind::True:
    case Kind::False:
      return 0;
    case Kind::Var:
      return var_;
    case Kind::Not:
      return lhs_->max_var();
    default:
      return std::max(lhs_->max_var(), rhs_->max_var());
  }
}

bool Formula::evaluate(std::uint32_t a) const {
  switch (kind_) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Var:
      return (a >> (var_ - 1)) & 1u;
    case Kind::Not:
      return !lhs_->evaluate(a);
    case Kind::And:
      return lhs_->evaluate(a) && rhs_->evaluate(a);
    case Kind::Or:
      return lhs_->evaluate(a) || rhs_->evaluate(a);
    case Kind::Implies:
      return !lhs_->evaluate(a) || rhs_->evaluate(a);
    case Kind::Iff:
      return lhs_->evaluate(a) == rhs_->evaluate(a);
  }
  return false;  // unreachable
}

bool Formula::equal(const Ptr& a, const Ptr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind_ != b->kind_ || a->var_ != b->var_) return false;
  switch (a->kind_) {
    case Kind::True:
    case Kind::False:
    case Kind::Var:
      return true;
    case Kind::Not:
      return equal(a->lhs_, b->lhs_);
    default:
      return equal(a->lhs_, b->lhs_) && equal(a->rhs_, b->rhs_);
  }
}

namespace {

// Binding strength, higher is tighter. Used to decide parenthesization when
// printing: a child is wrapped when its level is below what its position
// requires.
int level(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff:
      return 1;
    case Formula::Kind::Implies:
      return 2;
    case Formula::Kind::Or:
      return 3;
    case Formula::Kind::And:
      return 4;
    default:
      return 5;  // atoms and negation never need wrapping
  }
}

void print(const Formula& f, char prefix, std::string& out) {
  const auto wrap = [&](const Formula& child, int min_level) {
    bool need = level(child.kind()) < min_level;
    if (need) out.push_back('(');
    print(child, prefix, out);
    if (need) out.push_back(')');
  };
  switch (f.kind()) {
    case Formula::Kind::True:
      out += "true";
      break;
    case Formula::Kind::False:
      out += "false";
      break;
    case Formula::Kind::Var:
      out.push_back(prefix);
      out += std::to_string(f.var_index());
      break;
    case Formula::Kind::Not:
      out.push_back('!');
      wrap(*f.lhs(), 5);
      break;
    case Formula::Kind::And:
      wrap(*f.lhs(), 4);
      out += " & ";
      wrap(*f.rhs(), 5);  // right child parenthesized on equal level: left-assoc
      break;
    case Formula::Kind::Or:
      wrap(*f.lhs(), 3);
      out += " | ";
      wrap(*f.rhs(), 4);
      break;
    case Formula::Kind::Implies:
      wrap(*f.lhs(), 3);  // left child parenthesized on equal level: right-assoc
      out += " -> ";
      wrap(*f.rhs(), 2);
      break;
    case Formula::Kind::Iff:
      wrap(*f.lhs(), 1);
      out += " <-> ";
      wrap(*f.rhs(), 2);
      break;
  }
}

}  // namespace

std::string Formula::to_string(char var_prefix) const {
  std::string out;
  print(*this, var_prefix, out);
  return out;
}

ModelSet::ModelSet(int n) : n_(n), members_(1 << n) {
  if (n < 0 || n > kMaxVariables)
    throw Error("variable count out of range: " + std::to_string(n));
}

ModelSet ModelSet::all(int n) {
  ModelSet s(n);
  s.members_ = DynBitset(1 << n, true);
  return s;
}

ModelSet ModelSet::of(int n, std::initializer_list<std::uint32_t> members) {
  ModelSet s(n);
  for (auto a : members) {
    if (a >= std::uint32_t(1) << n)
      throw Error("assignment out of range: " + std::to_string(a));
    s.insert(a);
  }
  return s;
}

ModelSet ModelSet::from_mask(int n, std::uint64_t mask) {
  if (n > 6) throw Error("from_mask requires n <= 6");
  ModelSet s(n);
  s.members_ = DynBitset::from_mask(1 << n, mask);
  return s;
}

ModelSet& ModelSet::operator&=(const ModelSet& o) {
  if (n_ != o.n_) throw Error("model sets over different variable counts");
  members_ &= o.members_;
  return *this;
}

ModelSet& ModelSet::operator|=(const ModelSet& o) {
  if (n_ != o.n_) throw Error("model sets over different variable counts");
  members_ |= o.members_;
  return *this;
}

ModelSet ModelSet::complement() const {
  ModelSet s(*this);
  s.members_ = members_.complement();
  return s;
}

bool ModelSet::subset_of(const ModelSet& o) const {
  if (n_ != o.n_) throw Error("model sets over different variable counts");
  return members_.is_subset_of(o.members_);
}

std::vector<std::uint32_t> ModelSet::members() const {
  std::vector<std::uint32_t> out;
  out.reserve(members_.count());
  for (int i : members_.elements()) out.push_back(std::uint32_t(i));
  return out;
}

std::uint64_t ModelSet::mask() const {
  if (n_ > 6) throw Error("mask requires n <= 6");
  return members_.to_mask();
}

std::string ModelSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (auto a : members()) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(a);
  }
  out += "}";
  return out;
}

namespace {

// Recursive-descent parser for the formula DSL. Grammar, loosest first:
//   iff     := implies ("<->" implies)*          left-assoc
//   implies := or ("->" implies)?                right-assoc
//   or      := and ("|" and)*                    left-assoc
//   and     := unary ("&" unary)*                left-assoc
//   unary   := "!" unary | atom
//   atom    := "true" | "false" | VAR | "(" iff ")"
class FormulaParser {
 public:
  FormulaParser(std::string_view text, int n, char prefix)
      : text_(text), n_(n), prefix_(prefix) {}

  Formula::Ptr run() {
    auto f = parse_iff();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    // "|" must not swallow the first dash of "->": no such overlap exists in
    // this grammar, but a word token must not match a prefix of an identifier.
    if (std::isalpha(static_cast<unsigned char>(tok.back()))) {
      std::size_t after = pos_ + tok.size();
      if (after < text_.size() &&
          (std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_'))
        return false;
    }
    pos_ += tok.size();
    return true;
  }

  Formula::Ptr parse_iff() {
    auto f = parse_implies();
    while (eat("<->")) f = Formula::biconditional(f, parse_implies());
    return f;
  }

  Formula::Ptr parse_implies() {
    auto f = parse_or();
    skip_ws();
    // "->" only; "<->" was already split off by the caller's loop, so a
    // leading '<' never reaches this check.
    if (text_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return Formula::implication(f, parse_implies());
    }
    return f;
  }

  Formula::Ptr parse_or() {
    auto f = parse_and();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        f = Formula::disjunction(f, parse_and());
      } else {
        return f;
      }
    }
  }

  Formula::Ptr parse_and() {
    auto f = parse_unary();
    while (eat("&")) f = Formula::conjunction(f, parse_unary());
    return f;
  }

  Formula::Ptr parse_unary() {
    if (eat("!")) return Formula::negation(parse_unary());
    return parse_atom();
  }

  Formula::Ptr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (eat("(")) {
      auto f = parse_iff();
      if (!eat(")")) fail("expected ')'");
      return f;
    }
    if (eat("true")) return Formula::constant(true);
    if (eat("false")) return Formula::constant(false);
    if (text_[pos_] == prefix_) {
      std::size_t start = pos_++;
      std::size_t digits = 0;
      int idx = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        idx = idx * 10 + (text_[pos_] - '0');
        ++pos_;
        if (++digits > 2) break;
      }
      if (digits == 0) {
        pos_ = start;
        fail(std::string("expected variable '") + prefix_ + "<index>'");
      }
      if (idx < 1 || idx > n_) {
        pos_ = start;
        fail("variable index " + std::to_string(idx) + " exceeds variable count " +
             std::to_string(n_));
      }
      return Formula::variable(idx);
    }
    fail("expected formula atom");
  }

  std::string_view text_;
  int n_;
  char prefix_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula::Ptr parse_formula(std::string_view text, int n, char var_prefix) {
  if (n < 0 || n > kMaxVariables)
    throw ParseError("variable count out of range: " + std::to_string(n), 0);
  return FormulaParser(text, n, var_prefix).run();
}

ModelSet models(const Formula& phi, int n) {
  if (phi.max_var() > n)
    throw Error("formula mentions variable beyond count " + std::to_string(n));
  ModelSet out(n);
  for (std::uint32_t a = 0; a < std::uint32_t(1) << n; ++a)
    if (phi.evaluate(a)) out.insert(a);
  return out;
}

Formula::Ptr formula_of(const ModelSet& a) {
  if (a.empty()) return Formula::constant(false);
  const int n = a.var_count();
  Formula::Ptr dnf;
  for (auto m : a.members()) {
    Formula::Ptr term;
    for (int i = 1; i <= n; ++i) {
      Formula::Ptr lit = Formula::variable(i);
      if (!((m >> (i - 1)) & 1u)) lit = Formula::negation(lit);
      term = term ? Formula::conjunction(term, lit) : lit;
    }
    if (n == 0) term = Formula::constant(true);  // single empty assignment
    dnf = dnf ? Formula::disjunction(dnf, term) : term;
  }
  return dnf;
}

}  // namespace minrev
