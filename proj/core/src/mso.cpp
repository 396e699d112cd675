#include "minrev/mso.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "parallel.hpp"

namespace minrev {

FONode::Ptr FONode::constant(bool value) {
  return Ptr(new FONode(value ? Kind::True : Kind::False, -1, -1, -1, nullptr, nullptr));
}
FONode::Ptr FONode::quantifier(Kind k, int var, Ptr body) {
  return Ptr(new FONode(k, var, -1, -1, std::move(body), nullptr));
}
FONode::Ptr FONode::negation(Ptr f) {
  return Ptr(new FONode(Kind::Not, -1, -1, -1, std::move(f), nullptr));
}
FONode::Ptr FONode::binary(Kind k, Ptr lhs, Ptr rhs) {
  return Ptr(new FONode(k, -1, -1, -1, std::move(lhs), std::move(rhs)));
}
FONode::Ptr FONode::leq(int var, int var2) {
  return Ptr(new FONode(Kind::Leq, var, var2, -1, nullptr, nullptr));
}
FONode::Ptr FONode::eq(int var, int var2) {
  return Ptr(new FONode(Kind::Eq, var, var2, -1, nullptr, nullptr));
}
FONode::Ptr FONode::a_atom(int index, int var) {
  return Ptr(new FONode(Kind::AAtom, var, -1, index, nullptr, nullptr));
}

namespace {

// y < x as y <= x & !(x <= y).
FONode::Ptr strictly_less(int y, int x) {
  return FONode::binary(FONode::Kind::And, FONode::leq(y, x),
                        FONode::negation(FONode::leq(x, y)));
}

// nu over A-variables, applied at element variable `arg`.
FONode::Ptr hatted(const Formula& nu, int arg) {
  switch (nu.kind()) {
    case Formula::Kind::True:
      return FONode::constant(true);
    case Formula::Kind::False:
      return FONode::constant(false);
    case Formula::Kind::Var:
      return FONode::a_atom(nu.var_index(), arg);
    case Formula::Kind::Not:
      return FONode::negation(hatted(*nu.lhs(), arg));
    case Formula::Kind::And:
      return FONode::binary(FONode::Kind::And, hatted(*nu.lhs(), arg), hatted(*nu.rhs(), arg));
    case Formula::Kind::Or:
      return FONode::binary(FONode::Kind::Or, hatted(*nu.lhs(), arg), hatted(*nu.rhs(), arg));
    case Formula::Kind::Implies:
      return FONode::binary(FONode::Kind::Implies, hatted(*nu.lhs(), arg),
                            hatted(*nu.rhs(), arg));
    case Formula::Kind::Iff:
      return FONode::binary(FONode::Kind::Iff, hatted(*nu.lhs(), arg), hatted(*nu.rhs(), arg));
  }
  throw Error("unreachable");
}

// Shared by translate and the FO parser: fresh-variable bookkeeping plus the
// two min expansions.
struct FOBuilder {
  std::vector<std::string> var_names;
  int fresh_counter = 0;

  int fresh() {
    std::string name;
    do {
      name = "v" + std::to_string(++fresh_counter);
    } while (std::find(var_names.begin(), var_names.end(), name) != var_names.end());
    var_names.push_back(name);
    return int(var_names.size()) - 1;
  }

  // min(x): forall f. !(f < x)
  FONode::Ptr plain_min(int x) {
    int f = fresh();
    return FONode::quantifier(FONode::Kind::Forall, f, FONode::negation(strictly_less(f, x)));
  }

  // min[nu](x): nu(x) & forall f. (nu(f) -> !(f < x))
  FONode::Ptr min_within(const Formula& nu, int x) {
    int f = fresh();
    return FONode::binary(
        FONode::Kind::And, hatted(nu, x),
        FONode::quantifier(FONode::Kind::Forall, f,
                           FONode::binary(FONode::Kind::Implies, hatted(nu, f),
                                          FONode::negation(strictly_less(f, x)))));
  }
};

FONode::Ptr translate_body(const PBody& b, const Postulate& p, FOBuilder& fo) {
  switch (b.kind()) {
    case PBody::Kind::True:
      return FONode::constant(true);
    case PBody::Kind::False:
      return FONode::constant(false);
    case PBody::Kind::Forall:
      return FONode::quantifier(FONode::Kind::Forall, b.var(),
                                translate_body(*b.lhs(), p, fo));
    case PBody::Kind::Exists:
      return FONode::quantifier(FONode::Kind::Exists, b.var(),
                                translate_body(*b.lhs(), p, fo));
    case PBody::Kind::Not:
      return FONode::negation(translate_body(*b.lhs(), p, fo));
    case PBody::Kind::And:
    case PBody::Kind::Or:
    case PBody::Kind::Implies:
    case PBody::Kind::Iff: {
      auto kind = b.kind() == PBody::Kind::And       ? FONode::Kind::And
                  : b.kind() == PBody::Kind::Or      ? FONode::Kind::Or
                  : b.kind() == PBody::Kind::Implies ? FONode::Kind::Implies
                                                     : FONode::Kind::Iff;
      // Sequenced explicitly so fresh variables number left to right
      // regardless of the compiler's argument evaluation order.
      FONode::Ptr lhs = translate_body(*b.lhs(), p, fo);
      FONode::Ptr rhs = translate_body(*b.rhs(), p, fo);
      return FONode::binary(kind, std::move(lhs), std::move(rhs));
    }
    case PBody::Kind::KAtom:
      return fo.plain_min(b.var());
    case PBody::Kind::PhiAtom:
      return FONode::a_atom(b.index(), b.var());
    case PBody::Kind::StarAtom:
      return fo.min_within(*p.mus[b.index()], b.var());
    case PBody::Kind::EqAtom:
      return FONode::eq(b.var(), b.var2());
  }
  throw Error("unreachable");
}

}  // namespace

FOSentence translate(const Postulate& p) {
  validate_postulate(p);
  FOBuilder fo;
  fo.var_names = p.var_names;
  FOSentence out;
  out.body = translate_body(*p.body, p, fo);
  out.var_names = std::move(fo.var_names);
  out.ell = p.ell;
  return out;
}

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class FOParser {
 public:
  explicit FOParser(std::string_view text) : text_(text) {}

  FOSentence run_sentence() {
    FOSentence s = parse_wrapped(false).body;
    return s;
  }

  UMSOSentence run_umso() { return parse_wrapped(true); }

 private:
  UMSOSentence parse_wrapped(bool allow_wrapper) {
    UMSOSentence out;
    skip_ws();
    int declared = -1;
    if (allow_wrapper && peek_word() == "forallsets") {
      take_word();
      declared = parse_set_prefix();
    }
    fo_.fresh_counter = 0;
    auto body = parse_sentence();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    out.body.body = std::move(body);
    out.body.var_names = std::move(fo_.var_names);
    out.body.ell = max_a_;
    if (declared >= 0) {
      if (max_a_ > declared)
        fail("body mentions A" + std::to_string(max_a_) + " beyond the declared A1..A" +
             std::to_string(declared));
      out.ell = declared;
      out.body.ell = declared;
    } else {
      out.ell = max_a_;
    }
    return out;
  }

  // `A1..Ak.` or `A1.`
  int parse_set_prefix() {
    skip_ws();
    if (take_word() != "A1") fail("expected 'A1' after forallsets");
    skip_ws();
    if (text_.substr(pos_, 2) == "..") {
      pos_ += 2;
      std::string w = take_word();
      if (w.size() < 2 || w[0] != 'A') fail("expected 'A<k>' after '..'");
      int k = std::stoi(w.substr(1));
      if (k < 1 || k > 9) fail("set symbols range over A1..A9");
      if (!eat(".")) fail("expected '.' after set declaration");
      return k;
    }
    if (!eat(".")) fail("expected '.' after set declaration");
    return 1;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    if (is_ident_char(tok.back())) {
      std::size_t after = pos_ + tok.size();
      if (after < text_.size() && is_ident_char(text_[after])) return false;
    }
    pos_ += tok.size();
    return true;
  }

  std::string peek_word() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() && is_ident_char(text_[end])) ++end;
    return std::string(text_.substr(pos_, end - pos_));
  }

  std::string take_word() {
    std::string w = peek_word();
    pos_ += w.size();
    return w;
  }

  static bool looks_like_a(const std::string& w) {
    if (w.size() < 2 || w[0] != 'A') return false;
    return std::all_of(w.begin() + 1, w.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  }

  static bool reserved(const std::string& w) {
    return w == "forall" || w == "exists" || w == "forallsets" || w == "min" || w == "true" ||
           w == "false" || looks_like_a(w);
  }

  FONode::Ptr parse_sentence() {
    auto f = parse_implies();
    while (eat("<->")) f = FONode::binary(FONode::Kind::Iff, f, parse_implies());
    return f;
  }

  FONode::Ptr parse_implies() {
    auto f = parse_or();
    skip_ws();
    if (text_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return FONode::binary(FONode::Kind::Implies, f, parse_implies());
    }
    return f;
  }

  FONode::Ptr parse_or() {
    auto f = parse_and();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        f = FONode::binary(FONode::Kind::Or, f, parse_and());
      } else {
        return f;
      }
    }
  }

  FONode::Ptr parse_and() {
    auto f = parse_unary();
    while (eat("&")) f = FONode::binary(FONode::Kind::And, f, parse_unary());
    return f;
  }

  FONode::Ptr parse_unary() {
    if (eat("!")) return FONode::negation(parse_unary());
    skip_ws();
    std::string w = peek_word();
    if (w == "forall" || w == "exists") {
      take_word();
      return parse_quantifier(w == "forall" ? FONode::Kind::Forall : FONode::Kind::Exists);
    }
    return parse_atom();
  }

  FONode::Ptr parse_quantifier(FONode::Kind kind) {
    skip_ws();
    std::string name = take_word();
    if (name.empty() || !std::islower(static_cast<unsigned char>(name[0])) || reserved(name))
      fail("expected a variable name after quantifier");
    if (!eat(".")) fail("expected '.' after quantified variable");
    const int id = int(fo_.var_names.size());
    fo_.var_names.push_back(name);
    scope_.emplace_back(name, id);
    auto body = parse_sentence();
    scope_.pop_back();
    return FONode::quantifier(kind, id, body);
  }

  int lookup(const std::string& name) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return it->second;
    fail("free variable '" + name + "' (input must be a sentence)");
  }

  int parse_var_arg() {
    if (!eat("(")) fail("expected '('");
    skip_ws();
    std::string name = take_word();
    if (name.empty()) fail("expected a variable name");
    int id = lookup(name);
    if (!eat(")")) fail("expected ')'");
    return id;
  }

  Formula::Ptr parse_nu() {
    skip_ws();
    const std::size_t start = pos_;
    int depth = 1;
    while (pos_ < text_.size() && depth > 0) {
      if (text_[pos_] == '[') ++depth;
      if (text_[pos_] == ']') --depth;
      if (depth > 0) ++pos_;
    }
    if (depth != 0) fail("unterminated min argument (missing ']')");
    std::string_view nu_text = text_.substr(start, pos_ - start);
    ++pos_;
    try {
      return parse_formula(nu_text, 9, 'A');
    } catch (const ParseError& e) {
      throw ParseError("min argument must be a combination of A1..A9: " + std::string(e.what()),
                       start);
    }
  }

  FONode::Ptr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (eat("(")) {
      auto f = parse_sentence();
      if (!eat(")")) fail("expected ')'");
      return f;
    }
    if (eat("true")) return FONode::constant(true);
    if (eat("false")) return FONode::constant(false);
    std::string w = peek_word();
    if (w.empty()) fail("expected formula atom");
    if (w == "min") {
      take_word();
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '[') {
        ++pos_;
        Formula::Ptr nu = parse_nu();
        max_a_ = std::max(max_a_, nu->max_var());
        return fo_.min_within(*nu, parse_var_arg());
      }
      return fo_.plain_min(parse_var_arg());
    }
    if (looks_like_a(w)) {
      take_word();
      int index = std::stoi(w.substr(1));
      if (index < 1 || index > 9) fail("set symbols range over A1..A9");
      max_a_ = std::max(max_a_, index);
      return FONode::a_atom(index, parse_var_arg());
    }
    if (!std::islower(static_cast<unsigned char>(w[0])) || reserved(w))
      fail("expected formula atom");
    take_word();
    int left = lookup(w);
    skip_ws();
    if (text_.substr(pos_, 2) == "<=") {
      pos_ += 2;
      return FONode::leq(left, parse_right_var());
    }
    if (text_.substr(pos_, 3) == "<->") fail("expected a comparison after variable '" + w + "'");
    if (pos_ < text_.size() && text_[pos_] == '<') {
      ++pos_;
      int right = parse_right_var();
      return strictly_less(left, right);
    }
    if (pos_ < text_.size() && text_[pos_] == '=') {
      ++pos_;
      return FONode::eq(left, parse_right_var());
    }
    fail("expected '<=', '<' or '=' after variable '" + w + "'");
  }

  int parse_right_var() {
    skip_ws();
    std::string name = take_word();
    if (name.empty()) fail("expected a variable");
    return lookup(name);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  FOBuilder fo_;
  int max_a_ = 0;
  std::vector<std::pair<std::string, int>> scope_;
};

}  // namespace

FOSentence parse_fo(std::string_view text) { return FOParser(text).run_sentence(); }

UMSOSentence parse_umso(std::string_view text) { return FOParser(text).run_umso(); }

FOSentence min_macro(std::string_view nu_text) {
  // Built directly instead of through the parser so the macro expansion is
  // the entire body under a single binder.
  FOBuilder fo;
  fo.var_names.push_back("x");
  FONode::Ptr inner;
  int max_a = 0;
  if (nu_text.empty()) {
    inner = fo.plain_min(0);
  } else {
    Formula::Ptr nu = parse_formula(nu_text, 9, 'A');
    max_a = nu->max_var();
    inner = fo.min_within(*nu, 0);
  }
  FOSentence out;
  out.body = FONode::quantifier(FONode::Kind::Forall, 0, inner);
  out.var_names = std::move(fo.var_names);
  out.ell = max_a;
  return out;
}

namespace {

int level_of(FONode::Kind k) {
  switch (k) {
    case FONode::Kind::Forall:
    case FONode::Kind::Exists:
      return 0;
    case FONode::Kind::Iff:
      return 1;
    case FONode::Kind::Implies:
      return 2;
    case FONode::Kind::Or:
      return 3;
    case FONode::Kind::And:
    // Comparison atoms reparse fine unparenthesized, but `!(x <= y)` reads
    // better than `!x <= y`, so they take parens wherever a bare `&` would.
    case FONode::Kind::Leq:
    case FONode::Kind::Eq:
      return 4;
    default:
      return 5;
  }
}

void print_fo(const FONode& f, const FOSentence& s, std::string& out) {
  const auto wrap = [&](const FONode& child, int min_level) {
    bool need = level_of(child.kind()) < min_level;
    if (need) out.push_back('(');
    print_fo(child, s, out);
    if (need) out.push_back(')');
  };
  switch (f.kind()) {
    case FONode::Kind::True:
      out += "true";
      break;
    case FONode::Kind::False:
      out += "false";
      break;
    case FONode::Kind::Forall:
    case FONode::Kind::Exists:
      out += f.kind() == FONode::Kind::Forall ? "forall " : "exists ";
      out += s.var_names[f.var()];
      out += ". ";
      print_fo(*f.lhs(), s, out);
      break;
    case FONode::Kind::Not:
      out.push_back('!');
      wrap(*f.lhs(), 5);
      break;
    case FONode::Kind::And:
      wrap(*f.lhs(), 4);
      out += " & ";
      wrap(*f.rhs(), 5);
      break;
    case FONode::Kind::Or:
      wrap(*f.lhs(), 3);
      out += " | ";
      wrap(*f.rhs(), 4);
      break;
    case FONode::Kind::Implies:
      wrap(*f.lhs(), 3);
      out += " -> ";
      wrap(*f.rhs(), 2);
      break;
    case FONode::Kind::Iff:
      wrap(*f.lhs(), 1);
      out += " <-> ";
      wrap(*f.rhs(), 2);
      break;
    case FONode::Kind::Leq:
      out += s.var_names[f.var()] + " <= " + s.var_names[f.var2()];
      break;
    case FONode::Kind::Eq:
      out += s.var_names[f.var()] + " = " + s.var_names[f.var2()];
      break;
    case FONode::Kind::AAtom:
      out += "A" + std::to_string(f.index()) + "(" + s.var_names[f.var()] + ")";
      break;
  }
}

}  // namespace

std::string to_string(const FOSentence& s) {
  std::string out;
  print_fo(*s.body, s, out);
  return out;
}

std::string to_string(const UMSOSentence& s) {
  std::string out = "forallsets A1";
  if (s.ell > 1) out += "..A" + std::to_string(s.ell);
  out += ". ";
  out += to_string(s.body);
  return out;
}

namespace {

bool alpha_equal_rec(const FONode& a, const FONode& b, std::vector<std::pair<int, int>>& bound) {
  if (a.kind() != b.kind()) return false;
  auto var_match = [&](int va, int vb) {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
      if (it->first == va || it->second == vb) return it->first == va && it->second == vb;
    }
    return false;  // free variables cannot occur in sentences
  };
  switch (a.kind()) {
    case FONode::Kind::True:
    case FONode::Kind::False:
      return true;
    case FONode::Kind::Forall:
    case FONode::Kind::Exists: {
      bound.emplace_back(a.var(), b.var());
      bool ok = alpha_equal_rec(*a.lhs(), *b.lhs(), bound);
      bound.pop_back();
      return ok;
    }
    case FONode::Kind::Not:
      return alpha_equal_rec(*a.lhs(), *b.lhs(), bound);
    case FONode::Kind::And:
    case FONode::Kind::Or:
    case FONode::Kind::Implies:
    case FONode::Kind::Iff:
      return alpha_equal_rec(*a.lhs(), *b.lhs(), bound) &&
             alpha_equal_rec(*a.rhs(), *b.rhs(), bound);
    case FONode::Kind::Leq:
    case FONode::Kind::Eq:
      return var_match(a.var(), b.var()) && var_match(a.var2(), b.var2());
    case FONode::Kind::AAtom:
      return a.index() == b.index() && var_match(a.var(), b.var());
  }
  return false;
}

}  // namespace

bool alpha_equal(const FOSentence& a, const FOSentence& b) {
  std::vector<std::pair<int, int>> bound;
  return alpha_equal_rec(*a.body, *b.body, bound);
}

ExtendedStructure extension_of(const FaithfulStructure& f, const std::vector<ModelSet>& phis) {
  const int n = f.var_count();
  ExtendedStructure out;
  out.order = f.order;
  out.a_sets.reserve(phis.size());
  for (const auto& phi : phis) {
    if (phi.var_count() != n)
      throw Error("interpretation variable count does not match the structure");
    DynBitset a(f.order.size());
    for (int e = 0; e < f.order.size(); ++e)
      if (phi.contains(f.t[e])) a.set(e);
    out.a_sets.push_back(std::move(a));
  }
  return out;
}

namespace {

struct FOContext {
  const PartialPreorder* order;
  const std::vector<DynBitset>* a_sets;
  std::vector<int> env;
};

bool eval_fo_rec(const FONode& f, FOContext& ctx) {
  switch (f.kind()) {
    case FONode::Kind::True:
      return true;
    case FONode::Kind::False:
      return false;
    case FONode::Kind::Forall:
      for (int d = 0; d < ctx.order->size(); ++d) {
        ctx.env[f.var()] = d;
        if (!eval_fo_rec(*f.lhs(), ctx)) {
          ctx.env[f.var()] = -1;
          return false;
        }
      }
      ctx.env[f.var()] = -1;
      return true;
    case FONode::Kind::Exists:
      for (int d = 0; d < ctx.order->size(); ++d) {
        ctx.env[f.var()] = d;
        if (eval_fo_rec(*f.lhs(), ctx)) {
          ctx.env[f.var()] = -1;
          return true;
        }
      }
      ctx.env[f.var()] = -1;
      return false;
    case FONode::Kind::Not:
      return !eval_fo_rec(*f.lhs(), ctx);
    case FONode::Kind::And:
      return eval_fo_rec(*f.lhs(), ctx) && eval_fo_rec(*f.rhs(), ctx);
    case FONode::Kind::Or:
      return eval_fo_rec(*f.lhs(), ctx) || eval_fo_rec(*f.rhs(), ctx);
    case FONode::Kind::Implies:
      return !eval_fo_rec(*f.lhs(), ctx) || eval_fo_rec(*f.rhs(), ctx);
    case FONode::Kind::Iff:
      return eval_fo_rec(*f.lhs(), ctx) == eval_fo_rec(*f.rhs(), ctx);
    case FONode::Kind::Leq:
      return ctx.order->leq(ctx.env[f.var()], ctx.env[f.var2()]);
    case FONode::Kind::Eq:
      return ctx.env[f.var()] == ctx.env[f.var2()];
    case FONode::Kind::AAtom:
      return (*ctx.a_sets)[f.index() - 1].test(ctx.env[f.var()]);
  }
  return false;  // unreachable
}

}  // namespace

bool eval_fo(const ExtendedStructure& s, const FOSentence& psi) {
  if (psi.ell > int(s.a_sets.size()))
    throw Error("sentence mentions A" + std::to_string(psi.ell) + " but the structure carries " +
                std::to_string(s.a_sets.size()) + " subsets");
  FOContext ctx;
  ctx.order = &s.order;
  ctx.a_sets = &s.a_sets;
  ctx.env.assign(psi.var_names.size(), -1);
  return eval_fo_rec(*psi.body, ctx);
}

bool check_prop_equivalence(const FaithfulStructure& f, const RevisionOperator& op,
                            const FOSentence& tau, const Postulate& p,
                            const std::vector<ModelSet>& phis) {
  const bool lhs = eval_instance(op, f.k, p, phis);
  const bool rhs = eval_fo(extension_of(f, phis), tau);
  return lhs == rhs;
}

bool check_prop_equivalence(const FaithfulStructure& f, const Postulate& p,
                            const std::vector<ModelSet>& phis) {
  return check_prop_equivalence(f, operator_table(f), translate(p), p, phis);
}

UMSOVerdict eval_umso(const PartialPreorder& r, const UMSOSentence& phi, const UMSOOptions& opts) {
  const int m = r.size();
  const int ell = phi.ell;

  auto tuple_of = [&](const std::vector<std::uint64_t>& masks) {
    std::vector<DynBitset> sets;
    sets.reserve(masks.size());
    for (auto mask : masks) sets.push_back(DynBitset::from_mask(m, mask));
    return sets;
  };
  auto falsifies = [&](const std::vector<DynBitset>& sets) {
    return !eval_fo(ExtendedStructure{r, sets}, phi.body);
  };

  if (opts.exhaustive) {
    const int total_bits = ell * m;
    if (total_bits > 24)
      throw CapError("subset-tuple space is 2^" + std::to_string(total_bits) +
                     " > 2^24; use sampled mode");
    const std::uint64_t total = std::uint64_t(1) << total_bits;
    const std::uint64_t universe = (std::uint64_t(1) << m) - 1;
    auto masks_at = [&](std::uint64_t index) {
      std::vector<std::uint64_t> masks(ell);
      for (int i = ell - 1; i >= 0; --i) {
        masks[i] = index & universe;
        index >>= m;
      }
      return masks;
    };
    auto pred = [&](std::uint64_t index) { return falsifies(tuple_of(masks_at(index))); };
    std::optional<std::uint64_t> hit = detail::parallel_first(total, opts.jobs, pred);
    if (!hit) return {true, std::nullopt, total};
    return {false, tuple_of(masks_at(*hit)), *hit + 1};
  }

  if (m > 64) throw CapError("sampled subsets are drawn as 64-bit masks; structure too large");
  const std::uint64_t universe = m == 64 ? ~0ull : (std::uint64_t(1) << m) - 1;
  std::mt19937_64 rng(opts.seed);
  for (int i = 0; i < opts.samples; ++i) {
    std::vector<std::uint64_t> masks(ell);
    for (int j = 0; j < ell; ++j) masks[j] = rng() & universe;
    auto sets = tuple_of(masks);
    if (falsifies(sets)) return {false, std::move(sets), std::uint64_t(i) + 1};
  }
  return {true, std::nullopt, std::uint64_t(opts.samples)};
}

}  // namespace minrev
