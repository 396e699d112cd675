#include "minrev/postulate.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>

#include "parallel.hpp"

namespace minrev {

PBody::Ptr PBody::constant(bool value) {
  return Ptr(new PBody(value ? Kind::True : Kind::False, -1, -1, -1, nullptr, nullptr));
}
PBody::Ptr PBody::quantifier(Kind k, int var, Ptr body) {
  return Ptr(new PBody(k, var, -1, -1, std::move(body), nullptr));
}
PBody::Ptr PBody::negation(Ptr f) {
  return Ptr(new PBody(Kind::Not, -1, -1, -1, std::move(f), nullptr));
}
PBody::Ptr PBody::binary(Kind k, Ptr lhs, Ptr rhs) {
  return Ptr(new PBody(k, -1, -1, -1, std::move(lhs), std::move(rhs)));
}
PBody::Ptr PBody::k_atom(int var) { return Ptr(new PBody(Kind::KAtom, var, -1, -1, nullptr, nullptr)); }
PBody::Ptr PBody::phi_atom(int index, int var) {
  return Ptr(new PBody(Kind::PhiAtom, var, -1, index, nullptr, nullptr));
}
PBody::Ptr PBody::star_atom(int mu_index, int var) {
  return Ptr(new PBody(Kind::StarAtom, var, -1, mu_index, nullptr, nullptr));
}
PBody::Ptr PBody::eq_atom(int var, int var2) {
  return Ptr(new PBody(Kind::EqAtom, var, var2, -1, nullptr, nullptr));
}

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Grammar mirrors the formula DSL with quantifiers allowed at the tightest
// level; a quantifier's scope then extends maximally to the right (its body
// is parsed at the loosest level).
class PostulateParser {
 public:
  explicit PostulateParser(std::string_view text) : text_(text) {}

  Postulate run() {
    out_.body = parse_sentence();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return std::move(out_);
  }

 private:
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

  PBody::Ptr parse_sentence() {
    auto f = parse_implies();
    while (eat("<->")) f = PBody::binary(PBody::Kind::Iff, f, parse_implies());
    return f;
  }

  PBody::Ptr parse_implies() {
    auto f = parse_or();
    skip_ws();
    if (text_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return PBody::binary(PBody::Kind::Implies, f, parse_implies());
    }
    return f;
  }

  PBody::Ptr parse_or() {
    auto f = parse_and();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '|') {
        ++pos_;
        f = PBody::binary(PBody::Kind::Or, f, parse_and());
      } else {
        return f;
      }
    }
  }

  PBody::Ptr parse_and() {
    auto f = parse_unary();
    while (eat("&")) f = PBody::binary(PBody::Kind::And, f, parse_unary());
    return f;
  }

  PBody::Ptr parse_unary() {
    if (eat("!")) return PBody::negation(parse_unary());
    skip_ws();
    std::string w = peek_word();
    if (w == "forall" || w == "exists") {
      take_word();
      return parse_quantifier(w == "forall" ? PBody::Kind::Forall : PBody::Kind::Exists);
    }
    return parse_atom();
  }

  PBody::Ptr parse_quantifier(PBody::Kind kind) {
    skip_ws();
    std::string name = take_word();
    if (name.empty() || !std::islower(static_cast<unsigned char>(name[0])) || reserved(name))
      fail("expected a variable name after quantifier");
    if (!eat(".")) fail("expected '.' after quantified variable");
    const int id = int(out_.var_names.size());
    out_.var_names.push_back(name);
    scope_.emplace_back(name, id);
    auto body = parse_sentence();  // scope extends maximally to the right
    scope_.pop_back();
    return PBody::quantifier(kind, id, body);
  }

  static bool reserved(const std::string& w) {
    return w == "forall" || w == "exists" || w == "true" || w == "false" || w == "K" ||
           w == "Kstar" || looks_like_phi(w);
  }

  static bool looks_like_phi(const std::string& w) {
    if (w.size() < 2 || w[0] != 'p') return false;
    return std::all_of(w.begin() + 1, w.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  }

  int lookup(const std::string& name) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return it->second;
    fail("free variable '" + name + "' (postulates must be sentences)");
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

  PBody::Ptr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (eat("(")) {
      auto f = parse_sentence();
      if (!eat(")")) fail("expected ')'");
      return f;
    }
    if (eat("true")) return PBody::constant(true);
    if (eat("false")) return PBody::constant(false);
    std::string w = peek_word();
    if (w.empty()) fail("expected postulate atom");
    if (w == "K") {
      take_word();
      return PBody::k_atom(parse_var_arg());
    }
    if (w == "Kstar") {
      take_word();
      return parse_star();
    }
    if (looks_like_phi(w)) {
      take_word();
      int index = std::stoi(w.substr(1));
      if (index < 1 || index > 9) fail("formula symbols range over p1..p9");
      out_.ell = std::max(out_.ell, index);
      return PBody::phi_atom(index, parse_var_arg());
    }
    // A bare variable starts an equality atom.
    if (!std::islower(static_cast<unsigned char>(w[0]))) fail("expected postulate atom");
    take_word();
    int left = lookup(w);
    if (!eat("=")) fail("expected '=' after variable '" + w + "'");
    skip_ws();
    std::string w2 = take_word();
    if (w2.empty()) fail("expected a variable after '='");
    return PBody::eq_atom(left, lookup(w2));
  }

  PBody::Ptr parse_star() {
    if (!eat("[")) fail("expected '[' after Kstar");
    skip_ws();
    const std::size_t start = pos_;
    int depth = 1;
    while (pos_ < text_.size() && depth > 0) {
      if (text_[pos_] == '[') ++depth;
      if (text_[pos_] == ']') --depth;
      if (depth > 0) ++pos_;
    }
    if (depth != 0) fail("unterminated starred argument (missing ']')");
    std::string_view mu_text = text_.substr(start, pos_ - start);
    ++pos_;  // ']'
    Formula::Ptr mu;
    try {
      mu = parse_formula(mu_text, 9, 'p');
    } catch (const ParseError& e) {
      throw ParseError("starred argument must be a boolean combination of p1..p9: " +
                           std::string(e.what()),
                       start);
    }
    out_.ell = std::max(out_.ell, mu->max_var());
    int mu_index = -1;
    for (std::size_t i = 0; i < out_.mus.size(); ++i)
      if (Formula::equal(out_.mus[i], mu)) {
        mu_index = int(i);
        break;
      }
    if (mu_index < 0) {
      mu_index = int(out_.mus.size());
      out_.mus.push_back(mu);
    }
    return PBody::star_atom(mu_index, parse_var_arg());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Postulate out_;
  std::vector<std::pair<std::string, int>> scope_;
};

}  // namespace

Postulate parse_postulate(std::string_view text) { return PostulateParser(text).run(); }

namespace {

const std::vector<std::pair<std::string, std::string>>& builtin_table() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"agm-success", "(exists x. p1(x)) -> (exists x. Kstar[p1](x))"},
      {"agm-success-k", "(exists x. K(x)) -> (exists x. Kstar[p1](x))"},
      {"agm-subexpansion",
       "(exists x. Kstar[p1](x) & p2(x)) -> (forall y. Kstar[p1 & p2](y) -> Kstar[p1](y) & "
       "p2(y))"},
  };
  return table;
}

}  // namespace

Postulate builtin_postulate(std::string_view name) {
  for (const auto& [key, text] : builtin_table())
    if (key == name) return parse_postulate(text);
  throw Error("unknown built-in postulate: " + std::string(name));
}

const std::vector<std::string>& builtin_postulate_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [key, text] : builtin_table()) out.push_back(key);
    return out;
  }();
  return names;
}

namespace {

int level_of(PBody::Kind k) {
  switch (k) {
    case PBody::Kind::Forall:
    case PBody::Kind::Exists:
      return 0;
    case PBody::Kind::Iff:
      return 1;
    case PBody::Kind::Implies:
      return 2;
    case PBody::Kind::Or:
      return 3;
    case PBody::Kind::And:
    case PBody::Kind::EqAtom:  // print `!(x = y)`, not `!x = y`
      return 4;
    default:
      return 5;
  }
}

void print_body(const PBody& f, const Postulate& p, std::string& out) {
  const auto wrap = [&](const PBody& child, int min_level) {
    bool need = level_of(child.kind()) < min_level;
    if (need) out.push_back('(');
    print_body(child, p, out);
    if (need) out.push_back(')');
  };
  switch (f.kind()) {
    case PBody::Kind::True:
      out += "true";
      break;
    case PBody::Kind::False:
      out += "false";
      break;
    case PBody::Kind::Forall:
    case PBody::Kind::Exists:
      out += f.kind() == PBody::Kind::Forall ? "forall " : "exists ";
      out += p.var_names[f.var()];
      out += ". ";
      print_body(*f.lhs(), p, out);
      break;
    case PBody::Kind::Not:
      out.push_back('!');
      wrap(*f.lhs(), 5);
      break;
    case PBody::Kind::And:
      wrap(*f.lhs(), 4);
      out += " & ";
      wrap(*f.rhs(), 5);
      break;
    case PBody::Kind::Or:
      wrap(*f.lhs(), 3);
      out += " | ";
      wrap(*f.rhs(), 4);
      break;
    case PBody::Kind::Implies:
      wrap(*f.lhs(), 3);
      out += " -> ";
      wrap(*f.rhs(), 2);
      break;
    case PBody::Kind::Iff:
      wrap(*f.lhs(), 1);
      out += " <-> ";
      wrap(*f.rhs(), 2);
      break;
    case PBody::Kind::KAtom:
      out += "K(" + p.var_names[f.var()] + ")";
      break;
    case PBody::Kind::PhiAtom:
      out += "p" + std::to_string(f.index()) + "(" + p.var_names[f.var()] + ")";
      break;
    case PBody::Kind::StarAtom:
      out += "Kstar[" + p.mus[f.index()]->to_string('p') + "](" + p.var_names[f.var()] + ")";
      break;
    case PBody::Kind::EqAtom:
      out += p.var_names[f.var()] + " = " + p.var_names[f.var2()];
      break;
  }
}

}  // namespace

std::string to_string(const Postulate& p) {
  std::string out;
  print_body(*p.body, p, out);
  return out;
}

ModelSet models_under(const Formula& mu, const std::vector<ModelSet>& phis) {
  if (phis.empty()) throw Error("models_under needs at least one interpretation");
  const int n = phis[0].var_count();
  switch (mu.kind()) {
    case Formula::Kind::True:
      return ModelSet::all(n);
    case Formula::Kind::False:
      return ModelSet::none(n);
    case Formula::Kind::Var: {
      const int i = mu.var_index();
      if (i > int(phis.size())) throw Error("mu mentions p" + std::to_string(i) +
                                            " beyond the supplied interpretations");
      return phis[i - 1];
    }
    case Formula::Kind::Not:
      return models_under(*mu.lhs(), phis).complement();
    case Formula::Kind::And:
      return models_under(*mu.lhs(), phis) & models_under(*mu.rhs(), phis);
    case Formula::Kind::Or:
      return models_under(*mu.lhs(), phis) | models_under(*mu.rhs(), phis);
    case Formula::Kind::Implies:
      return models_under(*mu.lhs(), phis).complement() | models_under(*mu.rhs(), phis);
    case Formula::Kind::Iff: {
      ModelSet a = models_under(*mu.lhs(), phis);
      ModelSet b = models_under(*mu.rhs(), phis);
      return (a & b) | (a.complement() & b.complement());
    }
  }
  throw Error("unreachable");
}

namespace {

// The evaluator and translator index env/var_names by id and assume each
// atom's variable was bound by an enclosing quantifier exactly once; a stray
// id would read env[-1]-style garbage. Parser output satisfies all of this
// by construction, hand-built bodies must be checked.
void check_body_shape(const PBody& f, std::vector<char>& bound, const Postulate& p) {
  auto check_var = [&](int v) {
    if (v < 0 || v >= int(bound.size()))
      throw ValidationError("variable id " + std::to_string(v) + " does not index var_names");
    if (!bound[std::size_t(v)])
      throw ValidationError("free variable '" + p.var_names[std::size_t(v)] +
                            "' (postulates must be sentences)");
  };
  switch (f.kind()) {
    case PBody::Kind::True:
    case PBody::Kind::False:
      return;
    case PBody::Kind::Forall:
    case PBody::Kind::Exists: {
      const int v = f.var();
      if (v < 0 || v >= int(bound.size()))
        throw ValidationError("variable id " + std::to_string(v) + " does not index var_names");
      if (bound[std::size_t(v)])
        throw ValidationError("variable '" + p.var_names[std::size_t(v)] +
                              "' rebound by a nested quantifier");
      if (!f.lhs()) throw ValidationError("quantifier with no body");
      bound[std::size_t(v)] = 1;
      check_body_shape(*f.lhs(), bound, p);
      bound[std::size_t(v)] = 0;
      return;
    }
    case PBody::Kind::Not:
      if (!f.lhs()) throw ValidationError("negation with no operand");
      check_body_shape(*f.lhs(), bound, p);
      return;
    case PBody::Kind::And:
    case PBody::Kind::Or:
    case PBody::Kind::Implies:
    case PBody::Kind::Iff:
      if (!f.lhs() || !f.rhs()) throw ValidationError("connective with a missing operand");
      check_body_shape(*f.lhs(), bound, p);
      check_body_shape(*f.rhs(), bound, p);
      return;
    case PBody::Kind::KAtom:
      check_var(f.var());
      return;
    case PBody::Kind::PhiAtom:
      if (f.index() < 1 || f.index() > p.ell)
        throw ValidationError("p" + std::to_string(f.index()) + " used but ell = " +
                              std::to_string(p.ell));
      check_var(f.var());
      return;
    case PBody::Kind::StarAtom:
      if (f.index() < 0 || f.index() >= int(p.mus.size()))
        throw ValidationError("star index " + std::to_string(f.index()) +
                              " does not name a stored combination");
      check_var(f.var());
      return;
    case PBody::Kind::EqAtom:
      check_var(f.var());
      check_var(f.var2());
      return;
  }
  throw ValidationError("unknown body node");
}

}  // namespace

void validate_postulate(const Postulate& p) {
  if (p.ell < 0) throw ValidationError("negative formula-symbol count");
  if (!p.body) throw ValidationError("postulate has no body");
  for (const auto& mu : p.mus) {
    if (!mu) throw ValidationError("null starred combination");
    if (mu->max_var() > p.ell)
      throw ValidationError("starred combination mentions p" + std::to_string(mu->max_var()) +
                            " but ell = " + std::to_string(p.ell));
  }
  std::vector<char> bound(p.var_names.size(), 0);
  check_body_shape(*p.body, bound, p);
}

namespace {

struct InstanceContext {
  const ModelSet* k;
  const std::vector<ModelSet>* phis;
  std::vector<ModelSet> star_sets;  // op(models_under(mu_j))
  int domain;                        // 2^n
  std::vector<int> env;              // var id -> assignment, -1 unbound
};

bool eval_body(const PBody& f, InstanceContext& ctx) {
  switch (f.kind()) {
    case PBody::Kind::True:
      return true;
    case PBody::Kind::False:
      return false;
    case PBody::Kind::Forall:
      for (int d = 0; d < ctx.domain; ++d) {
        ctx.env[f.var()] = d;
        if (!eval_body(*f.lhs(), ctx)) {
          ctx.env[f.var()] = -1;
          return false;
        }
      }
      ctx.env[f.var()] = -1;
      return true;
    case PBody::Kind::Exists:
      for (int d = 0; d < ctx.domain; ++d) {
        ctx.env[f.var()] = d;
        if (eval_body(*f.lhs(), ctx)) {
          ctx.env[f.var()] = -1;
          return true;
        }
      }
      ctx.env[f.var()] = -1;
      return false;
    case PBody::Kind::Not:
      return !eval_body(*f.lhs(), ctx);
    case PBody::Kind::And:
      return eval_body(*f.lhs(), ctx) && eval_body(*f.rhs(), ctx);
    case PBody::Kind::Or:
      return eval_body(*f.lhs(), ctx) || eval_body(*f.rhs(), ctx);
    case PBody::Kind::Implies:
      return !eval_body(*f.lhs(), ctx) || eval_body(*f.rhs(), ctx);
    case PBody::Kind::Iff:
      return eval_body(*f.lhs(), ctx) == eval_body(*f.rhs(), ctx);
    case PBody::Kind::KAtom:
      return ctx.k->contains(std::uint32_t(ctx.env[f.var()]));
    case PBody::Kind::PhiAtom:
      return (*ctx.phis)[f.index() - 1].contains(std::uint32_t(ctx.env[f.var()]));
    case PBody::Kind::StarAtom:
      return ctx.star_sets[f.index()].contains(std::uint32_t(ctx.env[f.var()]));
    case PBody::Kind::EqAtom:
      return ctx.env[f.var()] == ctx.env[f.var2()];
  }
  return false;  // unreachable
}

// Shape-check already done; shared by eval_instance and the satisfies loop
// (which validates once, not per tuple).
bool eval_instance_impl(const RevisionOperator& op, const ModelSet& k, const Postulate& p,
                        const std::vector<ModelSet>& phis) {
  const int n = op.var_count();
  if (k.var_count() != n) throw Error("knowledge base variable count does not match operator");
  if (int(phis.size()) != p.ell)
    throw Error("postulate has " + std::to_string(p.ell) + " formula symbols, got " +
                std::to_string(phis.size()) + " interpretations");
  for (const auto& phi : phis)
    if (phi.var_count() != n) throw Error("interpretation variable count does not match operator");

  InstanceContext ctx;
  ctx.k = &k;
  ctx.phis = &phis;
  ctx.domain = 1 << n;
  ctx.env.assign(p.var_names.size(), -1);
  ctx.star_sets.reserve(p.mus.size());
  std::vector<ModelSet> padded = phis;
  if (padded.empty()) padded.push_back(ModelSet::none(n));  // models_under needs the n
  for (const auto& mu : p.mus) ctx.star_sets.push_back(op.apply(models_under(*mu, padded)));
  return eval_body(*p.body, ctx);
}

}  // namespace

bool eval_instance(const RevisionOperator& op, const ModelSet& k, const Postulate& p,
                   const std::vector<ModelSet>& phis) {
  validate_postulate(p);
  return eval_instance_impl(op, k, p, phis);
}

SatisfactionVerdict satisfies(const RevisionOperator& op, const ModelSet& k, const Postulate& p,
                              const SatisfiesOptions& opts) {
  validate_postulate(p);
  const int n = op.var_count();
  const int subset_bits = 1 << n;
  const std::uint32_t universe = std::uint32_t((std::uint64_t(1) << subset_bits) - 1);

  auto tuple_of = [&](const std::vector<std::uint32_t>& masks) {
    std::vector<ModelSet> phis;
    phis.reserve(masks.size());
    for (auto m : masks) phis.push_back(ModelSet::from_mask(n, m));
    return phis;
  };

  if (opts.exhaustive) {
    const int total_bits = p.ell * subset_bits;
    if (total_bits > 24)
      throw CapError("exhaustive tuple space is 2^" + std::to_string(total_bits) +
                     " > 2^24; use sampled mode");
    const std::uint64_t total = std::uint64_t(1) << total_bits;
    // Index digits, A_1 most significant: ascending index = lexicographic
    // tuple order, so the first hit is the canonical counterexample.
    auto masks_at = [&](std::uint64_t index) {
      std::vector<std::uint32_t> masks(p.ell);
      for (int i = p.ell - 1; i >= 0; --i) {
        masks[i] = std::uint32_t(index) & universe;
        index >>= subset_bits;
      }
      return masks;
    };
    auto failing = [&](std::uint64_t index) {
      return !eval_instance_impl(op, k, p, tuple_of(masks_at(index)));
    };
    std::optional<std::uint64_t> hit = detail::parallel_first(total, opts.jobs, failing);
    if (!hit) return {true, std::nullopt, total};
    return {false, tuple_of(masks_at(*hit)), *hit + 1};
  }

  std::mt19937_64 rng(opts.seed);
  for (int i = 0; i < opts.samples; ++i) {
    std::vector<std::uint32_t> masks(p.ell);
    for (int j = 0; j < p.ell; ++j) masks[j] = std::uint32_t(rng()) & universe;
    auto phis = tuple_of(masks);
    if (!eval_instance_impl(op, k, p, phis))
      return {false, std::move(phis), std::uint64_t(i) + 1};
  }
  return {true, std::nullopt, std::uint64_t(opts.samples)};
}

}  // namespace minrev
