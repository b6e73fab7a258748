#include <cctype>
#include <functional>
#include <optional>
#include <set>
#include <variant>

#include "revc/syntax.hpp"

namespace revc {

ParseError::ParseError(SourceLoc l, const std::string& message)
    : std::runtime_error(std::to_string(l.line) + ":" + std::to_string(l.column) + ": " +
                         message),
      loc(l) {}

namespace {

enum class Tok { Ident, Keyword, Symbol, Number, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

const std::set<std::string, std::less<>> kKeywords = {
    "tt",  "ff",  "skip", "if",   "then", "else", "match", "with", "split", "err", "let",
    "letrec", "in", "Y",  "inl",  "inr",  "pi1",  "pi2",  "and",  "xor",   "not", "nil",
    "def", "type", "bit", "unit",
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourceLoc loc{line, col};
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_' || src[j] == '\''))
        ++j;
      std::string word(src.substr(i, j - i));
      Tok kind = kKeywords.contains(word) ? Tok::Keyword : Tok::Ident;
      out.push_back({kind, std::move(word), loc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), loc});
      advance(j - i);
      continue;
    }
    static const char* kTwoChar[] = {"::", "->"};
    bool matched = false;
    for (const char* sym : kTwoChar) {
      if (src.substr(i, 2) == sym) {
        out.push_back({Tok::Symbol, sym, loc});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string_view("\\.:=()<>,[]*+|").find(ch) != std::string_view::npos) {
      out.push_back({Tok::Symbol, std::string(1, ch), loc});
      advance(1);
      continue;
    }
    throw ParseError(loc, std::string("unexpected character '") + ch + "'");
  }
  out.push_back({Tok::End, "", SourceLoc{line, col}});
  return out;
}

// Binding patterns: x, (x : T), _, *, <p1, ..., pn>
struct Pattern {
  enum Kind { Variable, Unit, Tuple } kind = Variable;
  Name name;
  TypePtr annot;
  std::vector<Pattern> parts;
  SourceLoc loc;
};

class Parser {
 public:
  Parser(std::string_view src, std::map<std::string, TypePtr>* aliases)
      : toks_(lex(src)), aliases_(aliases) {}

  bool at_end() const { return peek().kind == Tok::End; }

  TermPtr expression() { return parse_expr(); }
  TypePtr type() { return parse_type(); }

  void expect_end() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }

  SourceProgram program();

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, TypePtr>* aliases_;

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().loc, msg); }

  bool is_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Symbol && peek(k).text == s;
  }
  bool is_kw(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Keyword && peek(k).text == s;
  }
  bool accept_sym(std::string_view s) {
    if (!is_sym(s)) return false;
    next();
    return true;
  }
  bool accept_kw(std::string_view s) {
    if (!is_kw(s)) return false;
    next();
    return true;
  }
  void expect_sym(std::string_view s) {
    if (!accept_sym(s)) fail("expected '" + std::string(s) + "'");
  }
  void expect_kw(std::string_view s) {
    if (!accept_kw(s)) fail("expected '" + std::string(s) + "'");
  }
  Name expect_ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    const Token& t = next();
    if (t.text == "_") return Name::fresh("_");
    return Name(t.text);
  }

  // ---- types -------------------------------------------------------------

  TypePtr parse_type() {
    TypePtr left = parse_sum_type();
    if (accept_sym("->")) return arrow_type(left, parse_type());
    return left;
  }
  TypePtr parse_sum_type() {
    TypePtr left = parse_prod_type();
    if (accept_sym("+")) return sum_type(left, parse_sum_type());
    return left;
  }
  TypePtr parse_prod_type() {
    TypePtr left = parse_atom_type();
    if (accept_sym("*")) return prod_type(left, parse_prod_type());
    return left;
  }
  TypePtr parse_atom_type() {
    if (accept_kw("bit")) return bit_type();
    if (accept_kw("unit")) return unit_type();
    if (peek().kind == Tok::Number && peek().text == "1") {
      next();
      return unit_type();
    }
    if (accept_sym("[")) {
      TypePtr elem = parse_type();
      expect_sym("]");
      return list_type(elem);
    }
    if (accept_sym("(")) {
      TypePtr t = parse_type();
      expect_sym(")");
      return t;
    }
    if (peek().kind == Tok::Ident && aliases_) {
      auto it = aliases_->find(peek().text);
      if (it != aliases_->end()) {
        next();
        return it->second;
      }
      fail("unknown type '" + peek().text + "'");
    }
    fail("expected a type");
  }

  // ---- patterns ----------------------------------------------------------

  bool starts_pattern() const {
    return peek().kind == Tok::Ident || is_sym("(") || is_sym("<") || is_sym("*");
  }

  Pattern parse_pattern() {
    Pattern p;
    p.loc = peek().loc;
    if (accept_sym("*")) {
      p.kind = Pattern::Unit;
      return p;
    }
    if (accept_sym("(")) {
      p = parse_pattern();
      if (accept_sym(":")) {
        if (p.kind != Pattern::Variable) fail("only variables may be annotated");
        p.annot = parse_type();
      }
      expect_sym(")");
      return p;
    }
    if (accept_sym("<")) {
      p.kind = Pattern::Tuple;
      p.parts.push_back(parse_pattern());
      while (accept_sym(",")) p.parts.push_back(parse_pattern());
      expect_sym(">");
      if (p.parts.size() < 2) fail("a tuple pattern needs at least two components");
      return p;
    }
    p.name = expect_ident();
    return p;
  }

  // Binder name for a pattern plus the wrapping applied to the body.
  std::pair<Name, TermPtr> bind(const Pattern& p, TermPtr body) {
    switch (p.kind) {
      case Pattern::Variable:
        return {p.name, body};
      case Pattern::Unit: {
        Name z = Name::fresh("u");
        return {z, let_unit(var(z), body, p.loc)};
      }
      case Pattern::Tuple: {
        Name z = Name::fresh("z");
        return {z, destructure(p, var(z), body)};
      }
    }
    return {};
  }

  // let <p1, <p2, ...>> = source in body, where source is a variable.
  TermPtr destructure(const Pattern& p, const TermPtr& source, TermPtr body) {
    // n-ary tuples nest to the right
    std::vector<const Pattern*> parts;
    for (const auto& q : p.parts) parts.push_back(&q);
    TermPtr rest = source;
    std::vector<std::pair<const Pattern*, TermPtr>> lets;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i + 1 == parts.size()) {
        lets.emplace_back(parts[i], rest);
      } else {
        lets.emplace_back(parts[i], proj1(rest, p.loc));
        rest = proj2(rest, p.loc);
      }
    }
    for (auto it = lets.rbegin(); it != lets.rend(); ++it) body = let_pattern(*it->first, it->second, body);
    return body;
  }

  // let p = bound in body
  TermPtr let_pattern(const Pattern& p, TermPtr bound, TermPtr body) {
    switch (p.kind) {
      case Pattern::Variable:
        return app(lam(p.name, p.annot, body, p.loc), bound, p.loc);
      case Pattern::Unit:
        return let_unit(bound, body, p.loc);
      case Pattern::Tuple: {
        Name z = Name::fresh("z");
        return app(lam(z, nullptr, destructure(p, var(z), body), p.loc), bound, p.loc);
      }
    }
    return body;
  }

  // \p1 ... pn. body, with parameter types taken from `type` when absent.
  TermPtr abstract(const std::vector<Pattern>& params, TermPtr body, TypePtr type) {
    std::vector<TypePtr> doms;
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (type && type->kind == TypeKind::Arrow) {
        doms.push_back(type->dom());
        type = type->cod();
      } else {
        doms.push_back(nullptr);
        type = nullptr;
      }
    }
    for (std::size_t i = params.size(); i-- > 0;) {
      const Pattern& p = params[i];
      TypePtr annot = p.annot ? p.annot : doms[i];
      auto [name, wrapped] = bind(p, body);
      body = lam(name, annot, wrapped, p.loc);
    }
    return body;
  }

  // ---- expressions -------------------------------------------------------

  TermPtr parse_expr() {
    SourceLoc loc = peek().loc;
    if (accept_sym("\\")) {
      std::vector<Pattern> params;
      if (peek().kind == Tok::Ident && is_sym(":", 1)) {
        Pattern p;
        p.loc = peek().loc;
        p.name = expect_ident();
        expect_sym(":");
        p.annot = parse_type();
        params.push_back(std::move(p));
      } else {
        while (!is_sym(".")) {
          if (!starts_pattern()) fail("expected a binder or '.'");
          params.push_back(parse_pattern());
        }
        if (params.empty()) fail("lambda needs a binder");
      }
      expect_sym(".");
      return abstract(params, parse_expr(), nullptr);
    }
    if (accept_kw("let")) return parse_let(loc);
    if (accept_kw("letrec")) return parse_letrec(loc);
    if (accept_kw("if")) {
      TermPtr c = parse_expr();
      expect_kw("then");
      TermPtr t = parse_expr();
      expect_kw("else");
      TermPtr e = parse_expr();
      return ite(c, t, e, loc);
    }
    if (accept_kw("match")) return parse_match(loc);
    TermPtr head = parse_app();
    if (accept_sym("::")) return cons_at(head, parse_expr(), loc);
    return head;
  }

  static TermPtr cons_at(TermPtr h, TermPtr t, SourceLoc loc) {
    return inj2(pair(std::move(h), std::move(t), loc), loc);
  }

  TermPtr parse_let(SourceLoc loc) {
    Pattern p = parse_pattern();
    if (accept_sym("=")) {
      TermPtr bound = parse_expr();
      expect_kw("in");
      return let_pattern(p, bound, parse_expr());
    }
    if (p.kind != Pattern::Variable || p.annot) fail("expected '='");
    std::vector<Pattern> params;
    while (!is_sym("=")) {
      if (!starts_pattern()) fail("expected a parameter or '='");
      params.push_back(parse_pattern());
    }
    expect_sym("=");
    TermPtr fn = abstract(params, parse_expr(), nullptr);
    expect_kw("in");
    TermPtr body = parse_expr();
    return app(lam(p.name, nullptr, body, loc), fn, loc);
  }

  // letrec f x1 ... xn = M in N   ~>   (\f. N) (Y (\f. \x1 ... xn. M))
  TermPtr parse_letrec(SourceLoc loc) {
    Pattern f = parse_pattern();
    if (f.kind != Pattern::Variable) fail("letrec binds a function name");
    std::vector<Pattern> params;
    while (!is_sym("=")) {
      if (!starts_pattern()) fail("expected a parameter or '='");
      params.push_back(parse_pattern());
    }
    expect_sym("=");
    TermPtr fn = abstract(params, parse_expr(), f.annot);
    expect_kw("in");
    TermPtr body = parse_expr();
    TermPtr rec = fix(lam(f.name, f.annot, fn, loc), loc);
    return app(lam(f.name, nullptr, body, loc), rec, loc);
  }

  struct Branch {
    bool left;
    Pattern pattern;
    TermPtr body;
  };

  Branch parse_branch() {
    Branch br;
    if (accept_kw("inl")) {
      br.left = true;
      br.pattern = parse_pattern();
    } else if (accept_kw("inr")) {
      br.left = false;
      br.pattern = parse_pattern();
    } else if (is_kw("nil")) {
      br.left = true;
      br.pattern.loc = next().loc;
      br.pattern.name = Name::fresh("_");
    } else {
      Pattern first = parse_pattern();
      br.left = false;
      if (accept_sym("::")) {
        Pattern tuple;
        tuple.kind = Pattern::Tuple;
        tuple.loc = first.loc;
        tuple.parts.push_back(std::move(first));
        tuple.parts.push_back(parse_pattern());
        br.pattern = std::move(tuple);
      } else if (first.kind == Pattern::Tuple) {
        br.pattern = std::move(first);
      } else {
        fail("expected inl, inr, nil, h :: t or a tuple pattern");
      }
    }
    expect_sym("->");
    br.body = parse_expr();
    return br;
  }

  TermPtr parse_match(SourceLoc loc) {
    TermPtr scrutinee = parse_expr();
    expect_kw("with");
    accept_sym("|");
    Branch first = parse_branch();
    expect_sym("|");
    Branch second = parse_branch();
    if (first.left == second.left) fail("match needs one left and one right branch");
    if (!first.left) std::swap(first, second);
    auto [xl, bl] = bind(first.pattern, first.body);
    auto [xr, br] = bind(second.pattern, second.body);
    return match(scrutinee, xl, first.pattern.annot, bl, xr, second.pattern.annot, br, loc);
  }

  bool starts_atom() const {
    const Token& t = peek();
    if (t.kind == Tok::Ident) return true;
    if (t.kind == Tok::Keyword) {
      static const std::set<std::string, std::less<>> atoms = {
          "tt", "ff", "skip", "err", "nil", "split", "not", "and", "xor",
          "pi1", "pi2", "inl", "inr", "Y"};
      return atoms.contains(t.text);
    }
    return is_sym("(") || is_sym("<") || is_sym("[");
  }

  TermPtr parse_app() {
    bool bare_binop = is_kw("and") || is_kw("xor");
    SourceLoc loc = peek().loc;
    TermPtr head = parse_prefix();
    std::vector<TermPtr> args;
    while (starts_atom()) args.push_back(parse_prefix());
    std::size_t i = 0;
    if (bare_binop && args.size() >= 2) {
      head = app(head, pair(args[0], args[1], loc), loc);
      i = 2;
    }
    for (; i < args.size(); ++i) head = app(head, args[i], loc);
    return head;
  }

  TermPtr parse_prefix() {
    SourceLoc loc = peek().loc;
    if (accept_kw("pi1")) return proj1(parse_prefix(), loc);
    if (accept_kw("pi2")) return proj2(parse_prefix(), loc);
    if (accept_kw("inl")) return inj1(parse_prefix(), loc);
    if (accept_kw("inr")) return inj2(parse_prefix(), loc);
    if (accept_kw("Y")) return fix(parse_prefix(), loc);
    return parse_atom();
  }

  TermPtr parse_atom() {
    const Token& t = peek();
    SourceLoc loc = t.loc;
    if (t.kind == Tok::Ident) {
      return var(expect_ident(), loc);
    }
    if (t.kind == Tok::Keyword) {
      std::string kw = t.text;
      next();
      if (kw == "tt") return tt(loc);
      if (kw == "ff") return ff(loc);
      if (kw == "skip") return skip(loc);
      if (kw == "err") return err_term(loc);
      if (kw == "nil") return inj1(skip(loc), loc);
      if (kw == "split") return split_prim(loc);
      if (kw == "not") return not_prim(loc);
      if (kw == "and") return and_prim(loc);
      if (kw == "xor") return xor_prim(loc);
      --pos_;
      fail("unexpected keyword '" + kw + "'");
    }
    if (accept_sym("(")) {
      TermPtr inner = parse_expr();
      if (accept_sym(":")) inner = with_ascription(inner, parse_type());
      expect_sym(")");
      return inner;
    }
    if (accept_sym("<")) {
      std::vector<TermPtr> items{parse_expr()};
      while (accept_sym(",")) items.push_back(parse_expr());
      expect_sym(">");
      if (items.size() < 2) fail("a tuple needs at least two components");
      TermPtr out = items.back();
      for (std::size_t i = items.size() - 1; i-- > 0;) out = pair(items[i], out, loc);
      return out;
    }
    if (accept_sym("[")) {
      std::vector<TermPtr> items;
      if (!is_sym("]")) {
        items.push_back(parse_expr());
        while (accept_sym(",")) items.push_back(parse_expr());
      }
      expect_sym("]");
      TermPtr out = inj1(skip(loc), loc);
      for (auto it = items.rbegin(); it != items.rend(); ++it) out = cons_at(*it, out, loc);
      return out;
    }
    if (t.kind == Tok::End) fail("unexpected end of input");
    fail("unexpected '" + t.text + "'");
  }
};

SourceProgram Parser::program() {
  SourceProgram prog;
  aliases_ = &prog.type_aliases;
  std::map<std::string, std::pair<TypePtr, SourceLoc>> signatures;
  std::set<std::string> defined;
  while (!at_end()) {
    SourceLoc loc = peek().loc;
    if (accept_kw("type")) {
      if (peek().kind != Tok::Ident) fail("expected a type name");
      std::string name = next().text;
      expect_sym("=");
      TypePtr t = parse_type();
      if (prog.type_aliases.contains(name)) throw ParseError(loc, "type '" + name + "' redefined");
      prog.type_aliases.emplace(name, t);
      continue;
    }
    expect_kw("def");
    if (peek().kind != Tok::Ident) fail("expected a definition name");
    SourceLoc name_loc = peek().loc;
    std::string name = next().text;
    if (accept_sym(":")) {
      if (signatures.contains(name))
        throw ParseError(name_loc, "duplicate signature for '" + name + "'");
      signatures.emplace(name, std::pair{parse_type(), name_loc});
      continue;
    }
    std::vector<Pattern> params;
    while (!is_sym("=")) {
      if (!starts_pattern()) fail("expected a parameter or '='");
      params.push_back(parse_pattern());
    }
    expect_sym("=");
    TermPtr body = parse_expr();
    auto sig = signatures.find(name);
    if (sig == signatures.end())
      throw ParseError(name_loc, "definition '" + name + "' has no type signature");
    if (!defined.insert(name).second)
      throw ParseError(name_loc, "duplicate definition of '" + name + "'");
    TypePtr type = sig->second.first;
    Name self(name);
    TermPtr term = abstract(params, body, type);
    if (term->has_free(self)) term = fix(lam(self, type, term, name_loc), name_loc);
    prog.definitions.push_back({self, type, term, loc});
  }
  for (const auto& [name, sig] : signatures) {
    if (!defined.contains(name))
      throw ParseError(sig.second, "signature for '" + name + "' has no definition");
  }
  if (prog.definitions.empty()) throw ParseError(peek().loc, "program has no definitions");
  Name main("main");
  prog.entry = prog.find(main) ? main : prog.definitions.back().name;
  return prog;
}

}  // namespace

const Definition* SourceProgram::find(Name name) const {
  for (const auto& d : definitions)
    if (d.name == name) return &d;
  return nullptr;
}

const Definition& SourceProgram::entry_definition() const {
  const Definition* d = find(entry);
  if (!d) throw std::runtime_error("no entry definition '" + entry.str() + "'");
  return *d;
}

TermPtr SourceProgram::resolve(Name name) const {
  std::vector<std::pair<Name, TermPtr>> closed;
  for (const auto& d : definitions) {
    TermPtr t = d.body;
    for (auto it = closed.rbegin(); it != closed.rend(); ++it) t = subst(t, it->first, it->second);
    if (d.name == name) return t;
    closed.emplace_back(d.name, t);
  }
  throw std::runtime_error("no definition '" + name.str() + "'");
}

SourceProgram parse_program(std::string_view source) {
  Parser p(source, nullptr);
  return p.program();
}

TermPtr parse_term(std::string_view source) {
  Parser p(source, nullptr);
  TermPtr t = p.expression();
  p.expect_end();
  return t;
}

TypePtr parse_type(std::string_view source) {
  Parser p(source, nullptr);
  TypePtr t = p.type();
  p.expect_end();
  return t;
}

}  // namespace revc
