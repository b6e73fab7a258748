#include "revc/pretty.hpp"

#include <algorithm>

namespace revc {

namespace {

// Syntactic levels: 0 open expression (binders, if, match, ::), 1 application,
// 2 prefix operator, 3 atom.
constexpr int kExpr = 0, kApp = 1, kPrefix = 2, kAtom = 3;

bool plain_pair(const TermPtr& t) { return t->tag == Tag::Pair && !t->ascription; }

bool is_nil(const TermPtr& t) {
  return t->tag == Tag::Inj1 && !t->ascription && t->a->tag == Tag::Skip && !t->a->ascription;
}

class Printer {
 public:
  std::string out;

  void term(const TermPtr& t, int ctx) {
    if (t->ascription) {
      out += '(';
      body(t, kExpr);
      out += " : " + to_string(t->ascription) + ")";
      return;
    }
    body(t, ctx);
  }

 private:
  void open(bool paren) {
    if (paren) out += '(';
  }
  void close(bool paren) {
    if (paren) out += ')';
  }

  void binder(Name x, const TypePtr& annot) {
    if (annot)
      out += "(" + x.str() + " : " + to_string(annot) + ")";
    else
      out += x.str();
  }

  void body(const TermPtr& t, int ctx) {
    switch (t->tag) {
      case Tag::Var: out += t->name.str(); return;
      case Tag::WireRef: out += "#" + std::to_string(t->wire); return;
      case Tag::Skip: out += "skip"; return;
      case Tag::TT: out += "tt"; return;
      case Tag::FF: out += "ff"; return;
      case Tag::Err: out += "err"; return;
      case Tag::Split: out += "split"; return;
      case Tag::And: out += "and"; return;
      case Tag::Xor: out += "xor"; return;
      case Tag::Not: out += "not"; return;
      case Tag::Lam: {
        bool p = ctx > kExpr;
        open(p);
        out += "\\";
        binder(t->name, t->annot);
        out += ". ";
        term(t->a, kExpr);
        close(p);
        return;
      }
      case Tag::App:
        application(t, ctx);
        return;
      case Tag::Pair: {
        out += '<';
        TermPtr cur = t;
        bool first = true;
        while (plain_pair(cur)) {
          if (!first) out += ", ";
          term(cur->a, kExpr);
          first = false;
          cur = cur->b;
        }
        out += ", ";
        term(cur, kExpr);
        out += '>';
        return;
      }
      case Tag::Proj1: prefix("pi1", t->a, ctx); return;
      case Tag::Proj2: prefix("pi2", t->a, ctx); return;
      case Tag::Fix: prefix("Y", t->a, ctx); return;
      case Tag::Inj1:
        if (is_nil(t)) {
          out += "nil";
          return;
        }
        prefix("inl", t->a, ctx);
        return;
      case Tag::Inj2: {
        if (auto items = as_list(t->ascription ? with_ascription(t, nullptr) : t)) {
          out += '[';
          for (std::size_t i = 0; i < items->size(); ++i) {
            if (i) out += ", ";
            term((*items)[i], kExpr);
          }
          out += ']';
          return;
        }
        if (plain_pair(t->a)) {
          bool p = ctx > kExpr;
          open(p);
          term(t->a->a, kApp);
          out += " :: ";
          term(t->a->b, kExpr);
          close(p);
          return;
        }
        prefix("inr", t->a, ctx);
        return;
      }
      case Tag::LetUnit: {
        bool p = ctx > kExpr;
        open(p);
        out += "let * = ";
        term(t->a, kExpr);
        out += " in ";
        term(t->b, kExpr);
        close(p);
        return;
      }
      case Tag::If: {
        bool p = ctx > kExpr;
        open(p);
        out += "if ";
        term(t->a, kExpr);
        out += " then ";
        term(t->b, kExpr);
        out += " else ";
        term(t->c, kExpr);
        close(p);
        return;
      }
      case Tag::Match: {
        bool p = ctx > kExpr;
        open(p);
        out += "match ";
        term(t->a, kExpr);
        out += " with inl ";
        binder(t->name, t->annot);
        out += " -> ";
        // an open expression here would swallow the second branch
        term(t->b, kApp);
        out += " | inr ";
        binder(t->name2, t->annot2);
        out += " -> ";
        term(t->c, kExpr);
        close(p);
        return;
      }
    }
  }

  void prefix(const char* op, const TermPtr& arg, int ctx) {
    bool p = ctx > kPrefix;
    open(p);
    out += op;
    out += ' ';
    term(arg, kPrefix);
    close(p);
  }

  void application(const TermPtr& t, int ctx) {
    std::vector<TermPtr> args;
    TermPtr head = t;
    while (head->tag == Tag::App && !head->ascription) {
      args.push_back(head->b);
      head = head->a;
    }
    std::reverse(args.begin(), args.end());

    if (args.size() == 1 && head->tag == Tag::Lam && !head->ascription) {
      bool p = ctx > kExpr;
      open(p);
      out += "let ";
      binder(head->name, head->annot);
      out += " = ";
      term(args[0], kExpr);
      out += " in ";
      term(head->a, kExpr);
      close(p);
      return;
    }

    bool p = ctx > kApp;
    open(p);
    std::size_t i = 0;
    bool binop = (head->tag == Tag::And || head->tag == Tag::Xor) && !head->ascription;
    if (binop && plain_pair(args[0])) {
      out += head->tag == Tag::And ? "and " : "xor ";
      term(args[0]->a, kAtom);
      out += ' ';
      term(args[0]->b, kAtom);
      i = 1;
    } else if (binop && args.size() >= 2) {
      out += head->tag == Tag::And ? "(and)" : "(xor)";
    } else {
      term(head, kAtom);
    }
    for (; i < args.size(); ++i) {
      out += ' ';
      term(args[i], kAtom);
    }
    close(p);
  }
};

}  // namespace

std::string pretty(const TermPtr& t) {
  Printer p;
  p.term(t, kExpr);
  return p.out;
}

std::string pretty(const SourceProgram& prog) {
  std::string out;
  for (const auto& d : prog.definitions) {
    out += "def " + d.name.str() + " : " + to_string(d.type) + "\n";
    out += "def " + d.name.str() + " = " + pretty(d.body) + "\n\n";
  }
  return out;
}

}  // namespace revc
