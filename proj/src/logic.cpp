#include "finsem/logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "finsem/errors.hpp"

namespace finsem {

namespace {

FormulaPtr fnode(FormulaKind k, std::string atom, FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->atom = std::move(atom);
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

TermPtr tnode(TermKind k, std::string name, std::string name2, TermPtr t0,
              TermPtr t1, TermPtr t2) {
  auto t = std::make_shared<ProofTerm>();
  t->kind = k;
  t->name = std::move(name);
  t->name2 = std::move(name2);
  t->t0 = std::move(t0);
  t->t1 = std::move(t1);
  t->t2 = std::move(t2);
  return t;
}

}  // namespace

FormulaPtr makeAtom(std::string name) {
  if (name.empty()) {
    failInput("SyntaxError", "atom name is empty");
  }
  return fnode(FormulaKind::Atom, std::move(name), nullptr, nullptr);
}
FormulaPtr makeTop() { return fnode(FormulaKind::Top, "", nullptr, nullptr); }
FormulaPtr makeBot() { return fnode(FormulaKind::Bot, "", nullptr, nullptr); }
FormulaPtr makeAnd(FormulaPtr l, FormulaPtr r) {
  return fnode(FormulaKind::And, "", std::move(l), std::move(r));
}
FormulaPtr makeOr(FormulaPtr l, FormulaPtr r) {
  return fnode(FormulaKind::Or, "", std::move(l), std::move(r));
}
FormulaPtr makeImp(FormulaPtr l, FormulaPtr r) {
  return fnode(FormulaKind::Imp, "", std::move(l), std::move(r));
}
FormulaPtr makeNot(FormulaPtr f) {
  return fnode(FormulaKind::Not, "", std::move(f), nullptr);
}

namespace {

// ¬φ ↦ φ→⊥, recursively. Equality of formulas is equality of the rewritten
// trees, so the type checker never distinguishes the two spellings.
FormulaPtr expandNot(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return f;
    case FormulaKind::Not:
      return makeImp(expandNot(f->left), makeBot());
    case FormulaKind::And:
      return makeAnd(expandNot(f->left), expandNot(f->right));
    case FormulaKind::Or:
      return makeOr(expandNot(f->left), expandNot(f->right));
    case FormulaKind::Imp:
      return makeImp(expandNot(f->left), expandNot(f->right));
  }
  failInput("MalformedExpression", "formula node with unknown kind");
}

bool structEq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaKind::Atom:
      return a->atom == b->atom;
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return true;
    case FormulaKind::Not:
      return structEq(a->left, b->left);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      return structEq(a->left, b->left) && structEq(a->right, b->right);
  }
  return false;
}

}  // namespace

bool formulaEqual(const FormulaPtr& a, const FormulaPtr& b) {
  return structEq(expandNot(a), expandNot(b));
}

// --- lexer shared by formulas, terms, and proof files -------------------------

namespace {

struct Token {
  enum class Kind {
    Ident,
    LParen,
    RParen,
    Comma,
    Tilde,
    Amp,
    Pipe,
    Arrow,   // ->
    DArrow,  // =>
    Lambda,  // backslash
    Dot,
    Colon,
    End
  };
  Kind kind;
  std::string text;
  std::size_t pos;  // 1-based character offset, for error messages
};

[[noreturn]] void syntaxError(const std::string& what, std::size_t pos) {
  failInput("SyntaxError", what + " at position " + std::to_string(pos));
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    const std::size_t pos = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < n && text[i] != '\n') ++i;
      continue;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < n && ((text[j] >= 'a' && text[j] <= 'z') ||
                       (text[j] >= '0' && text[j] <= '9') || text[j] == '_')) {
        ++j;
      }
      out.push_back({Token::Kind::Ident, text.substr(i, j - i), pos});
      i = j;
      continue;
    }
    switch (c) {
      case '(':
        out.push_back({Token::Kind::LParen, "(", pos});
        ++i;
        continue;
      case ')':
        out.push_back({Token::Kind::RParen, ")", pos});
        ++i;
        continue;
      case ',':
        out.push_back({Token::Kind::Comma, ",", pos});
        ++i;
        continue;
      case '~':
        out.push_back({Token::Kind::Tilde, "~", pos});
        ++i;
        continue;
      case '&':
        out.push_back({Token::Kind::Amp, "&", pos});
        ++i;
        continue;
      case '|':
        out.push_back({Token::Kind::Pipe, "|", pos});
        ++i;
        continue;
      case '\\':
        out.push_back({Token::Kind::Lambda, "\\", pos});
        ++i;
        continue;
      case '.':
        out.push_back({Token::Kind::Dot, ".", pos});
        ++i;
        continue;
      case ':':
        out.push_back({Token::Kind::Colon, ":", pos});
        ++i;
        continue;
      case '-':
        if (i + 1 < n && text[i + 1] == '>') {
          out.push_back({Token::Kind::Arrow, "->", pos});
          i += 2;
          continue;
        }
        syntaxError("stray '-' (expected '->')", pos);
      case '=':
        if (i + 1 < n && text[i + 1] == '>') {
          out.push_back({Token::Kind::DArrow, "=>", pos});
          i += 2;
          continue;
        }
        syntaxError("stray '=' (expected '=>')", pos);
      default:
        syntaxError(std::string("unexpected character '") + c + "'", pos);
    }
  }
  out.push_back({Token::Kind::End, "", n + 1});
  return out;
}

// --- formula parsing -----------------------------------------------------------

struct FormulaParser {
  const std::vector<Token>& toks;
  std::size_t k = 0;

  const Token& peek() const { return toks[k]; }
  const Token& next() { return toks[k++]; }

  bool eat(Token::Kind kind) {
    if (peek().kind == kind) {
      ++k;
      return true;
    }
    return false;
  }

  FormulaPtr parseImp() {
    FormulaPtr l = parseOr();
    if (eat(Token::Kind::Arrow)) {
      return makeImp(std::move(l), parseImp());  // right-associative
    }
    return l;
  }

  FormulaPtr parseOr() {
    FormulaPtr l = parseAnd();
    while (eat(Token::Kind::Pipe)) {
      l = makeOr(std::move(l), parseAnd());
    }
    return l;
  }

  FormulaPtr parseAnd() {
    FormulaPtr l = parseUnary();
    while (eat(Token::Kind::Amp)) {
      l = makeAnd(std::move(l), parseUnary());
    }
    return l;
  }

  FormulaPtr parseUnary() {
    if (eat(Token::Kind::Tilde)) {
      return makeNot(parseUnary());
    }
    return parsePrimary();
  }

  FormulaPtr parsePrimary() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Ident) {
      next();
      if (t.text == "top") return makeTop();
      if (t.text == "bot") return makeBot();
      return makeAtom(t.text);
    }
    if (t.kind == Token::Kind::LParen) {
      next();
      FormulaPtr f = parseImp();
      if (!eat(Token::Kind::RParen)) {
        syntaxError("expected ')'", peek().pos);
      }
      return f;
    }
    syntaxError("expected a formula", t.pos);
  }
};

FormulaPtr parseFormulaTokens(const std::vector<Token>& toks) {
  FormulaParser p{toks};
  FormulaPtr f = p.parseImp();
  if (p.peek().kind != Token::Kind::End) {
    syntaxError("trailing input after formula", p.peek().pos);
  }
  return f;
}

}  // namespace

FormulaPtr parseFormula(const std::string& text) {
  return parseFormulaTokens(lex(text));
}

namespace {

// Precedence for printing: → is 1 (right-assoc), ∨ 2, ∧ 3, ¬ 4, atoms 5.
std::string pf(const FormulaPtr& f, int parent) {
  int mine = 5;
  std::string s;
  switch (f->kind) {
    case FormulaKind::Atom:
      s = f->atom;
      break;
    case FormulaKind::Top:
      s = "top";
      break;
    case FormulaKind::Bot:
      s = "bot";
      break;
    case FormulaKind::Not:
      mine = 4;
      s = "~" + pf(f->left, 4);
      break;
    case FormulaKind::And:
      mine = 3;
      s = pf(f->left, 3) + " & " + pf(f->right, 4);
      break;
    case FormulaKind::Or:
      mine = 2;
      s = pf(f->left, 2) + " | " + pf(f->right, 3);
      break;
    case FormulaKind::Imp:
      mine = 1;
      s = pf(f->left, 2) + " -> " + pf(f->right, 1);
      break;
  }
  if (mine < parent) return "(" + s + ")";
  return s;
}

}  // namespace

std::string printFormula(const FormulaPtr& f) { return pf(f, 0); }

// --- term constructors ----------------------------------------------------------

TermPtr makeVar(std::string x) {
  return tnode(TermKind::Var, std::move(x), "", nullptr, nullptr, nullptr);
}
TermPtr makeLam(std::string x, TermPtr body) {
  return tnode(TermKind::Lam, std::move(x), "", std::move(body), nullptr,
               nullptr);
}
TermPtr makeApp(TermPtr f, TermPtr a) {
  return tnode(TermKind::App, "", "", std::move(f), std::move(a), nullptr);
}
TermPtr makePair(TermPtr l, TermPtr r) {
  return tnode(TermKind::Pair, "", "", std::move(l), std::move(r), nullptr);
}
TermPtr makeFst(TermPtr t) {
  return tnode(TermKind::Fst, "", "", std::move(t), nullptr, nullptr);
}
TermPtr makeSnd(TermPtr t) {
  return tnode(TermKind::Snd, "", "", std::move(t), nullptr, nullptr);
}
TermPtr makeInl(TermPtr t) {
  return tnode(TermKind::Inl, "", "", std::move(t), nullptr, nullptr);
}
TermPtr makeInr(TermPtr t) {
  return tnode(TermKind::Inr, "", "", std::move(t), nullptr, nullptr);
}
TermPtr makeCase(TermPtr scrut, std::string xl, TermPtr l, std::string xr,
                 TermPtr r) {
  return tnode(TermKind::Case, std::move(xl), std::move(xr), std::move(scrut),
               std::move(l), std::move(r));
}
TermPtr makeUnit() {
  return tnode(TermKind::Unit, "", "", nullptr, nullptr, nullptr);
}
TermPtr makeAbort(TermPtr t) {
  return tnode(TermKind::Abort, "", "", std::move(t), nullptr, nullptr);
}

bool termEqual(const TermPtr& a, const TermPtr& b) {
  if (a == nullptr || b == nullptr) return a == b;
  if (a->kind != b->kind || a->name != b->name || a->name2 != b->name2) {
    return false;
  }
  return termEqual(a->t0, b->t0) && termEqual(a->t1, b->t1) &&
         termEqual(a->t2, b->t2);
}

// --- term parsing -----------------------------------------------------------------

namespace {

bool isTermKeyword(const std::string& s) {
  return s == "fst" || s == "snd" || s == "inl" || s == "inr" || s == "case" ||
         s == "of" || s == "unit" || s == "abort";
}

struct TermParser {
  const std::vector<Token>& toks;
  std::size_t k = 0;

  const Token& peek() const { return toks[k]; }
  const Token& next() { return toks[k++]; }

  bool eat(Token::Kind kind) {
    if (peek().kind == kind) {
      ++k;
      return true;
    }
    return false;
  }

  bool peekIdent(const std::string& word) const {
    return peek().kind == Token::Kind::Ident && peek().text == word;
  }

  std::string expectVar(const char* where) {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident || isTermKeyword(t.text)) {
      syntaxError(std::string("expected a variable name ") + where, t.pos);
    }
    next();
    return t.text;
  }

  TermPtr parseTermExpr() {
    if (eat(Token::Kind::Lambda)) {
      std::string x = expectVar("after '\\'");
      if (!eat(Token::Kind::Dot)) {
        syntaxError("expected '.' after the λ-binder", peek().pos);
      }
      return makeLam(std::move(x), parseTermExpr());
    }
    if (peekIdent("case")) {
      next();
      TermPtr scrut = parseTermExpr();
      if (!peekIdent("of")) syntaxError("expected 'of'", peek().pos);
      next();
      if (!peekIdent("inl")) syntaxError("expected 'inl'", peek().pos);
      next();
      std::string xl = expectVar("after 'inl'");
      if (!eat(Token::Kind::DArrow)) syntaxError("expected '=>'", peek().pos);
      TermPtr l = parseTermExpr();
      if (!eat(Token::Kind::Pipe)) {
        syntaxError("expected '|' between case branches", peek().pos);
      }
      if (!peekIdent("inr")) syntaxError("expected 'inr'", peek().pos);
      next();
      std::string xr = expectVar("after 'inr'");
      if (!eat(Token::Kind::DArrow)) syntaxError("expected '=>'", peek().pos);
      TermPtr r = parseTermExpr();
      return makeCase(std::move(scrut), std::move(xl), std::move(l),
                      std::move(xr), std::move(r));
    }
    return parseApp();
  }

  // Juxtaposition, left-associative. The chain stops at any token that
  // cannot begin an argument — in particular 'of', '|', ',' and ')'.
  TermPtr parseApp() {
    TermPtr t = parsePrefix();
    while (startsArgument()) {
      t = makeApp(std::move(t), parsePrefix());
    }
    return t;
  }

  bool startsArgument() const {
    const Token& t = peek();
    if (t.kind == Token::Kind::LParen) return true;
    if (t.kind != Token::Kind::Ident) return false;
    return t.text != "case" && t.text != "of";
  }

  TermPtr parsePrefix() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "fst") {
        next();
        return makeFst(parsePrefix());
      }
      if (t.text == "snd") {
        next();
        return makeSnd(parsePrefix());
      }
      if (t.text == "inl") {
        next();
        return makeInl(parsePrefix());
      }
      if (t.text == "inr") {
        next();
        return makeInr(parsePrefix());
      }
      if (t.text == "abort") {
        next();
        return makeAbort(parsePrefix());
      }
    }
    return parseAtom();
  }

  TermPtr parseAtom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Ident) {
      if (t.text == "unit") {
        next();
        return makeUnit();
      }
      if (isTermKeyword(t.text)) {
        syntaxError("keyword '" + t.text + "' cannot stand alone", t.pos);
      }
      next();
      return makeVar(t.text);
    }
    if (t.kind == Token::Kind::LParen) {
      next();
      TermPtr inner = parseTermExpr();
      if (eat(Token::Kind::Comma)) {
        TermPtr rhs = parseTermExpr();
        if (!eat(Token::Kind::RParen)) {
          syntaxError("expected ')' after pair", peek().pos);
        }
        return makePair(std::move(inner), std::move(rhs));
      }
      if (!eat(Token::Kind::RParen)) {
        syntaxError("expected ')'", peek().pos);
      }
      return inner;
    }
    syntaxError("expected a term", t.pos);
  }
};

TermPtr parseTermTokens(const std::vector<Token>& toks) {
  TermParser p{toks};
  TermPtr t = p.parseTermExpr();
  if (p.peek().kind != Token::Kind::End) {
    syntaxError("trailing input after term", p.peek().pos);
  }
  return t;
}

}  // namespace

TermPtr parseTerm(const std::string& text) {
  return parseTermTokens(lex(text));
}

namespace {

// Printing precedence: 0 open position (top level, binder bodies),
// 1 application head, 2 application argument / prefix operand. λ and case
// extend as far right as possible, so they parenthesize everywhere except
// open positions; applications and prefix forms parenthesize as arguments.
std::string pt(const TermPtr& t, int prec) {
  switch (t->kind) {
    case TermKind::Var:
      return t->name;
    case TermKind::Unit:
      return "unit";
    case TermKind::Pair:
      return "(" + pt(t->t0, 0) + ", " + pt(t->t1, 0) + ")";
    case TermKind::Lam: {
      std::string s = "\\" + t->name + ". " + pt(t->t0, 0);
      return prec > 0 ? "(" + s + ")" : s;
    }
    case TermKind::Case: {
      std::string s = "case " + pt(t->t0, 1) + " of inl " + t->name + " => " +
                      pt(t->t1, 1) + " | inr " + t->name2 + " => " +
                      pt(t->t2, 0);
      return prec > 0 ? "(" + s + ")" : s;
    }
    case TermKind::App: {
      std::string s = pt(t->t0, 1) + " " + pt(t->t1, 2);
      return prec > 1 ? "(" + s + ")" : s;
    }
    case TermKind::Fst:
    case TermKind::Snd:
    case TermKind::Inl:
    case TermKind::Inr:
    case TermKind::Abort: {
      const char* op = t->kind == TermKind::Fst   ? "fst"
                       : t->kind == TermKind::Snd ? "snd"
                       : t->kind == TermKind::Inl ? "inl"
                       : t->kind == TermKind::Inr ? "inr"
                                                  : "abort";
      std::string s = std::string(op) + " " + pt(t->t0, 2);
      return prec > 1 ? "(" + s + ")" : s;
    }
  }
  failInput("MalformedExpression", "term node with unknown kind");
}

}  // namespace

std::string printTerm(const TermPtr& t) { return pt(t, 0); }

// --- substitution -----------------------------------------------------------------

namespace {

void collectFree(const TermPtr& t, std::set<std::string>& bound,
                 std::set<std::string>& out) {
  if (t == nullptr) return;
  switch (t->kind) {
    case TermKind::Var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case TermKind::Lam: {
      const bool fresh = bound.insert(t->name).second;
      collectFree(t->t0, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
    case TermKind::Case: {
      collectFree(t->t0, bound, out);
      const bool fl = bound.insert(t->name).second;
      collectFree(t->t1, bound, out);
      if (fl) bound.erase(t->name);
      const bool fr = bound.insert(t->name2).second;
      collectFree(t->t2, bound, out);
      if (fr) bound.erase(t->name2);
      return;
    }
    default:
      collectFree(t->t0, bound, out);
      collectFree(t->t1, bound, out);
      collectFree(t->t2, bound, out);
      return;
  }
}

std::set<std::string> freeVars(const TermPtr& t) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collectFree(t, bound, out);
  return out;
}

std::string freshName(const std::string& base,
                      const std::set<std::string>& avoid) {
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!avoid.count(candidate)) return candidate;
  }
}

// Substitution under one binder, freshening it when it would capture a free
// variable of s.
std::pair<std::string, TermPtr> substUnderBinder(const std::string& binder,
                                                 const TermPtr& body,
                                                 const std::string& x,
                                                 const TermPtr& s) {
  if (binder == x) return {binder, body};  // x is shadowed here
  std::set<std::string> fvS = freeVars(s);
  if (fvS.count(binder)) {
    std::set<std::string> avoid = fvS;
    for (const auto& fv : freeVars(body)) avoid.insert(fv);
    avoid.insert(x);
    std::string renamed = freshName(binder, avoid);
    TermPtr body2 = substitute(body, binder, makeVar(renamed));
    return {renamed, substitute(body2, x, s)};
  }
  return {binder, substitute(body, x, s)};
}

}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& s) {
  switch (t->kind) {
    case TermKind::Var:
      return t->name == x ? s : t;
    case TermKind::Unit:
      return t;
    case TermKind::Lam: {
      auto [binder, body] = substUnderBinder(t->name, t->t0, x, s);
      return makeLam(std::move(binder), std::move(body));
    }
    case TermKind::Case: {
      TermPtr scrut = substitute(t->t0, x, s);
      auto [xl, l] = substUnderBinder(t->name, t->t1, x, s);
      auto [xr, r] = substUnderBinder(t->name2, t->t2, x, s);
      return makeCase(std::move(scrut), std::move(xl), std::move(l),
                      std::move(xr), std::move(r));
    }
    case TermKind::App:
      return makeApp(substitute(t->t0, x, s), substitute(t->t1, x, s));
    case TermKind::Pair:
      return makePair(substitute(t->t0, x, s), substitute(t->t1, x, s));
    case TermKind::Fst:
      return makeFst(substitute(t->t0, x, s));
    case TermKind::Snd:
      return makeSnd(substitute(t->t0, x, s));
    case TermKind::Inl:
      return makeInl(substitute(t->t0, x, s));
    case TermKind::Inr:
      return makeInr(substitute(t->t0, x, s));
    case TermKind::Abort:
      return makeAbort(substitute(t->t0, x, s));
  }
  failInput("MalformedExpression", "term node with unknown kind");
}

// --- type checking ----------------------------------------------------------------

namespace {

// Unfold one implication layer; ¬φ counts as φ→⊥.
std::optional<std::pair<FormulaPtr, FormulaPtr>> asImp(const FormulaPtr& f) {
  if (f->kind == FormulaKind::Imp) return {{f->left, f->right}};
  if (f->kind == FormulaKind::Not) return {{f->left, makeBot()}};
  return std::nullopt;
}

Derivation check(const Context& ctx, const TermPtr& t, const FormulaPtr& phi);

// Synthesis handles the forms whose formula is determined by the context:
// variables, applications, projections, pairs, unit.
Derivation synth(const Context& ctx, const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: {
      for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
        if (it->first == t->name) {
          return Derivation{"Var", ctx, t, it->second, {}};
        }
      }
      failInput("UnboundVariable",
                "variable '" + t->name + "' is not bound in the context");
    }
    case TermKind::App: {
      Derivation df = synth(ctx, t->t0);
      auto ab = asImp(df.formula);
      if (!ab) {
        failInput("TypeMismatch",
                  "function position of '" + printTerm(t) +
                      "' : expected an implication, actual " +
                      printFormula(df.formula));
      }
      Derivation da = check(ctx, t->t1, ab->first);
      return Derivation{
          "Imp-elim", ctx, t, ab->second, {std::move(df), std::move(da)}};
    }
    case TermKind::Fst: {
      Derivation dp = synth(ctx, t->t0);
      if (dp.formula->kind != FormulaKind::And) {
        failInput("TypeMismatch", "operand of fst : expected a conjunction, "
                                  "actual " +
                                      printFormula(dp.formula));
      }
      FormulaPtr out = dp.formula->left;
      return Derivation{"And-elim-left", ctx, t, out, {std::move(dp)}};
    }
    case TermKind::Snd: {
      Derivation dp = synth(ctx, t->t0);
      if (dp.formula->kind != FormulaKind::And) {
        failInput("TypeMismatch", "operand of snd : expected a conjunction, "
                                  "actual " +
                                      printFormula(dp.formula));
      }
      FormulaPtr out = dp.formula->right;
      return Derivation{"And-elim-right", ctx, t, out, {std::move(dp)}};
    }
    case TermKind::Pair: {
      Derivation dl = synth(ctx, t->t0);
      Derivation dr = synth(ctx, t->t1);
      FormulaPtr out = makeAnd(dl.formula, dr.formula);
      return Derivation{
          "And-intro", ctx, t, out, {std::move(dl), std::move(dr)}};
    }
    case TermKind::Unit:
      return Derivation{"Top-intro", ctx, t, makeTop(), {}};
    default:
      failInput("TypeMismatch", "cannot infer a formula for '" + printTerm(t) +
                                    "'; check it against a stated goal");
  }
}

Derivation check(const Context& ctx, const TermPtr& t, const FormulaPtr& phi) {
  switch (t->kind) {
    case TermKind::Lam: {
      auto ab = asImp(phi);
      if (!ab) {
        failInput("TypeMismatch", "term '" + printTerm(t) + "' : expected " +
                                      printFormula(phi) +
                                      ", actual a λ-abstraction (only an "
                                      "implication can type one)");
      }
      Context ext = ctx;
      ext.emplace_back(t->name, ab->first);
      Derivation body = check(ext, t->t0, ab->second);
      return Derivation{"Imp-intro", ctx, t, phi, {std::move(body)}};
    }
    case TermKind::Pair: {
      if (phi->kind != FormulaKind::And) {
        failInput("TypeMismatch",
                  "term '" + printTerm(t) + "' : expected " +
                      printFormula(phi) +
                      ", actual a pair (only a conjunction can type one)");
      }
      Derivation dl = check(ctx, t->t0, phi->left);
      Derivation dr = check(ctx, t->t1, phi->right);
      return Derivation{
          "And-intro", ctx, t, phi, {std::move(dl), std::move(dr)}};
    }
    case TermKind::Inl: {
      if (phi->kind != FormulaKind::Or) {
        failInput("TypeMismatch",
                  "term '" + printTerm(t) + "' : expected " +
                      printFormula(phi) +
                      ", actual a left injection (only a disjunction can "
                      "type one)");
      }
      Derivation d0 = check(ctx, t->t0, phi->left);
      return Derivation{"Or-intro-left", ctx, t, phi, {std::move(d0)}};
    }
    case TermKind::Inr: {
      if (phi->kind != FormulaKind::Or) {
        failInput("TypeMismatch",
                  "term '" + printTerm(t) + "' : expected " +
                      printFormula(phi) +
                      ", actual a right injection (only a disjunction can "
                      "type one)");
      }
      Derivation d0 = check(ctx, t->t0, phi->right);
      return Derivation{"Or-intro-right", ctx, t, phi, {std::move(d0)}};
    }
    case TermKind::Case: {
      Derivation ds = synth(ctx, t->t0);
      if (ds.formula->kind != FormulaKind::Or) {
        failInput("TypeMismatch", "case scrutinee : expected a disjunction, "
                                  "actual " +
                                      printFormula(ds.formula));
      }
      Context cl = ctx;
      cl.emplace_back(t->name, ds.formula->left);
      Derivation dl = check(cl, t->t1, phi);
      Context cr = ctx;
      cr.emplace_back(t->name2, ds.formula->right);
      Derivation dr = check(cr, t->t2, phi);
      return Derivation{
          "Or-elim", ctx, t, phi,
          {std::move(ds), std::move(dl), std::move(dr)}};
    }
    case TermKind::Abort: {
      Derivation d0 = check(ctx, t->t0, makeBot());
      return Derivation{"Bot-elim", ctx, t, phi, {std::move(d0)}};
    }
    case TermKind::App: {
      // β-redex whose argument synthesizes: the λ head cannot synthesize,
      // but the argument pins its domain down.
      if (t->t0->kind == TermKind::Lam) {
        Derivation da = synth(ctx, t->t1);
        Derivation dfn = check(ctx, t->t0, makeImp(da.formula, phi));
        return Derivation{
            "Imp-elim", ctx, t, phi, {std::move(dfn), std::move(da)}};
      }
      Derivation d = synth(ctx, t);
      if (!formulaEqual(d.formula, phi)) {
        failInput("TypeMismatch", "term '" + printTerm(t) + "' : expected " +
                                      printFormula(phi) + ", actual " +
                                      printFormula(d.formula));
      }
      return d;
    }
    default: {
      Derivation d = synth(ctx, t);
      if (!formulaEqual(d.formula, phi)) {
        failInput("TypeMismatch", "term '" + printTerm(t) + "' : expected " +
                                      printFormula(phi) + ", actual " +
                                      printFormula(d.formula));
      }
      return d;
    }
  }
}

}  // namespace

Derivation typeCheck(const Context& ctx, const TermPtr& t,
                     const FormulaPtr& phi) {
  return check(ctx, t, phi);
}

// --- semantics --------------------------------------------------------------------

FinSetObj interpretFormula(const FormulaPtr& phi, const Valuation& v,
                           const FinSetObj& D) {
  switch (phi->kind) {
    case FormulaKind::Atom: {
      auto it = v.find(phi->atom);
      if (it == v.end()) {
        failInput("MissingAtom",
                  "valuation assigns no set to atom '" + phi->atom + "'");
      }
      return it->second;
    }
    case FormulaKind::Top:
      return makeObj("1", {"*"});
    case FormulaKind::Bot:
      return makeObj("0", {});
    case FormulaKind::And:
      return product(interpretFormula(phi->left, v, D),
                     interpretFormula(phi->right, v, D))
          .object;
    case FormulaKind::Or:
      return coproduct(interpretFormula(phi->left, v, D),
                       interpretFormula(phi->right, v, D))
          .object;
    case FormulaKind::Imp:
      return exponential(interpretFormula(phi->left, v, D),
                         interpretFormula(phi->right, v, D))
          .object;
    case FormulaKind::Not:
      return exponential(interpretFormula(phi->left, v, D), D).object;
  }
  failInput("MalformedExpression", "formula node with unknown kind");
}

namespace {

bool containsNot(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return false;
    case FormulaKind::Not:
      return true;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp:
      return containsNot(f->left) || containsNot(f->right);
  }
  return false;
}

bool mentionsNot(const Derivation& d) {
  if (containsNot(d.formula)) return true;
  for (const auto& [x, phi] : d.context) {
    if (containsNot(phi)) return true;
  }
  for (const auto& p : d.premises) {
    if (mentionsNot(p)) return true;
  }
  return false;
}

// With D ≠ ∅ the carriers of ¬φ and φ→⊥ differ, so a derivation that typed
// the two interchangeably has no coherent compilation. Rejected rather than
// compiled wrong; the workaround is an implication into an atom valued at D.
void guardDualizing(const Derivation& d, const FinSetObj& D) {
  if (D.size() > 0 && mentionsNot(d)) {
    failInput("DualizingMismatch",
              "a non-empty dualizing object breaks the ¬φ ≡ φ→⊥ carrier "
              "identity used by the type checker; spell the negation as an "
              "implication into an atom interpreted by the dualizing set");
  }
}

// ⟦Γ⟧ as an iterated product seeded with the singleton, plus the
// interpretation of each binding — enough to build projection chains.
struct CtxSem {
  std::vector<FinSetObj> prefixes;  // prefixes[k] = ⟦first k bindings⟧
  std::vector<FinSetObj> parts;     // parts[i]    = ⟦ctx[i]⟧
};

CtxSem ctxSemantics(const Context& ctx, const Valuation& v,
                    const FinSetObj& D) {
  CtxSem s;
  s.prefixes.push_back(makeObj("1", {"*"}));
  for (const auto& [x, phi] : ctx) {
    s.parts.push_back(interpretFormula(phi, v, D));
    s.prefixes.push_back(product(s.prefixes.back(), s.parts.back()).object);
  }
  return s;
}

// The projection ⟦Γ⟧ → ⟦ctx[idx]⟧: peel π_left past every later binding,
// finish with π_right.
FinSetMap varProjection(const CtxSem& cs, std::size_t idx) {
  const std::size_t n = cs.parts.size();
  FinSetMap m = identity(cs.prefixes[n]);
  for (std::size_t k = n; k > idx + 1; --k) {
    m = compose(product(cs.prefixes[k - 1], cs.parts[k - 1]).projLeft, m);
  }
  return compose(product(cs.prefixes[idx], cs.parts[idx]).projRight, m);
}

FinSetMap compile(const Derivation& d, const Valuation& v,
                  const FinSetObj& D) {
  const CtxSem cs = ctxSemantics(d.context, v, D);
  const FinSetObj& G = cs.prefixes.back();
  switch (d.term->kind) {
    case TermKind::Var: {
      // innermost binding of the name — shadowing resolves rightmost
      for (std::size_t i = d.context.size(); i-- > 0;) {
        if (d.context[i].first == d.term->name) {
          return varProjection(cs, i);
        }
      }
      failInput("UnboundVariable", "variable '" + d.term->name +
                                       "' is not bound in the context");
    }
    case TermKind::Lam: {
      auto ab = asImp(d.formula);
      FinSetMap body = compile(d.premises[0], v, D);
      return curry(body, G, interpretFormula(ab->first, v, D));
    }
    case TermKind::App: {
      auto ab = asImp(d.premises[0].formula);
      ExponentialData E = exponential(interpretFormula(ab->first, v, D),
                                      interpretFormula(ab->second, v, D));
      FinSetMap f = compile(d.premises[0], v, D);
      FinSetMap a = compile(d.premises[1], v, D);
      return compose(E.ev, pair(f, a));
    }
    case TermKind::Pair:
      return pair(compile(d.premises[0], v, D), compile(d.premises[1], v, D));
    case TermKind::Fst: {
      const FormulaPtr& conj = d.premises[0].formula;
      ProductData P = product(interpretFormula(conj->left, v, D),
                              interpretFormula(conj->right, v, D));
      return compose(P.projLeft, compile(d.premises[0], v, D));
    }
    case TermKind::Snd: {
      const FormulaPtr& conj = d.premises[0].formula;
      ProductData P = product(interpretFormula(conj->left, v, D),
                              interpretFormula(conj->right, v, D));
      return compose(P.projRight, compile(d.premises[0], v, D));
    }
    case TermKind::Inl: {
      CoproductData C = coproduct(interpretFormula(d.formula->left, v, D),
                                  interpretFormula(d.formula->right, v, D));
      return compose(C.injLeft, compile(d.premises[0], v, D));
    }
    case TermKind::Inr: {
      CoproductData C = coproduct(interpretFormula(d.formula->left, v, D),
                                  interpretFormula(d.formula->right, v, D));
      return compose(C.injRight, compile(d.premises[0], v, D));
    }
    case TermKind::Case: {
      const FormulaPtr& disj = d.premises[0].formula;
      FinSetObj A = interpretFormula(disj->left, v, D);
      FinSetObj B = interpretFormula(disj->right, v, D);
      FinSetMap scrut = compile(d.premises[0], v, D);
      FinSetMap onLeft = compile(d.premises[1], v, D);
      FinSetMap onRight = compile(d.premises[2], v, D);
      DistributionData dist = distribution(G, A, B);
      // Γ → Γ×(A+B) → (Γ×A)+(Γ×B) → C
      return compose(copair(onLeft, onRight),
                     compose(dist.forward, pair(identity(G), scrut)));
    }
    case TermKind::Unit:
      return constantMap(G, makeObj("1", {"*"}), "*");
    case TermKind::Abort: {
      FinSetMap intoEmpty = compile(d.premises[0], v, D);
      return compose(emptyMap(interpretFormula(d.formula, v, D)), intoEmpty);
    }
  }
  failInput("MalformedExpression", "derivation node with unknown term kind");
}

}  // namespace

FinSetMap interpretTerm(const Derivation& d, const Valuation& v,
                        const FinSetObj& D) {
  guardDualizing(d, D);
  return compile(d, v, D);
}

Report verifyCurryingDiagram(const Derivation& d, const Valuation& v,
                             const FinSetObj& D,
                             const std::optional<FinSetMap>& curried) {
  if (d.rule != "Imp-intro") {
    failInput("ShapeMismatch",
              "the currying square is attached to an →-introduction, got "
              "rule '" +
                  d.rule + "'");
  }
  guardDualizing(d, D);
  auto ab = asImp(d.formula);
  const CtxSem cs = ctxSemantics(d.context, v, D);
  const FinSetObj& G = cs.prefixes.back();
  const FinSetObj A = interpretFormula(ab->first, v, D);
  const FinSetObj B = interpretFormula(ab->second, v, D);
  const ExponentialData E = exponential(A, B);

  const FinSetMap body = compile(d.premises[0], v, D);  // Γ×A → B
  FinSetMap tilde = curried.value_or(curry(body, G, A));
  if (!(tilde.dom == G) || !(tilde.cod == E.object)) {
    failInput("ShapeMismatch", "curried candidate must be a map " + G.label +
                                   " → " + E.object.label + ", got " +
                                   tilde.dom.label + " → " + tilde.cod.label);
  }

  const FinSetMap viaCurry = compose(E.ev, productMap(tilde, identity(A)));

  Report r = Report::passing("currying square");
  r.details["formula"] = printFormula(d.formula);
  r.details["contextObject"] = G.label;
  r.details["entriesCompared"] = body.table.size();
  r.details["candidateSupplied"] = curried.has_value();
  if (viaCurry == body) {
    return r;
  }
  for (std::size_t i = 0; i < body.table.size(); ++i) {
    if (viaCurry.table[i] != body.table[i]) {
      r.fail(json{{"law", "ev∘(f̃×id) = ⟦body⟧"},
                  {"element", body.dom.elements[i]},
                  {"direct", body.table[i]},
                  {"viaCurry", viaCurry.table[i]}});
      break;
    }
  }
  return r;
}

// --- proof files ------------------------------------------------------------------

ProofFile parseProofFile(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string theoremLine;
  std::string termText;
  bool sawProof = false;
  while (std::getline(in, line)) {
    if (sawProof) {
      termText += "\n" + line;
      continue;
    }
    std::string stripped = line.substr(0, line.find('#'));
    const std::size_t first = stripped.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (theoremLine.empty()) {
      theoremLine = stripped;
      continue;
    }
    const bool proofWord =
        stripped.compare(first, 5, "proof") == 0 &&
        (first + 5 == stripped.size() ||
         !(std::isalnum(static_cast<unsigned char>(stripped[first + 5])) ||
           stripped[first + 5] == '_'));
    if (proofWord) {
      termText = stripped.substr(first + 5);
      sawProof = true;
      continue;
    }
    failInput("SyntaxError",
              "expected a 'proof <term>' line, got '" + stripped + "'");
  }
  if (theoremLine.empty()) {
    failInput("SyntaxError", "missing 'theorem <name> : <formula>' line");
  }

  std::vector<Token> toks = lex(theoremLine);
  std::size_t k = 0;
  if (!(toks[k].kind == Token::Kind::Ident && toks[k].text == "theorem")) {
    syntaxError("expected 'theorem'", toks[k].pos);
  }
  ++k;
  if (toks[k].kind != Token::Kind::Ident) {
    syntaxError("expected a theorem name", toks[k].pos);
  }
  std::string name = toks[k].text;
  ++k;
  if (toks[k].kind != Token::Kind::Colon) {
    syntaxError("expected ':' after the theorem name", toks[k].pos);
  }
  ++k;
  std::vector<Token> formulaToks(toks.begin() + static_cast<long>(k),
                                 toks.end());
  FormulaPtr formula = parseFormulaTokens(formulaToks);

  if (!sawProof) {
    failInput("SyntaxError", "missing 'proof <term>' line");
  }
  TermPtr term = parseTermTokens(lex(termText));
  return ProofFile{std::move(name), std::move(formula), std::move(term)};
}

}  // namespace finsem
