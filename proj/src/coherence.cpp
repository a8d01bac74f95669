#include "finsem/coherence.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace finsem {

namespace {

using Kind = OneCellExpr::Kind;

void validateAtom(const std::string& s, const char* what) {
  if (s.empty()) {
    failInput("MalformedExpression", std::string(what) + " label is empty");
  }
  for (unsigned char c : s) {
    if (c == '(' || c == ')' || std::isspace(c)) {
      failInput("MalformedExpression",
                std::string(what) + " label '" + s +
                    "' contains whitespace or parentheses");
    }
  }
}

// The six rewrite patterns; nullopt when the pattern does not match.
std::optional<ExprPtr> tryRewrite(const ExprPtr& t, RewriteKind k) {
  switch (k) {
    case RewriteKind::Assoc:
      if (t->kind == Kind::Comp && t->outer->kind == Kind::Comp) {
        return makeComp(t->outer->outer, makeComp(t->outer->inner, t->inner));
      }
      return std::nullopt;
    case RewriteKind::AssocInv:
      if (t->kind == Kind::Comp && t->inner->kind == Kind::Comp) {
        return makeComp(makeComp(t->outer, t->inner->outer),
                        t->inner->inner);
      }
      return std::nullopt;
    case RewriteKind::Lunit:
      if (t->kind == Kind::Comp && t->outer->kind == Kind::Id) {
        return t->inner;
      }
      return std::nullopt;
    case RewriteKind::LunitInv:
      return makeComp(makeId(t->tgt), t);
    case RewriteKind::Runit:
      if (t->kind == Kind::Comp && t->inner->kind == Kind::Id) {
        return t->outer;
      }
      return std::nullopt;
    case RewriteKind::RunitInv:
      return makeComp(t, makeId(t->src));
  }
  return std::nullopt;
}

// Rebuilds the spine along `pos` with the subtree there rewritten; nullopt
// if the position is invalid or the pattern fails.
std::optional<ExprPtr> tryRewriteAt(const ExprPtr& e,
                                    const std::vector<int>& pos,
                                    std::size_t idx, RewriteKind k) {
  if (idx == pos.size()) {
    return tryRewrite(e, k);
  }
  if (e->kind != Kind::Comp) {
    return std::nullopt;
  }
  if (pos[idx] == 0) {
    auto sub = tryRewriteAt(e->outer, pos, idx + 1, k);
    if (!sub) {
      return std::nullopt;
    }
    return makeComp(*sub, e->inner);
  }
  if (pos[idx] == 1) {
    auto sub = tryRewriteAt(e->inner, pos, idx + 1, k);
    if (!sub) {
      return std::nullopt;
    }
    return makeComp(e->outer, *sub);
  }
  return std::nullopt;
}

void collectPositions(const ExprPtr& e, std::vector<int>& prefix,
                      std::vector<std::vector<int>>& out) {
  out.push_back(prefix);
  if (e->kind == Kind::Comp) {
    prefix.push_back(0);
    collectPositions(e->outer, prefix, out);
    prefix.back() = 1;
    collectPositions(e->inner, prefix, out);
    prefix.pop_back();
  }
}

// First applicable normalization step in post-order (children before the
// node, outer child first); at a node lunit beats runit beats assoc.
std::optional<RewriteStep> firstNormStep(const ExprPtr& e,
                                         std::vector<int>& prefix) {
  if (e->kind != Kind::Comp) {
    return std::nullopt;
  }
  prefix.push_back(0);
  if (auto s = firstNormStep(e->outer, prefix)) {
    return s;
  }
  prefix.back() = 1;
  if (auto s = firstNormStep(e->inner, prefix)) {
    return s;
  }
  prefix.pop_back();
  if (e->outer->kind == Kind::Id) {
    return RewriteStep{RewriteKind::Lunit, prefix};
  }
  if (e->inner->kind == Kind::Id) {
    return RewriteStep{RewriteKind::Runit, prefix};
  }
  if (e->outer->kind == Kind::Comp) {
    return RewriteStep{RewriteKind::Assoc, prefix};
  }
  return std::nullopt;
}

void leaves(const ExprPtr& e, std::vector<ExprPtr>& out) {
  switch (e->kind) {
    case Kind::Generator:
      out.push_back(e);
      return;
    case Kind::Id:
      return;
    case Kind::Comp:
      leaves(e->outer, out);
      leaves(e->inner, out);
      return;
  }
}

}  // namespace

ExprPtr makeGenerator(const std::string& label, const std::string& src,
                      const std::string& tgt) {
  validateAtom(label, "generator");
  auto e = std::make_shared<OneCellExpr>();
  e->kind = Kind::Generator;
  e->label = label;
  e->src = src;
  e->tgt = tgt;
  e->rendered = label;
  return e;
}

ExprPtr makeId(const std::string& object) {
  validateAtom(object, "object");
  auto e = std::make_shared<OneCellExpr>();
  e->kind = Kind::Id;
  e->object = object;
  e->src = object;
  e->tgt = object;
  e->rendered = "(id " + object + ")";
  e->idCount = 1;
  return e;
}

ExprPtr makeComp(const ExprPtr& outer, const ExprPtr& inner) {
  if (inner->tgt != outer->src) {
    failInput("ShapeMismatch", "cannot compose " + renderExpr(outer) +
                                   " after " + renderExpr(inner) +
                                   ": endpoints " + inner->tgt + " vs " +
                                   outer->src);
  }
  auto e = std::make_shared<OneCellExpr>();
  e->kind = Kind::Comp;
  e->src = inner->src;
  e->tgt = outer->tgt;
  e->outer = outer;
  e->inner = inner;
  e->rendered = "(comp " + outer->rendered + " " + inner->rendered + ")";
  e->nodeCount = 1 + outer->nodeCount + inner->nodeCount;
  e->idCount = outer->idCount + inner->idCount;
  return e;
}

std::string renderExpr(const ExprPtr& e) { return e->rendered; }

bool exprEqual(const ExprPtr& a, const ExprPtr& b) {
  return renderExpr(a) == renderExpr(b);
}

std::vector<std::string> generatorSequence(const ExprPtr& e) {
  std::vector<ExprPtr> ls;
  leaves(e, ls);
  std::vector<std::string> out;
  out.reserve(ls.size());
  for (const auto& l : ls) {
    out.push_back(l->label);
  }
  return out;
}

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> toks;
  std::string cur;
  for (unsigned char c : text) {
    if (c == '(' || c == ')') {
      if (!cur.empty()) {
        toks.push_back(cur);
        cur.clear();
      }
      toks.push_back(std::string(1, char(c)));
    } else if (std::isspace(c)) {
      if (!cur.empty()) {
        toks.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(char(c));
    }
  }
  if (!cur.empty()) {
    toks.push_back(cur);
  }
  return toks;
}

struct Parser {
  const std::vector<std::string>& toks;
  const std::map<std::string, GeneratorDecl>& gens;
  std::size_t at = 0;

  const std::string& next(const char* expected) {
    if (at >= toks.size()) {
      failInput("ParseError",
                std::string("unexpected end of expression, expected ") +
                    expected);
    }
    return toks[at++];
  }

  ExprPtr parse() {
    const std::string& tok = next("an expression");
    if (tok == ")") {
      failInput("ParseError", "unexpected ')'");
    }
    if (tok != "(") {
      auto it = gens.find(tok);
      if (it == gens.end()) {
        detail::unknownGenerator(tok);
      }
      return makeGenerator(tok, it->second.src, it->second.tgt);
    }
    const std::string& head = next("'id' or 'comp'");
    if (head == "id") {
      const std::string& obj = next("an object label");
      if (obj == "(" || obj == ")") {
        failInput("ParseError", "expected an object label after 'id'");
      }
      expectClose();
      return makeId(obj);
    }
    if (head == "comp") {
      auto outer = parse();
      auto inner = parse();
      expectClose();
      return makeComp(outer, inner);
    }
    failInput("ParseError", "unknown form '" + head + "'");
  }

  void expectClose() {
    if (next("')'") != ")") {
      failInput("ParseError", "expected ')'");
    }
  }
};

}  // namespace

ExprPtr parseExpr(const std::string& text,
                  const std::map<std::string, GeneratorDecl>& generators) {
  auto toks = tokenize(text);
  Parser p{toks, generators};
  auto e = p.parse();
  if (p.at != toks.size()) {
    failInput("ParseError", "trailing input after expression: '" +
                                toks[p.at] + "'");
  }
  return e;
}

std::string rewriteKindName(RewriteKind k) {
  switch (k) {
    case RewriteKind::Assoc:
      return "assoc";
    case RewriteKind::AssocInv:
      return "assocInv";
    case RewriteKind::Lunit:
      return "lunit";
    case RewriteKind::LunitInv:
      return "lunitInv";
    case RewriteKind::Runit:
      return "runit";
    case RewriteKind::RunitInv:
      return "runitInv";
  }
  return "?";
}

std::string renderStep(const RewriteStep& s) {
  std::ostringstream out;
  out << rewriteKindName(s.kind) << "@[";
  for (std::size_t i = 0; i < s.position.size(); ++i) {
    if (i) {
      out << ",";
    }
    out << s.position[i];
  }
  out << "]";
  return out.str();
}

ExprPtr applyStep(const ExprPtr& e, const RewriteStep& s) {
  auto next = tryRewriteAt(e, s.position, 0, s.kind);
  if (!next) {
    detail::invalidRewrite(s, e);
  }
  return *next;
}

ExprPtr normalize(const ExprPtr& e) {
  std::vector<ExprPtr> ls;
  leaves(e, ls);
  if (ls.empty()) {
    return makeId(e->src);
  }
  ExprPtr out = ls.back();
  for (std::size_t i = ls.size() - 1; i-- > 0;) {
    out = makeComp(ls[i], out);
  }
  return out;
}

std::vector<RewriteStep> normalizeSteps(const ExprPtr& e) {
  std::vector<RewriteStep> steps;
  ExprPtr cur = e;
  std::vector<int> prefix;
  while (auto s = firstNormStep(cur, prefix)) {
    prefix.clear();
    steps.push_back(*s);
    cur = applyStep(cur, *s);
  }
  if (!exprEqual(cur, normalize(e))) {
    failInput("MalformedExpression",
              "normalization disagreement on " + renderExpr(e));
  }
  return steps;
}

json TwoCellPath::toJson() const {
  json steps_ = json::array();
  for (const auto& s : steps) {
    steps_.push_back(json{{"kind", rewriteKindName(s.kind)},
                          {"position", s.position}});
  }
  return json{{"source", renderExpr(source)},
              {"target", renderExpr(target)},
              {"steps", steps_}};
}

std::vector<TwoCellPath> enumeratePaths(const ExprPtr& e1, const ExprPtr& e2,
                                        std::size_t budget) {
  if (!exprEqual(normalize(e1), normalize(e2))) {
    failInput("NotParallel", "no rewrite path can connect " +
                                 renderExpr(e1) + " to " + renderExpr(e2) +
                                 ": normal forms differ");
  }
  constexpr RewriteKind kKinds[] = {RewriteKind::Assoc, RewriteKind::AssocInv,
                                    RewriteKind::Lunit, RewriteKind::LunitInv,
                                    RewriteKind::Runit,
                                    RewriteKind::RunitInv};
  const std::string& target = e2->rendered;
  std::vector<TwoCellPath> out;
  std::vector<RewriteStep> steps;

  // Exact pruning: a step moves idCount by at most 1 and nodeCount by
  // exactly 0 or ±2, so a tree whose counts sit further from the target's
  // than the remaining steps allow cannot reach it and no recorded path is
  // lost by cutting the branch.
  const auto unreachable = [&](const ExprPtr& cur, std::size_t remaining) {
    const auto gap = [](std::size_t a, std::size_t b) {
      return a > b ? a - b : b - a;
    };
    return gap(cur->idCount, e2->idCount) > remaining ||
           gap(cur->nodeCount, e2->nodeCount) > 2 * remaining;
  };

  // A path is recorded whenever the walk stands on the target; it may leave
  // again and come back within the budget, and each distinct step sequence
  // counts once.
  auto dfs = [&](auto&& self, const ExprPtr& cur) -> void {
    if (cur->rendered == target) {
      out.push_back(TwoCellPath{e1, e2, steps});
    }
    if (steps.size() == budget) {
      return;
    }
    const std::size_t remaining = budget - steps.size();
    std::vector<std::vector<int>> positions;
    std::vector<int> prefix;
    collectPositions(cur, prefix, positions);
    for (const auto& pos : positions) {
      for (RewriteKind k : kKinds) {
        if (auto next = tryRewriteAt(cur, pos, 0, k)) {
          if (unreachable(*next, remaining - 1)) {
            continue;
          }
          steps.push_back(RewriteStep{k, pos});
          self(self, *next);
          steps.pop_back();
        }
      }
    }
  };
  dfs(dfs, e1);
  return out;
}

}  // namespace finsem
