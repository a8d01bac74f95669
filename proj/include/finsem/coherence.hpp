#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "finsem/bicat.hpp"
#include "finsem/errors.hpp"
#include "finsem/report.hpp"

namespace finsem {

// ---------------------------------------------------------------------------
// Formal 1-cell expressions: composition trees over named generators with
// explicit identity nodes. Comp(outer, inner) reads outer∘inner — inner is
// applied first — and endpoints must match at construction. Expressions are
// immutable and shared; equality is structural (via the rendered
// s-expression, which is injective on well-formed labels).
// ---------------------------------------------------------------------------
struct OneCellExpr;
using ExprPtr = std::shared_ptr<const OneCellExpr>;

struct OneCellExpr {
  enum class Kind { Generator, Id, Comp };

  Kind kind;
  std::string label;   // generator name           (Kind::Generator)
  std::string object;  // the object an Id sits on (Kind::Id)
  std::string src;
  std::string tgt;
  ExprPtr outer;  // Comp children
  ExprPtr inner;
  // cached at construction: the rendered s-expression and the node/Id
  // counts the path enumerator prunes on
  std::string rendered;
  std::size_t nodeCount = 1;
  std::size_t idCount = 0;
};

ExprPtr makeGenerator(const std::string& label, const std::string& src,
                      const std::string& tgt);
ExprPtr makeId(const std::string& object);
// ShapeMismatch unless inner.tgt = outer.src.
ExprPtr makeComp(const ExprPtr& outer, const ExprPtr& inner);

// "(comp (comp h g) f)", "(id •)", "f"
std::string renderExpr(const ExprPtr& e);
bool exprEqual(const ExprPtr& a, const ExprPtr& b);

// Left-to-right sequence of generator leaves (outer first).
std::vector<std::string> generatorSequence(const ExprPtr& e);

struct GeneratorDecl {
  std::string src;
  std::string tgt;
};

// S-expression parser over declared generator atoms. ParseError on bad
// syntax, UnknownGenerator on undeclared atoms, ShapeMismatch on
// non-composable comp nodes.
ExprPtr parseExpr(const std::string& text,
                  const std::map<std::string, GeneratorDecl>& generators);

// --- rewriting --------------------------------------------------------------
// A step rewrites the subtree at `position` (0 = outer child, 1 = inner):
//   assoc     (h∘g)∘f → h∘(g∘f)        assocInv  the reverse
//   lunit     id∘f → f                 lunitInv  f → id∘f
//   runit     f∘id → f                 runitInv  f → f∘id
enum class RewriteKind { Assoc, AssocInv, Lunit, LunitInv, Runit, RunitInv };

std::string rewriteKindName(RewriteKind k);

struct RewriteStep {
  RewriteKind kind;
  std::vector<int> position;

  bool operator==(const RewriteStep&) const = default;
};

std::string renderStep(const RewriteStep& s);  // "assoc@[0,1]"

// InvalidRewrite when the pattern does not match at the position.
ExprPtr applyStep(const ExprPtr& e, const RewriteStep& s);

// The unique right-associated, identity-free normal form (a single Id node
// if the expression has no generators). Idempotent; preserves the generator
// sequence.
ExprPtr normalize(const ExprPtr& e);

// The deterministic step list from e to normalize(e): positions are scanned
// innermost-first (post-order, outer child before inner), and at a position
// lunit is preferred over runit over assoc. Each step peels an identity or
// rotates a left bracket, so the list is finite and canonical.
std::vector<RewriteStep> normalizeSteps(const ExprPtr& e);

struct TwoCellPath {
  ExprPtr source;
  ExprPtr target;
  std::vector<RewriteStep> steps;

  json toJson() const;
};

// All rewrite paths source→target of length ≤ budget, in deterministic DFS
// order (positions preorder, kinds in declaration order). A path is recorded
// every time the walk stands on the target, so paths may pass through it and
// return; the empty path appears iff the endpoints are equal. NotParallel
// when the normal forms differ (no rewrite path can exist).
std::vector<TwoCellPath> enumeratePaths(const ExprPtr& e1, const ExprPtr& e2,
                                        std::size_t budget);

// --- evaluation into an instance ---------------------------------------------

template <Bicategory B>
using GenEnv = std::map<std::string, typename B::Cell1>;

namespace detail {
[[noreturn]] inline void unknownGenerator(const std::string& label) {
  failInput("UnknownGenerator",
            "expression uses undeclared generator " + label);
}
[[noreturn]] inline void invalidRewrite(const RewriteStep& s,
                                        const ExprPtr& e) {
  failInput("InvalidRewrite", renderStep(s) + " does not apply to " +
                                  renderExpr(e));
}
[[noreturn]] inline void noInverse(const std::string& what) {
  failInput("MissingWitness",
            std::string("the instance's ") + what +
                " has no two-sided inverse; coherence cells must be "
                "invertible");
}
}  // namespace detail

template <Bicategory B>
typename B::Cell1 evalExpr(const B& b, const GenEnv<B>& env,
                           const ExprPtr& e) {
  switch (e->kind) {
    case OneCellExpr::Kind::Generator: {
      auto it = env.find(e->label);
      if (it == env.end()) {
        detail::unknownGenerator(e->label);
      }
      return it->second;
    }
    case OneCellExpr::Kind::Id:
      return b.id1(e->object);
    case OneCellExpr::Kind::Comp:
      return b.hcomp1(evalExpr(b, env, e->outer), evalExpr(b, env, e->inner));
  }
  failInput("MalformedExpression", "unreachable expression kind");
}

namespace detail {

template <Bicategory B>
typename B::Cell2 invertOrFail(const B& b, const typename B::Cell2& c,
                               const char* what) {
  auto inv = b.inverse(c);
  if (!inv) {
    noInverse(what);
  }
  return *inv;
}

// The coherence 2-cell for one step, whiskered out through the context.
template <Bicategory B>
typename B::Cell2 evalStepAt(const B& b, const GenEnv<B>& env,
                             const ExprPtr& e, const RewriteStep& s,
                             std::size_t idx) {
  using K = OneCellExpr::Kind;
  if (idx < s.position.size()) {
    if (e->kind != K::Comp) {
      invalidRewrite(s, e);
    }
    if (s.position[idx] == 0) {
      auto sub = evalStepAt(b, env, e->outer, s, idx + 1);
      return b.hcomp2(sub, b.id2(evalExpr(b, env, e->inner)));
    }
    if (s.position[idx] == 1) {
      auto sub = evalStepAt(b, env, e->inner, s, idx + 1);
      return b.hcomp2(b.id2(evalExpr(b, env, e->outer)), sub);
    }
    invalidRewrite(s, e);
  }
  switch (s.kind) {
    case RewriteKind::Assoc: {
      if (e->kind != K::Comp || e->outer->kind != K::Comp) {
        invalidRewrite(s, e);
      }
      return b.assoc(evalExpr(b, env, e->inner),
                     evalExpr(b, env, e->outer->inner),
                     evalExpr(b, env, e->outer->outer));
    }
    case RewriteKind::AssocInv: {
      if (e->kind != K::Comp || e->inner->kind != K::Comp) {
        invalidRewrite(s, e);
      }
      auto cell = b.assoc(evalExpr(b, env, e->inner->inner),
                          evalExpr(b, env, e->inner->outer),
                          evalExpr(b, env, e->outer));
      return invertOrFail(b, cell, "associator");
    }
    case RewriteKind::Lunit: {
      if (e->kind != K::Comp || e->outer->kind != K::Id) {
        invalidRewrite(s, e);
      }
      return b.lunit(evalExpr(b, env, e->inner));
    }
    case RewriteKind::LunitInv:
      return invertOrFail(b, b.lunit(evalExpr(b, env, e)), "left unitor");
    case RewriteKind::Runit: {
      if (e->kind != K::Comp || e->inner->kind != K::Id) {
        invalidRewrite(s, e);
      }
      return b.runit(evalExpr(b, env, e->outer));
    }
    case RewriteKind::RunitInv:
      return invertOrFail(b, b.runit(evalExpr(b, env, e)), "right unitor");
  }
  failInput("MalformedExpression", "unreachable rewrite kind");
}

}  // namespace detail

template <Bicategory B>
typename B::Cell2 evalStep(const B& b, const GenEnv<B>& env, const ExprPtr& e,
                           const RewriteStep& s) {
  return detail::evalStepAt(b, env, e, s, 0);
}

// Composite 2-cell eval(source) ⇒ eval(target) along the path's steps.
template <Bicategory B>
typename B::Cell2 evalPath(const B& b, const GenEnv<B>& env,
                           const TwoCellPath& path) {
  ExprPtr cur = path.source;
  auto cell = b.id2(evalExpr(b, env, cur));
  for (const auto& s : path.steps) {
    cell = b.vcomp(evalStep(b, env, cur, s), cell);
    cur = applyStep(cur, s);
  }
  if (!exprEqual(cur, path.target)) {
    failInput("InvalidRewrite", "path ends at " + renderExpr(cur) +
                                    ", not its declared target " +
                                    renderExpr(path.target));
  }
  return cell;
}

// The canonical invertible 2-cell eval(e1) ⇒ eval(e2): both expressions are
// walked to the shared normal form along their deterministic normalization
// paths, and the e2 leg is inverted. NotParallel when the normal forms
// differ.
template <Bicategory B>
typename B::Cell2 canonicalCell(const B& b, const GenEnv<B>& env,
                                const ExprPtr& e1, const ExprPtr& e2) {
  const auto n1 = normalize(e1);
  const auto n2 = normalize(e2);
  if (!exprEqual(n1, n2)) {
    failInput("NotParallel", "expressions normalize differently: " +
                                 renderExpr(n1) + " vs " + renderExpr(n2));
  }
  const auto down = evalPath(b, env, TwoCellPath{e1, n1, normalizeSteps(e1)});
  const auto up = evalPath(b, env, TwoCellPath{e2, n2, normalizeSteps(e2)});
  return b.vcomp(detail::invertOrFail(b, up, "normalization leg"), down);
}

// Evaluates every enumerated path and demands one value. FAIL carries the
// first differing pair of step lists; BudgetZeroPaths when the budget admits
// no path at all.
template <Bicategory B>
Report checkAllPathsEqual(const B& b, const GenEnv<B>& env, const ExprPtr& e1,
                          const ExprPtr& e2, std::size_t budget) {
  const auto paths = enumeratePaths(e1, e2, budget);
  if (paths.empty()) {
    failBudget("BudgetZeroPaths",
               "no rewrite path within " + std::to_string(budget) +
                   " steps connects " + renderExpr(e1) + " to " +
                   renderExpr(e2));
  }
  auto r = Report::passing("allPathsEqual");
  r.details["source"] = renderExpr(e1);
  r.details["target"] = renderExpr(e2);
  r.details["budget"] = budget;
  r.details["pathCount"] = paths.size();

  const auto first = evalPath(b, env, paths.front());
  for (std::size_t i = 1; i < paths.size(); ++i) {
    const auto value = evalPath(b, env, paths[i]);
    if (!b.equal2(value, first)) {
      r.fail(json{{"law", "all composition paths agree"},
                  {"pathA", paths.front().toJson()["steps"]},
                  {"pathB", paths[i].toJson()["steps"]},
                  {"valueA", b.label2(first)},
                  {"valueB", b.label2(value)}});
      return r;
    }
  }
  return r;
}

}  // namespace finsem
