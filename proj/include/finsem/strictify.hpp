#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finsem/bicat.hpp"
#include "finsem/coherence.hpp"
#include "finsem/errors.hpp"
#include "finsem/report.hpp"

namespace finsem {

// ---------------------------------------------------------------------------
// The strictification pipeline: from a bicategory instance and a finite set
// of generating 1-cells, build the strict 2-category whose 1-cells are
// composable generator strings (concatenation is associative and unital on
// the nose, by representation), together with the pseudofunctor pair
//   F : instance → strict      generator ↦ singleton string
//   G : strict → instance      string ↦ left-fold evaluation
// and the unit/counit isomorphisms. 2-cells between strings s and t are the
// instance's own 2-cells eval(s) ⇒ eval(t), transported; the quotient that
// identifies parallel coherence cells is verified, not assumed.
// ---------------------------------------------------------------------------

struct CellString {
  std::string srcObject;
  std::string tgtObject;
  std::vector<std::string> gens;  // outer-first: [g1,…,gn] is g1∘…∘gn

  bool operator==(const CellString&) const = default;
  std::string label() const;
};

// s∘t as concatenation; ShapeMismatch unless tgt(t) = src(s).
CellString concatStrings(const CellString& s, const CellString& t);

struct StrictTwoCategory {
  std::vector<std::string> objects;
  std::vector<CellString> cells;  // all composable strings up to the bound
  std::size_t lengthBound = 0;
  json metadata;
};

template <Bicategory B>
struct StrictificationWitness {
  GenEnv<B> env;  // F on generators; G evaluates through it
  std::size_t lengthBound = 0;
  Report quotientCheck;  // parallel coherence cells agree after evaluation
  json metadata;
};

template <Bicategory B>
struct StrictifyResult {
  StrictTwoCategory strict;
  StrictificationWitness<B> witness;
};

// --- G: evaluation -----------------------------------------------------------

// Empty string ↦ id1 on its object; singleton ↦ the generator; longer
// strings fold from the left: eval([x,y,z]) = (x∘y)∘z.
template <Bicategory B>
typename B::Cell1 evalString(const B& b, const GenEnv<B>& env,
                             const CellString& s) {
  if (s.gens.empty()) {
    return b.id1(s.srcObject);
  }
  auto lookup = [&](const std::string& l) -> const typename B::Cell1& {
    auto it = env.find(l);
    if (it == env.end()) {
      detail::unknownGenerator(l);
    }
    return it->second;
  };
  auto acc = lookup(s.gens.front());
  for (std::size_t i = 1; i < s.gens.size(); ++i) {
    acc = b.hcomp1(acc, lookup(s.gens[i]));
  }
  return acc;
}

// --- F on 1-cell expressions ---------------------------------------------------

// The generator string of an expression (identities vanish).
CellString stringOf(const ExprPtr& e);

// The left-comb expression evaluating exactly like evalString: empty string
// ↦ Id node, otherwise (…(g1∘g2)∘…)∘gn.
template <Bicategory B>
ExprPtr leftCombExpr(const B& b, const GenEnv<B>& env, const CellString& s) {
  if (s.gens.empty()) {
    return makeId(s.srcObject);
  }
  auto mk = [&](const std::string& l) {
    auto it = env.find(l);
    if (it == env.end()) {
      detail::unknownGenerator(l);
    }
    return makeGenerator(l, b.src(it->second), b.dst(it->second));
  };
  ExprPtr acc = mk(s.gens.front());
  for (std::size_t i = 1; i < s.gens.size(); ++i) {
    acc = makeComp(acc, mk(s.gens[i]));
  }
  return acc;
}

// unitIso(e) : eval(e) ⇒ G(F(e)), the canonical coherence cell from the
// expression to its left comb.
template <Bicategory B>
typename B::Cell2 unitIso(const B& b, const GenEnv<B>& env,
                          const ExprPtr& e) {
  return canonicalCell(b, env, e, leftCombExpr(b, env, stringOf(e)));
}

// --- construction --------------------------------------------------------------

namespace detail {

// All bracketings of a non-empty generator list (Catalan many).
template <Bicategory B>
std::vector<ExprPtr> bracketings(const B& b, const GenEnv<B>& env,
                                 const std::vector<std::string>& gens,
                                 std::size_t lo, std::size_t hi) {
  auto mk = [&](const std::string& l) {
    const auto& c = env.at(l);
    return makeGenerator(l, b.src(c), b.dst(c));
  };
  if (hi - lo == 1) {
    return {mk(gens[lo])};
  }
  std::vector<ExprPtr> out;
  for (std::size_t cut = lo + 1; cut < hi; ++cut) {
    for (const auto& left : bracketings(b, env, gens, lo, cut)) {
      for (const auto& right : bracketings(b, env, gens, cut, hi)) {
        out.push_back(makeComp(left, right));
      }
    }
  }
  return out;
}

}  // namespace detail

template <Bicategory B>
std::vector<ExprPtr> allBracketings(const B& b, const GenEnv<B>& env,
                                    const CellString& s) {
  if (s.gens.empty()) {
    return {makeId(s.srcObject)};
  }
  return detail::bracketings(b, env, s.gens, 0, s.gens.size());
}

// Materializes the string table and verifies the quotient: for every string
// of length ≥ 3 within the bound, all rewrite paths between its outer-left
// and outer-right bracketings evaluate to one 2-cell. SizeBudgetExceeded if
// the table would exceed budget.morphisms strings.
template <Bicategory B>
StrictifyResult<B> strictifyInstance(const B& b, const GenEnv<B>& env,
                                     std::size_t lengthBound,
                                     SizeBudget budget = {}) {
  if (lengthBound < 1) {
    failInput("ShapeMismatch", "lengthBound must be at least 1");
  }
  if (env.empty()) {
    failInput("ShapeMismatch", "no generators supplied");
  }

  StrictifyResult<B> res;
  res.strict.lengthBound = lengthBound;

  std::vector<std::string> objects;
  for (const auto& [l, c] : env) {
    objects.push_back(b.src(c));
    objects.push_back(b.dst(c));
  }
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  res.strict.objects = objects;

  auto& cells = res.strict.cells;
  for (const auto& o : objects) {
    cells.push_back(CellString{o, o, {}});
  }
  std::size_t layerStart = 0;
  for (std::size_t len = 1; len <= lengthBound; ++len) {
    const std::size_t layerEnd = cells.size();
    for (std::size_t i = layerStart; i < layerEnd; ++i) {
      for (const auto& [l, c] : env) {
        // append g inside: s∘g needs tgt(g) = src(s)
        if (b.dst(c) != cells[i].srcObject) {
          continue;
        }
        CellString next{b.src(c), cells[i].tgtObject, cells[i].gens};
        next.gens.push_back(l);
        cells.push_back(std::move(next));
        if (cells.size() > budget.morphisms) {
          failBudget("SizeBudgetExceeded",
                     "string table exceeds " +
                         std::to_string(budget.morphisms) + " 1-cells");
        }
      }
    }
    layerStart = layerEnd;
  }

  res.witness.env = env;
  res.witness.lengthBound = lengthBound;
  res.witness.metadata = json{{"evaluation", "left-fold"},
                              {"unit", "empty string"},
                              {"lengthBound", lengthBound}};
  res.strict.metadata = res.witness.metadata;

  auto quotient = Report::passing("strictQuotient");
  std::size_t checked = 0;
  for (const auto& s : cells) {
    if (s.gens.size() < 3) {
      continue;
    }
    const auto exprs = allBracketings(b, env, s);
    ExprPtr rightComb = exprs.front();  // fully right-bracketed comes first
    ExprPtr leftComb = exprs.back();    // fully left-bracketed comes last
    quotient.absorb(
        checkAllPathsEqual(b, env, rightComb, leftComb, s.gens.size() - 1));
    ++checked;
  }
  quotient.details["stringsChecked"] = checked;
  res.witness.quotientCheck = std::move(quotient);
  return res;
}

// --- verification ---------------------------------------------------------------

// For every expression within the budget: unitIso is invertible with the
// right boundaries; G∘F round-trips strings exactly (so counit components
// are identities); and F sends horizontal composition to concatenation up
// to unitIso — the square
//     eval(e1∘e2) ══ unitIso ═══⇒ eval(comb(s1 ++ s2))
//         ∥                             ∥
//     unitIso(e1) ⋆ unitIso(e2)   canonical rebracketing
// commutes. Both routes of that square contain the same multiset of
// normalization moves, so it cannot see an associator twist; what it does
// falsify is the transport bookkeeping — broken interchange, inexact
// inverses, a non-deterministic hcomp2. Associator faults are caught by the
// absorbed quotient check, whose enumerated paths compare routes of
// different shapes (the pentagon comparison lives there).
template <Bicategory B>
Report checkBiequivalence(const B& b, const StrictifyResult<B>& res,
                          std::size_t exprBudget) {
  const auto& env = res.witness.env;
  auto r = Report::passing("biequivalence");
  std::size_t exprCount = 0;

  for (const auto& s : res.strict.cells) {
    if (s.gens.size() > exprBudget) {
      continue;
    }
    // counit leg: F(G(s)) must be s on the nose, with an identity cell
    const auto comb = leftCombExpr(b, env, s);
    if (!(stringOf(comb) == s)) {
      r.fail(json{{"law", "counit"},
                  {"string", s.label()},
                  {"roundTrip", stringOf(comb).label()}});
      continue;
    }
    const auto counit = unitIso(b, env, comb);
    if (!b.equal2(counit, b.id2(evalString(b, env, s)))) {
      r.fail(json{{"law", "counit is the identity"},
                  {"string", s.label()},
                  {"cell", b.label2(counit)}});
    }

    auto exprs = allBracketings(b, env, s);
    if (!s.gens.empty()) {
      // identity-decorated variants exercise the unitors
      const auto first = exprs.front();
      const auto last = exprs.back();
      exprs.push_back(makeComp(makeId(first->tgt), first));
      exprs.push_back(makeComp(last, makeId(last->src)));
    }
    for (const auto& e : exprs) {
      ++exprCount;
      const auto u = unitIso(b, env, e);
      const auto expected = evalString(b, env, stringOf(e));
      if (!b.equal1(b.dom2(u), evalExpr(b, env, e)) ||
          !b.equal1(b.cod2(u), expected)) {
        r.fail(json{{"law", "unit boundary"},
                    {"expression", renderExpr(e)},
                    {"cell", b.label2(u)}});
        continue;
      }
      const auto inv = b.inverse(u);
      if (!inv || !b.equal2(b.vcomp(*inv, u), b.id2(b.dom2(u))) ||
          !b.equal2(b.vcomp(u, *inv), b.id2(b.cod2(u)))) {
        r.fail(json{{"law", "unit invertibility"},
                    {"expression", renderExpr(e)},
                    {"cell", b.label2(u)}});
      }
    }
  }
  r.details["expressionsChecked"] = exprCount;

  // hcomp functoriality: composable pairs within the budget
  std::size_t pairCount = 0;
  for (const auto& s1 : res.strict.cells) {
    for (const auto& s2 : res.strict.cells) {
      if (s1.gens.empty() || s2.gens.empty() ||
          s1.gens.size() + s2.gens.size() > exprBudget ||
          s2.tgtObject != s1.srcObject) {
        continue;
      }
      ++pairCount;
      // outer-right bracketings sit farthest from the left comb, making the
      // direct route and the concatenation route genuinely different
      const auto e1 = allBracketings(b, env, s1).front();
      const auto e2 = allBracketings(b, env, s2).front();
      const auto joined = concatStrings(s1, s2);
      const auto lhs = unitIso(b, env, makeComp(e1, e2));
      const auto rebracket = canonicalCell(
          b, env,
          makeComp(leftCombExpr(b, env, s1), leftCombExpr(b, env, s2)),
          leftCombExpr(b, env, joined));
      const auto rhs = b.vcomp(
          rebracket, b.hcomp2(unitIso(b, env, e1), unitIso(b, env, e2)));
      if (!b.equal2(lhs, rhs)) {
        r.fail(json{{"law", "F sends composition to concatenation"},
                    {"left", s1.label()},
                    {"right", s2.label()},
                    {"direct", b.label2(lhs)},
                    {"viaConcatenation", b.label2(rhs)}});
      }
    }
  }
  r.details["compositionPairsChecked"] = pairCount;
  r.absorb(res.witness.quotientCheck);
  return r;
}

// A product (or terminal) witness in a hom-category of the instance, with
// apex and factors spanned by registered generators so that F is defined on
// them.
template <Bicategory B>
struct HomProductWitness {
  std::string kind;  // "terminal" | "product"
  typename B::Cell1 apex;
  std::optional<typename B::Cell1> left;
  std::optional<typename B::Cell1> right;
  std::optional<typename B::Cell2> projLeft;
  std::optional<typename B::Cell2> projRight;
};

// Verifies that the mediator correspondence transported by F is a bijection:
// for every materialized string X, the mediators into the apex in the source
// hom-category and in the strictification match one-to-one (and number
// exactly one per cone, as the universal property demands).
template <Bicategory B>
Report checkUniversalPreservation(const B& b, const StrictifyResult<B>& res,
                                  const HomProductWitness<B>& w) {
  const auto& env = res.witness.env;
  auto r = Report::passing("universalPreservation");

  auto genLabelOf = [&](const typename B::Cell1& c,
                        const char* role) -> std::string {
    for (const auto& [l, cell] : env) {
      if (b.equal1(cell, c)) {
        return l;
      }
    }
    failInput("MissingWitness",
              std::string(role) +
                  " is not a registered generator; F is undefined on it");
  };
  const auto apexLabel = genLabelOf(w.apex, "witness apex");
  const CellString apexString{b.src(w.apex), b.dst(w.apex), {apexLabel}};

  if (w.kind == "product") {
    if (!w.left || !w.right || !w.projLeft || !w.projRight) {
      failInput("MissingWitness",
                "product witness needs both factors and both projections");
    }
    if (!b.equal1(b.dom2(*w.projLeft), w.apex) ||
        !b.equal1(b.cod2(*w.projLeft), *w.left) ||
        !b.equal1(b.dom2(*w.projRight), w.apex) ||
        !b.equal1(b.cod2(*w.projRight), *w.right)) {
      failInput("MissingWitness",
                "projection boundaries do not match the witness apex and "
                "factors");
    }
  } else if (w.kind != "terminal") {
    failInput("MissingWitness", "unknown witness kind " + w.kind);
  }

  std::size_t tested = 0;
  for (const auto& X : res.strict.cells) {
    if (X.srcObject != b.src(w.apex) || X.tgtObject != b.dst(w.apex)) {
      continue;
    }
    ++tested;
    const auto Xcell = evalString(b, env, X);
    // strict-side hom: transported along F(X) = X and F(apex) = [apex]
    const auto XcellStrict = evalString(b, env, X);
    const auto apexStrict = evalString(b, env, apexString);
    const auto sourceHom = b.twoCells(Xcell, w.apex);
    const auto strictHom = b.twoCells(XcellStrict, apexStrict);

    if (w.kind == "terminal") {
      if (sourceHom.size() != strictHom.size()) {
        r.fail(json{{"law", "mediator correspondence"},
                    {"test", X.label()},
                    {"sourceCount", sourceHom.size()},
                    {"strictCount", strictHom.size()}});
      } else if (sourceHom.size() != 1) {
        r.fail(json{{"law", "terminal mediator uniqueness"},
                    {"test", X.label()},
                    {"mediators", sourceHom.size()}});
      }
      continue;
    }

    for (const auto& f : b.twoCells(Xcell, *w.left)) {
      for (const auto& g : b.twoCells(Xcell, *w.right)) {
        std::size_t sourceCount = 0;
        for (const auto& m : sourceHom) {
          if (b.equal2(b.vcomp(*w.projLeft, m), f) &&
              b.equal2(b.vcomp(*w.projRight, m), g)) {
            ++sourceCount;
          }
        }
        std::size_t strictCount = 0;
        for (const auto& m : strictHom) {
          if (b.equal2(b.vcomp(*w.projLeft, m), f) &&
              b.equal2(b.vcomp(*w.projRight, m), g)) {
            ++strictCount;
          }
        }
        if (sourceCount != strictCount) {
          r.fail(json{{"law", "mediator correspondence"},
                      {"test", X.label()},
                      {"cone", json{{"left", b.label2(f)},
                                    {"right", b.label2(g)}}},
                      {"sourceCount", sourceCount},
                      {"strictCount", strictCount}});
        } else if (sourceCount != 1) {
          r.fail(json{{"law", "mediator uniqueness"},
                      {"test", X.label()},
                      {"cone", json{{"left", b.label2(f)},
                                    {"right", b.label2(g)}}},
                      {"mediators", sourceCount}});
        }
      }
    }
  }
  r.details["testCells"] = tested;
  return r;
}

}  // namespace finsem
