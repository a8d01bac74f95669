#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "finsem/finset.hpp"
#include "finsem/report.hpp"

namespace finsem {

// ---------------------------------------------------------------------------
// The proof-language frontend: parse propositional formulas and
// natural-deduction terms, type-check them into derivation trees, and compile
// derivations to finite-set maps — conjunction as product, disjunction as
// coproduct, implication as exponential, ⊤ as the singleton, ⊥ as the empty
// set, and ¬φ as the exponential into a dualizing object (∅ by default).
// ---------------------------------------------------------------------------

enum class FormulaKind { Atom, Top, Bot, And, Or, Imp, Not };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  std::string atom;  // Atom only
  FormulaPtr left;   // And/Or/Imp left operand; Not operand
  FormulaPtr right;  // And/Or/Imp right operand
};

FormulaPtr makeAtom(std::string name);
FormulaPtr makeTop();
FormulaPtr makeBot();
FormulaPtr makeAnd(FormulaPtr l, FormulaPtr r);
FormulaPtr makeOr(FormulaPtr l, FormulaPtr r);
FormulaPtr makeImp(FormulaPtr l, FormulaPtr r);
FormulaPtr makeNot(FormulaPtr f);

// Structural equality after rewriting ¬φ to φ→⊥ on both sides.
bool formulaEqual(const FormulaPtr& a, const FormulaPtr& b);

// Grammar: atoms [a-z][a-z0-9_]*, `top`, `bot`, `~` tightest, then `&`,
// then `|`, then `->` (right-associative), parentheses. SyntaxError carries
// the offending position.
FormulaPtr parseFormula(const std::string& text);

// Minimal-parenthesis printer; parseFormula∘printFormula is the identity.
std::string printFormula(const FormulaPtr& f);

// --- proof terms -------------------------------------------------------------

enum class TermKind {
  Var,
  Lam,
  App,
  Pair,
  Fst,
  Snd,
  Inl,
  Inr,
  Case,
  Unit,
  Abort
};

struct ProofTerm;
using TermPtr = std::shared_ptr<const ProofTerm>;

struct ProofTerm {
  TermKind kind;
  std::string name;   // Var name; Lam binder; Case left binder
  std::string name2;  // Case right binder
  TermPtr t0;         // Lam body; App function; Pair left; unary operand;
                      // Case scrutinee
  TermPtr t1;         // App argument; Pair right; Case left branch
  TermPtr t2;         // Case right branch
};

TermPtr makeVar(std::string x);
TermPtr makeLam(std::string x, TermPtr body);
TermPtr makeApp(TermPtr f, TermPtr a);
TermPtr makePair(TermPtr l, TermPtr r);
TermPtr makeFst(TermPtr t);
TermPtr makeSnd(TermPtr t);
TermPtr makeInl(TermPtr t);
TermPtr makeInr(TermPtr t);
TermPtr makeCase(TermPtr scrut, std::string xl, TermPtr l, std::string xr,
                 TermPtr r);
TermPtr makeUnit();
TermPtr makeAbort(TermPtr t);

bool termEqual(const TermPtr& a, const TermPtr& b);

// Syntax: `\x. t`, juxtaposition for application (left-associative),
// `(t, u)`, `fst t`, `snd t`, `inl t`, `inr t`, `abort t`,
// `case t of inl x => u | inr y => v`, `unit`.
TermPtr parseTerm(const std::string& text);

std::string printTerm(const TermPtr& t);

// Capture-avoiding substitution t[s/x]; colliding binders are freshened.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& s);

// --- typing -------------------------------------------------------------------

// Bindings in order of introduction; the innermost (rightmost) binding of a
// name shadows earlier ones.
using Context = std::vector<std::pair<std::string, FormulaPtr>>;

struct Derivation {
  std::string rule;
  Context context;
  TermPtr term;
  FormulaPtr formula;
  std::vector<Derivation> premises;
};

// Standard intuitionistic natural deduction, checking t against φ. ¬φ is
// treated as φ→⊥ throughout. TypeMismatch names expected and actual at the
// failing node; UnboundVariable for a variable missing from the context.
Derivation typeCheck(const Context& ctx, const TermPtr& t,
                     const FormulaPtr& phi);

// --- semantics ------------------------------------------------------------------

using Valuation = std::map<std::string, FinSetObj>;

// Atom ↦ v(atom); ⊤ ↦ {*}; ⊥ ↦ ∅; ∧ ↦ product; ∨ ↦ coproduct;
// → ↦ exponential; ¬φ ↦ ⟦φ⟧-exponential into the dualizing object D.
// MissingAtom when v is not total on the formula's atoms.
FinSetObj interpretFormula(const FormulaPtr& phi, const Valuation& v,
                           const FinSetObj& D = makeObj("0", {}));

// Compiles a derivation to one map ⟦Γ⟧ → ⟦φ⟧: contexts are iterated products
// seeded with the singleton, variables are projection chains, λ is curry,
// application is ev∘⟨f,a⟩, case goes through the distribution isomorphism,
// abort through the empty map. With a non-empty dualizing object the ¬≡→⊥
// identification used by the type checker is no longer carrier-exact, so
// derivations mentioning ¬ are rejected (DualizingMismatch) — spell the
// negation as an implication into an atom valued at D instead.
FinSetMap interpretTerm(const Derivation& d, const Valuation& v,
                        const FinSetObj& D = makeObj("0", {}));

// Recomputes both routes of the currying square for an →-introduction node:
// the compiled body against ev∘(f̃×id). `curried` substitutes a candidate
// for f̃ (fault injection); by default the freshly curried body is used.
Report verifyCurryingDiagram(const Derivation& d, const Valuation& v,
                             const FinSetObj& D = makeObj("0", {}),
                             const std::optional<FinSetMap>& curried = {});

// --- proof files ------------------------------------------------------------------

// `theorem <name> : <formula>` then `proof <term>`, comments with `#`.
struct ProofFile {
  std::string name;
  FormulaPtr formula;
  TermPtr term;
};

ProofFile parseProofFile(const std::string& text);

}  // namespace finsem
