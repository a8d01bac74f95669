#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace finsem {

// ---------------------------------------------------------------------------
// Finite sets with ordered, pairwise-distinct element labels. Identity is
// structural: two objects are the same object iff label and element list
// coincide. Element order is part of the object (construction order is
// authoritative), which is what makes every equation below an exact table
// comparison.
// ---------------------------------------------------------------------------
struct FinSetObj {
  std::string label;
  std::vector<std::string> elements;

  bool operator==(const FinSetObj&) const = default;
  std::size_t size() const { return elements.size(); }
};

// Total function between finite sets: table[i] is the image of
// dom.elements[i]. Equality is extensional: dom, cod, and table must all
// coincide.
struct FinSetMap {
  FinSetObj dom;
  FinSetObj cod;
  std::vector<std::string> table;

  bool operator==(const FinSetMap&) const = default;
};

// Canonical constructions return the carrier together with its structure
// maps. The canonical element encodings are:
//   product      "(a,b)"        A-major lexicographic order
//   coproduct    "inl:a","inr:b"  the A block first
//   exponential  "fn[a↦b,...]"  entries in A's element order, functions
//                               ordered lexicographically by image sequence
//                               (the last slot varies fastest)
// Carrier labels are "(A×B)", "(A+B)", "(B^A)", "(U∖A)".
struct ProductData {
  FinSetObj object;
  FinSetMap projLeft;   // π_A : A×B → A
  FinSetMap projRight;  // π_B : A×B → B
};

struct CoproductData {
  FinSetObj object;
  FinSetMap injLeft;   // ι_A : A → A+B
  FinSetMap injRight;  // ι_B : B → A+B
};

struct ExponentialData {
  FinSetObj object;  // B^A
  FinSetMap ev;      // ev : B^A×A → B,  ev(h,a) = h(a)
};

struct ComplementData {
  FinSetObj object;     // U∖A, in U's element order
  FinSetMap inclusion;  // η_A : A ↪ U
};

// Γ×(A+B) ≅ (Γ×A)+(Γ×B), both directions constructed explicitly. The
// disjunction-elimination compiler consumes this; tests verify the two maps
// are mutually inverse.
struct DistributionData {
  FinSetMap forward;
  FinSetMap backward;
};

// --- validation -------------------------------------------------------------

// Checked constructors for data arriving from outside (JSON, tests building
// deliberately broken inputs). Internal constructions are correct by
// construction and skip these.
FinSetObj makeObj(std::string label, std::vector<std::string> elements);
FinSetMap makeMap(FinSetObj dom, FinSetObj cod, std::vector<std::string> table);

// --- category structure -----------------------------------------------------

FinSetMap identity(const FinSetObj& A);

// g∘f, f applied first. CompositionMismatch unless cod(f) = dom(g) as
// objects (structural identity, not just label).
FinSetMap compose(const FinSetMap& g, const FinSetMap& f);

// The unique map from the empty set.
FinSetMap emptyMap(const FinSetObj& cod);

// The constant map X → {value ∈ cod}.
FinSetMap constantMap(const FinSetObj& X, const FinSetObj& cod,
                      const std::string& value);

// --- cartesian-closed structure ----------------------------------------------

ProductData product(const FinSetObj& A, const FinSetObj& B);

// ⟨f,g⟩ : X → A×B with π_A∘⟨f,g⟩ = f and π_B∘⟨f,g⟩ = g exactly.
// DomainMismatch unless dom(f) = dom(g).
FinSetMap pair(const FinSetMap& f, const FinSetMap& g);

CoproductData coproduct(const FinSetObj& A, const FinSetObj& B);

// [f,g] : A+B → X. CodomainMismatch unless cod(f) = cod(g).
FinSetMap copair(const FinSetMap& f, const FinSetMap& g);

ExponentialData exponential(const FinSetObj& A, const FinSetObj& B);

// f×g : A×B → A'×B', pointwise on tuple components.
FinSetMap productMap(const FinSetMap& f, const FinSetMap& g);

// curry(f) for f : X×A → B, satisfying ev∘(curry(f)×id_A) = f exactly.
//
// The one-argument form recovers X and A from the canonical tuple structure
// of dom(f) — it splits the carrier label at the top-level ×, splits each
// tuple element at a top-level comma, and then verifies the reconstruction
// by rebuilding the canonical product and requiring structural equality.
// Raw element labels containing unbalanced separators defeat the recovery;
// the verification step turns any such ambiguity into NotAProductDomain
// rather than a wrong answer. Callers that know the factors (the proof
// compiler does) use the explicit overload and skip parsing entirely.
FinSetMap curry(const FinSetMap& f);
FinSetMap curry(const FinSetMap& f, const FinSetObj& X, const FinSetObj& A);

// uncurry(g) for g : X → B^A, satisfying uncurry(g)(x,a) = g(x)(a).
//
// The one-argument form reconstructs A and B from the canonical exponential
// structure of cod(g) and verifies by rebuilding. For A = ∅ the carrier is
// the bare singleton {fn[]} whatever B was, so B is not recoverable and the
// one-argument form raises NotAnExponentialCodomain; the explicit overload
// handles that case.
FinSetMap uncurry(const FinSetMap& g);
FinSetMap uncurry(const FinSetMap& g, const FinSetObj& A, const FinSetObj& B);

// --- negation as set complement ----------------------------------------------

// U∖A for A presented as a subset of U (every element label of A must occur
// in U; otherwise NotASubset). The inclusion η_A : A ↪ U comes along as the
// negation morphism into the ambient set.
ComplementData complementNegation(const FinSetObj& A, const FinSetObj& U);

// --- distribution ------------------------------------------------------------

DistributionData distribution(const FinSetObj& G, const FinSetObj& A,
                              const FinSetObj& B);

// --- enumeration helpers ------------------------------------------------------

// |B|^|A| without overflow; nullopt if the count exceeds `cap`.
std::optional<unsigned long long> mapCount(
    const FinSetObj& A, const FinSetObj& B,
    unsigned long long cap = 1'000'000'000ull);

// All total maps A → B in canonical order (image of the last element varies
// fastest). Caller is responsible for checking mapCount first.
std::vector<FinSetMap> enumerateMaps(const FinSetObj& A, const FinSetObj& B);

// Apply a map to one element label (linear scan; MalformedTable if absent).
const std::string& apply(const FinSetMap& f, const std::string& element);

// Two-sided inverse of a bijection, or nullopt if f is not bijective.
std::optional<FinSetMap> inverseMap(const FinSetMap& f);

}  // namespace finsem
