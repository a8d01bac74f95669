#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finsem/errors.hpp"
#include "finsem/fincat.hpp"
#include "finsem/report.hpp"

namespace finsem {

// One verified universal-property witness. `structure` names the structure
// morphisms by role (piLeft/piRight, injLeft/injRight, ev, eta, nu);
// `uniquenessCertificate` records, per test object, the mediator count the
// exhaustive search observed — always exactly 1 for a returned witness.
struct UniversalWitness {
  std::string kind;
  std::string object;
  std::map<std::string, std::string> structure;
  std::map<std::string, unsigned long long> uniquenessCertificate;
  json details = json::object();

  json toJson() const {
    return json{{"kind", kind},
                {"object", object},
                {"structure", structure},
                {"uniquenessCertificate", uniquenessCertificate},
                {"details", details}};
  }
};

// All objects T with |Hom(X,T)| = 1 for every X. Deterministic object order;
// an empty list is a valid answer.
std::vector<UniversalWitness> findTerminal(const FinCategory& C);
std::vector<UniversalWitness> findInitial(const FinCategory& C);

// Every (P, piLeft, piRight) such that each (f, g) out of each test object
// has exactly one mediator. Exhaustive; SizeBudgetExceeded when the category
// is larger than the budget allows.
std::vector<UniversalWitness> findProducts(const FinCategory& C,
                                           const std::string& A,
                                           const std::string& B,
                                           SizeBudget budget = {});

std::vector<UniversalWitness> findCoproducts(const FinCategory& C,
                                             const std::string& A,
                                             const std::string& B,
                                             SizeBudget budget = {});

// Exponentials need chosen products with A: `productsWithA` maps an object O
// to a verified product witness for (O, A). Candidate carriers and test
// objects both range over exactly the objects that have an entry; an empty
// map raises MissingProducts. The certificate records which test objects
// were quantified over.
std::vector<UniversalWitness> findExponential(
    const FinCategory& C, const std::string& A, const std::string& B,
    const std::map<std::string, UniversalWitness>& productsWithA,
    SizeBudget budget = {});

// Negation against a dualizing object D, in both characterizations:
//  - "factorization": pairs (N, nu: A→N) such that every f: A→X that
//    factors through eta: A→D has exactly one u with u∘nu = f (eta is
//    enumerated unless supplied);
//  - "adjunction": objects N with |Hom(A,D)| = |Hom(1,N)| for a terminal 1,
//    skipped with a NoTerminalForAdjunctionCheck note when no terminal
//    exists.
// Witnesses carry details["characterization"] naming their class.
struct NegationSearch {
  std::vector<UniversalWitness> witnesses;
  json notes = json::array();
};

NegationSearch findNegation(const FinCategory& C, const std::string& D,
                            const std::string& A,
                            std::optional<std::string> eta = std::nullopt,
                            SizeBudget budget = {});

// Builds and verifies the structure-preserving comparison isomorphism
// between two witnesses of the same kind: passes exactly when precisely one
// invertible morphism commutes with the recorded structure. Exponential
// comparisons need the same chosen products the search used.
Report compareWitnesses(
    const FinCategory& C, const UniversalWitness& a, const UniversalWitness& b,
    const std::map<std::string, UniversalWitness>* productsWithA = nullptr);

}  // namespace finsem
