#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "finsem/errors.hpp"
#include "finsem/finset.hpp"
#include "finsem/report.hpp"

namespace finsem {

// A finite category as explicit tables. Morphism equality is label equality;
// the composition table is expected to be defined exactly on composable
// pairs, keyed (g, f) for the composite g∘f.
struct FinMorphism {
  std::string label;
  std::string dom;
  std::string cod;

  bool operator==(const FinMorphism&) const = default;
};

struct FinCategory {
  std::string label;
  std::vector<std::string> objects;
  std::vector<FinMorphism> morphisms;
  std::map<std::string, std::string> identities;  // object → morphism label
  std::map<std::pair<std::string, std::string>, std::string> compose;

  bool operator==(const FinCategory&) const = default;

  bool hasObject(const std::string& o) const;
  const FinMorphism& morphism(const std::string& label) const;
  // g∘f through the table; throws CompositionMismatch / MalformedTable.
  const std::string& composeIn(const std::string& g, const std::string& f) const;
  const std::string& identityOf(const std::string& object) const;
};

struct FinFunctor {
  FinCategory source;
  FinCategory target;
  std::map<std::string, std::string> objectMap;
  std::map<std::string, std::string> morphismMap;

  bool operator==(const FinFunctor&) const = default;

  const std::string& onObject(const std::string& o) const;
  const std::string& onMorphism(const std::string& m) const;
};

struct FinNatTrans {
  FinFunctor source;
  FinFunctor target;
  std::map<std::string, std::string> components;  // source object → morphism

  bool operator==(const FinNatTrans&) const = default;
};

// --- axioms and law checks ----------------------------------------------------

// Identity neutrality and associativity over the whole table, reported with
// concrete violating witnesses. Structurally broken input (unknown labels,
// missing identities, missing composites for composable pairs, composites
// for non-composable pairs) throws MalformedTable instead of reporting.
Report checkCategoryAxioms(const FinCategory& C);

Report checkFunctor(const FinFunctor& F);

// Naturality squares η_B ∘ F(f) = G(f) ∘ η_A for every f: A→B; NotParallel
// if the two functors do not share source and target.
Report checkNatTrans(const FinNatTrans& eta);

// --- constructions --------------------------------------------------------------

// The full subcategory of finite sets on the given objects; morphism labels
// are "{dom}->{cod}:[img1,...]". The data form keeps the label ↔ FinSetMap
// correspondence so callers never parse labels back.
struct FinSetCategoryData {
  FinCategory category;
  std::map<std::string, FinSetObj> setsByLabel;
  std::map<std::string, FinSetMap> mapsByLabel;
};

FinSetCategoryData finSetAsCategoryData(const std::vector<FinSetObj>& objects,
                                        SizeBudget budget = {});
FinCategory finSetAsCategory(const std::vector<FinSetObj>& objects,
                             SizeBudget budget = {});

// The label a FinSetMap carries inside finSetAsCategory.
std::string finSetMorphismLabel(const FinSetMap& f);

// Objects and morphisms tagged "L:"/"R:"; no cross morphisms.
FinCategory disjointUnion(const FinCategory& C, const FinCategory& D);

// Objects "(c,d)", morphisms "(f,g)", componentwise composition.
FinCategory productCategory(const FinCategory& C, const FinCategory& D);

// F must be a functor out of productCategory(C, D) (ShapeMismatch
// otherwise). Verifies F(id_A, id_B) = id and F(f₂∘f₁, g₂∘g₁) =
// F(f₂,g₂)∘F(f₁,g₁) over all composable pairs.
Report checkBifunctor(const FinFunctor& F, const FinCategory& C,
                      const FinCategory& D);

FinFunctor identityFunctor(const FinCategory& C);
FinFunctor composeFunctors(const FinFunctor& G, const FinFunctor& F);

// All natural transformations F ⇒ G by exhaustive component search
// (NotParallel if F, G are not parallel).
std::vector<FinNatTrans> enumerateNatTrans(const FinFunctor& F,
                                           const FinFunctor& G);

bool isInvertible(const FinCategory& C, const std::string& morphism);

// --- pseudo-limits --------------------------------------------------------------

// A diagram of finite categories over the free category on a finite graph:
// one category per index object, one functor per generating edge.
struct DiagramGenerator {
  std::string label;
  std::string src;
  std::string dst;
};

struct Diagram {
  std::vector<std::string> indexObjects;
  std::vector<DiagramGenerator> generators;
  std::map<std::string, FinCategory> categories;  // index object → category
  std::map<std::string, FinFunctor> functors;     // generator → functor
};

// The category of pseudo-cones. An object is a family x_j of objects
// together with an invertible θ_u: x_k → D(u)(x_j) per generator u: j→k
// (labels "cone[x:{j↦c,...};θ:{u↦m,...}]"); a morphism is a family
// φ_j: x_j → y_j with θ′_u ∘ φ_k = D(u)(φ_j) ∘ θ_u (labels
// "phi[j↦f,...]"). θ extends to composite paths by
// θ_{vu} = D(v)(θ_u) ∘ θ_v; the extension is verified invertible on paths
// up to length 3.
struct PseudoLimitData {
  FinCategory category;
  std::map<std::string, FinFunctor> projections;  // index object → π_j
};

PseudoLimitData pseudoLimit(const Diagram& D, SizeBudget budget = {});

// A pseudo-cone over D from a test category: legs f_j plus an invertible
// comparison iso per generator and apex object.
struct DiagramCone {
  FinCategory apex;
  std::map<std::string, FinFunctor> legs;  // j → functor apex → D(j)
  // generator → (apex object → morphism label in D(dst)):
  //   isos[u][a] : legs[k](a) → D(u)(legs[j](a)), invertible
  std::map<std::string, std::map<std::string, std::string>> isos;
};

// Packages the cone as a functor apex → limit.category with
// π_j ∘ mediate = f_j on the nose. IncoherentCone if the iso family is not
// natural in the apex; ShapeMismatch for boundary defects.
FinFunctor mediateCone(const Diagram& D, const PseudoLimitData& limit,
                       const DiagramCone& cone);

}  // namespace finsem
