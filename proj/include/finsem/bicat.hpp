#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finsem/errors.hpp"
#include "finsem/fincat.hpp"
#include "finsem/finset.hpp"
#include "finsem/report.hpp"

namespace finsem {

// ---------------------------------------------------------------------------
// A bicategory instance is anything exposing objects (by label), 1-cells,
// 2-cells, both compositions, and the coherence cells a/l/r. The laws below
// are universally quantified in the definition; over finite data each
// quantified equation collapses to an exact table comparison, so the checks
// take concrete cells and compare both composites verbatim. Equality of
// 2-cells is the instance's own (extensional) equality — never label text.
// ---------------------------------------------------------------------------
template <typename B>
concept Bicategory = requires(const B& b, const typename B::Cell1& f,
                              const typename B::Cell2& a,
                              const std::string& o) {
  { b.src(f) } -> std::convertible_to<std::string>;
  { b.dst(f) } -> std::convertible_to<std::string>;
  { b.equal1(f, f) } -> std::convertible_to<bool>;
  { b.id1(o) } -> std::convertible_to<typename B::Cell1>;
  { b.hcomp1(f, f) } -> std::convertible_to<typename B::Cell1>;
  { b.dom2(a) } -> std::convertible_to<typename B::Cell1>;
  { b.cod2(a) } -> std::convertible_to<typename B::Cell1>;
  { b.id2(f) } -> std::convertible_to<typename B::Cell2>;
  { b.vcomp(a, a) } -> std::convertible_to<typename B::Cell2>;
  { b.hcomp2(a, a) } -> std::convertible_to<typename B::Cell2>;
  { b.assoc(f, f, f) } -> std::convertible_to<typename B::Cell2>;
  { b.lunit(f) } -> std::convertible_to<typename B::Cell2>;
  { b.runit(f) } -> std::convertible_to<typename B::Cell2>;
  { b.inverse(a) } -> std::convertible_to<std::optional<typename B::Cell2>>;
  { b.equal2(a, a) } -> std::convertible_to<bool>;
  {
    b.twoCells(f, f)
  } -> std::convertible_to<std::vector<typename B::Cell2>>;
  { b.label1(f) } -> std::convertible_to<std::string>;
  { b.label2(a) } -> std::convertible_to<std::string>;
};

// Conventions, fixed across every instance:
//   hcomp1(g, f) = g∘f           (f applied first; g is the left factor)
//   hcomp2(β, α) = β⋆α           (β sits over the left factor)
//   vcomp(β, α)  = β·α           (α first)
//   assoc(f,g,h) = a_{f,g,h} : (h∘g)∘f ⇒ h∘(g∘f)
//   lunit(f)     = l_f : id∘f ⇒ f      runit(f) = r_f : f∘id ⇒ f

// --- one-object (monoidal) instance over finite sets -----------------------
// 1-cells are finite sets, 2-cells arbitrary maps, horizontal composition is
// the cartesian product. Associativity and unitality hold only up to the
// rebracketing/projection bijections, which is exactly what makes this the
// weak exemplar: the checks must chase those bijections, not assume them
// away.
struct MonoidalFinSetInstance {
  using Cell1 = FinSetObj;
  using Cell2 = FinSetMap;

  std::vector<FinSetObj> registered;  // the declared 1-cell alphabet
  FinSetObj unit;

  explicit MonoidalFinSetInstance(std::vector<FinSetObj> sets = {});

  std::string src(const Cell1&) const { return "•"; }
  std::string dst(const Cell1&) const { return "•"; }
  bool equal1(const Cell1& a, const Cell1& b) const { return a == b; }
  Cell1 id1(const std::string& object) const;
  Cell1 hcomp1(const Cell1& g, const Cell1& f) const {
    return product(g, f).object;
  }
  Cell1 dom2(const Cell2& a) const { return a.dom; }
  Cell1 cod2(const Cell2& a) const { return a.cod; }
  Cell2 id2(const Cell1& f) const { return makeMap(f, f, f.elements); }
  Cell2 vcomp(const Cell2& b, const Cell2& a) const;
  Cell2 hcomp2(const Cell2& b, const Cell2& a) const {
    return productMap(b, a);
  }
  Cell2 assoc(const Cell1& f, const Cell1& g, const Cell1& h) const;
  Cell2 lunit(const Cell1& f) const;
  Cell2 runit(const Cell1& f) const;
  std::optional<Cell2> inverse(const Cell2& a) const { return inverseMap(a); }
  bool equal2(const Cell2& a, const Cell2& b) const { return a == b; }
  std::vector<Cell2> twoCells(const Cell1& f, const Cell1& g) const {
    return enumerateMaps(f, g);
  }
  std::string label1(const Cell1& f) const { return f.label; }
  std::string label2(const Cell2& a) const { return finSetMorphismLabel(a); }
};

// --- strict instance: finite categories, functors, transformations ---------
// Functor composition is associative and unital on the nose, so every
// coherence accessor returns an identity 2-cell. The five checks then verify
// the strictness claim instead of assuming it.
struct FinCatInstance {
  using Cell1 = FinFunctor;
  using Cell2 = FinNatTrans;

  std::vector<FinCategory> registered;

  explicit FinCatInstance(std::vector<FinCategory> cats = {});

  const FinCategory& object(const std::string& label) const;

  std::string src(const Cell1& F) const { return F.source.label; }
  std::string dst(const Cell1& F) const { return F.target.label; }
  bool equal1(const Cell1& a, const Cell1& b) const { return a == b; }
  Cell1 id1(const std::string& object) const {
    return identityFunctor(this->object(object));
  }
  Cell1 hcomp1(const Cell1& G, const Cell1& F) const {
    return composeFunctors(G, F);
  }
  Cell1 dom2(const Cell2& a) const { return a.source; }
  Cell1 cod2(const Cell2& a) const { return a.target; }
  Cell2 id2(const Cell1& F) const;
  Cell2 vcomp(const Cell2& b, const Cell2& a) const;
  Cell2 hcomp2(const Cell2& b, const Cell2& a) const;
  Cell2 assoc(const Cell1& f, const Cell1& g, const Cell1& h) const {
    return id2(hcomp1(hcomp1(h, g), f));
  }
  Cell2 lunit(const Cell1& f) const { return id2(f); }
  Cell2 runit(const Cell1& f) const { return id2(f); }
  std::optional<Cell2> inverse(const Cell2& a) const;
  bool equal2(const Cell2& a, const Cell2& b) const { return a == b; }
  std::vector<Cell2> twoCells(const Cell1& F, const Cell1& G) const;
  std::string label1(const Cell1& F) const;
  std::string label2(const Cell2& a) const;
};

namespace detail {

template <Bicategory B>
void requireComposable1(const B& b, const typename B::Cell1& f,
                        const typename B::Cell1& g) {
  if (b.dst(f) != b.src(g)) {
    failInput("ShapeMismatch", "1-cells " + b.label1(f) + " and " +
                                   b.label1(g) + " are not composable");
  }
}

}  // namespace detail

// a_{f',g',h'} · ((γ⋆β)⋆α) = (γ⋆(β⋆α)) · a_{f,g,h}, for α: f⇒f', β: g⇒g',
// γ: h⇒h' with f, g, h composable.
template <Bicategory B>
Report checkAssociatorNaturality(const B& b, const typename B::Cell2& alpha,
                                 const typename B::Cell2& beta,
                                 const typename B::Cell2& gamma) {
  const auto f = b.dom2(alpha), fp = b.cod2(alpha);
  const auto g = b.dom2(beta), gp = b.cod2(beta);
  const auto h = b.dom2(gamma), hp = b.cod2(gamma);
  detail::requireComposable1(b, f, g);
  detail::requireComposable1(b, g, h);
  detail::requireComposable1(b, fp, gp);
  detail::requireComposable1(b, gp, hp);

  const auto lhs =
      b.vcomp(b.assoc(fp, gp, hp), b.hcomp2(b.hcomp2(gamma, beta), alpha));
  const auto rhs =
      b.vcomp(b.hcomp2(gamma, b.hcomp2(beta, alpha)), b.assoc(f, g, h));

  auto r = Report::passing("associatorNaturality");
  r.details["cells"] = {b.label2(alpha), b.label2(beta), b.label2(gamma)};
  if (!b.equal2(lhs, rhs)) {
    r.fail(json{{"law", "associator naturality"},
                {"viaAssocThenComposite", b.label2(lhs)},
                {"viaCompositeThenAssoc", b.label2(rhs)}});
  }
  return r;
}

// The two rebracketing routes from ((k∘h)∘g)∘f to k∘(h∘(g∘f)) agree.
template <Bicategory B>
Report checkPentagon(const B& b, const typename B::Cell1& f,
                     const typename B::Cell1& g, const typename B::Cell1& h,
                     const typename B::Cell1& k) {
  detail::requireComposable1(b, f, g);
  detail::requireComposable1(b, g, h);
  detail::requireComposable1(b, h, k);

  // two-step route through (k∘h)∘(g∘f)
  const auto routeA =
      b.vcomp(b.assoc(b.hcomp1(g, f), h, k), b.assoc(f, g, b.hcomp1(k, h)));
  // three-step route through (k∘(h∘g))∘f and k∘((h∘g)∘f)
  const auto routeB =
      b.vcomp(b.hcomp2(b.id2(k), b.assoc(f, g, h)),
              b.vcomp(b.assoc(f, b.hcomp1(h, g), k),
                      b.hcomp2(b.assoc(g, h, k), b.id2(f))));

  auto r = Report::passing("pentagon");
  r.details["cells"] = {b.label1(f), b.label1(g), b.label1(h), b.label1(k)};
  if (!b.equal2(routeA, routeB)) {
    r.fail(json{{"law", "pentagon"},
                {"twoStepRoute", b.label2(routeA)},
                {"threeStepRoute", b.label2(routeB)}});
  }
  return r;
}

// (id_g ⋆ l_f) · a_{f,id,g} = r_g ⋆ id_f as 2-cells (g∘id)∘f ⇒ g∘f.
template <Bicategory B>
Report checkTriangle(const B& b, const typename B::Cell1& f,
                     const typename B::Cell1& g) {
  detail::requireComposable1(b, f, g);
  const auto mid = b.id1(b.dst(f));
  const auto lhs =
      b.vcomp(b.hcomp2(b.id2(g), b.lunit(f)), b.assoc(f, mid, g));
  const auto rhs = b.hcomp2(b.runit(g), b.id2(f));

  auto r = Report::passing("triangle");
  r.details["cells"] = {b.label1(f), b.label1(g)};
  if (!b.equal2(lhs, rhs)) {
    r.fail(json{{"law", "triangle"},
                {"viaAssociator", b.label2(lhs)},
                {"viaRightUnitor", b.label2(rhs)}});
  }
  return r;
}

// (δ·γ) ⋆ (β·α) = (δ⋆β) · (γ⋆α), for α: f⇒f', β: f'⇒f'' over the source hom
// and γ: g⇒g', δ: g'⇒g'' over the target hom.
template <Bicategory B>
Report checkInterchange(const B& b, const typename B::Cell2& alpha,
                        const typename B::Cell2& beta,
                        const typename B::Cell2& gamma,
                        const typename B::Cell2& delta) {
  if (!b.equal1(b.cod2(alpha), b.dom2(beta))) {
    failInput("ShapeMismatch", "vertical composite of " + b.label2(beta) +
                                   " after " + b.label2(alpha) +
                                   " is undefined");
  }
  if (!b.equal1(b.cod2(gamma), b.dom2(delta))) {
    failInput("ShapeMismatch", "vertical composite of " + b.label2(delta) +
                                   " after " + b.label2(gamma) +
                                   " is undefined");
  }
  detail::requireComposable1(b, b.dom2(alpha), b.dom2(gamma));

  const auto lhs = b.hcomp2(b.vcomp(delta, gamma), b.vcomp(beta, alpha));
  const auto rhs = b.vcomp(b.hcomp2(delta, beta), b.hcomp2(gamma, alpha));

  auto r = Report::passing("interchange");
  r.details["cells"] = {b.label2(alpha), b.label2(beta), b.label2(gamma),
                        b.label2(delta)};
  if (!b.equal2(lhs, rhs)) {
    r.fail(json{{"law", "interchange"},
                {"verticalThenHorizontal", b.label2(lhs)},
                {"horizontalThenVertical", b.label2(rhs)}});
  }
  return r;
}

// Exhibits two-sided inverses for l_f and r_f in the hom-category.
template <Bicategory B>
Report checkUnitorInvertibility(const B& b, const typename B::Cell1& f) {
  auto r = Report::passing("unitorInvertibility");
  r.details["cell"] = b.label1(f);

  const auto examine = [&](const char* name, const typename B::Cell2& u) {
    const auto inv = b.inverse(u);
    if (!inv) {
      r.fail(json{{"law", "unitor invertibility"},
                  {"unitor", name},
                  {"cell", b.label2(u)},
                  {"reason", "no inverse exists"}});
      return;
    }
    const bool leftOk = b.equal2(b.vcomp(*inv, u), b.id2(b.dom2(u)));
    const bool rightOk = b.equal2(b.vcomp(u, *inv), b.id2(b.cod2(u)));
    if (leftOk && rightOk) {
      r.details[std::string(name) + "Inverse"] = b.label2(*inv);
    } else {
      r.fail(json{{"law", "unitor invertibility"},
                  {"unitor", name},
                  {"cell", b.label2(u)},
                  {"candidateInverse", b.label2(*inv)},
                  {"reason", "candidate is only one-sided"}});
    }
  };

  examine("left", b.lunit(f));
  examine("right", b.runit(f));
  return r;
}

}  // namespace finsem
