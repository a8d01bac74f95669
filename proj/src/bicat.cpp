#include "finsem/bicat.hpp"

#include <set>
#include <sstream>

namespace finsem {

namespace {

// "x↦y, x'↦y'" over a string map, in key order
std::string renderMap(const std::map<std::string, std::string>& m) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, v] : m) {
    if (!first) {
      out << ",";
    }
    first = false;
    out << k << "↦" << v;
  }
  return out.str();
}

}  // namespace

// --- MonoidalFinSetInstance -------------------------------------------------

MonoidalFinSetInstance::MonoidalFinSetInstance(std::vector<FinSetObj> sets)
    : registered(std::move(sets)), unit(makeObj("1", {"*"})) {
  std::set<std::string> seen;
  for (const auto& s : registered) {
    if (!seen.insert(s.label).second) {
      failInput("MalformedSet",
                "duplicate registered 1-cell label: " + s.label);
    }
  }
}

MonoidalFinSetInstance::Cell1 MonoidalFinSetInstance::id1(
    const std::string& object) const {
  if (object != "•") {
    failInput("ShapeMismatch",
              "the one-object instance has no object " + object);
  }
  return unit;
}

MonoidalFinSetInstance::Cell2 MonoidalFinSetInstance::vcomp(
    const Cell2& b, const Cell2& a) const {
  if (a.cod != b.dom) {
    failInput("ShapeMismatch", "vertical composite of " + label2(b) +
                                   " after " + label2(a) + " is undefined");
  }
  return compose(b, a);
}

MonoidalFinSetInstance::Cell2 MonoidalFinSetInstance::assoc(
    const Cell1& f, const Cell1& g, const Cell1& h) const {
  const auto dom = product(product(h, g).object, f).object;
  const auto cod = product(h, product(g, f).object).object;
  // The canonical product enumerates pairs left-major, so both bracketings
  // list the triples (h,g,f) in the same lexicographic order and the
  // rebracketing bijection ((a,b),c) ↦ (a,(b,c)) is positional.
  return makeMap(dom, cod, cod.elements);
}

MonoidalFinSetInstance::Cell2 MonoidalFinSetInstance::lunit(
    const Cell1& f) const {
  const auto dom = product(unit, f).object;  // (*,x_i) sits at position i
  return makeMap(dom, f, f.elements);
}

MonoidalFinSetInstance::Cell2 MonoidalFinSetInstance::runit(
    const Cell1& f) const {
  const auto dom = product(f, unit).object;  // (x_i,*) sits at position i
  return makeMap(dom, f, f.elements);
}

// --- FinCatInstance ----------------------------------------------------------

FinCatInstance::FinCatInstance(std::vector<FinCategory> cats)
    : registered(std::move(cats)) {
  std::set<std::string> seen;
  for (const auto& c : registered) {
    if (!seen.insert(c.label).second) {
      failInput("MalformedSet", "duplicate registered category: " + c.label);
    }
  }
}

const FinCategory& FinCatInstance::object(const std::string& label) const {
  for (const auto& c : registered) {
    if (c.label == label) {
      return c;
    }
  }
  failInput("ShapeMismatch", "no registered category " + label);
}

FinCatInstance::Cell2 FinCatInstance::id2(const Cell1& F) const {
  FinNatTrans t;
  t.source = F;
  t.target = F;
  for (const auto& X : F.source.objects) {
    t.components[X] = F.target.identityOf(F.onObject(X));
  }
  return t;
}

FinCatInstance::Cell2 FinCatInstance::vcomp(const Cell2& b,
                                            const Cell2& a) const {
  if (!(a.target == b.source)) {
    failInput("ShapeMismatch", "vertical composite of " + label2(b) +
                                   " after " + label2(a) + " is undefined");
  }
  FinNatTrans t;
  t.source = a.source;
  t.target = b.target;
  const FinCategory& D = a.source.target;
  for (const auto& X : a.source.source.objects) {
    t.components[X] = D.composeIn(b.components.at(X), a.components.at(X));
  }
  return t;
}

FinCatInstance::Cell2 FinCatInstance::hcomp2(const Cell2& b,
                                             const Cell2& a) const {
  // a : F ⇒ F' over C→D, b : G ⇒ G' over D→E
  const FinFunctor& F = a.source;
  const FinFunctor& Fp = a.target;
  const FinFunctor& G = b.source;
  const FinFunctor& Gp = b.target;
  if (F.target.label != G.source.label ||
      Fp.target.label != Gp.source.label) {
    failInput("ShapeMismatch", "horizontal composite of " + label2(b) +
                                   " beside " + label2(a) + " is undefined");
  }
  FinNatTrans t;
  t.source = composeFunctors(G, F);
  t.target = composeFunctors(Gp, Fp);
  const FinCategory& E = G.target;
  for (const auto& X : F.source.objects) {
    // (b⋆a)_X = b_{F'X} ∘ G(a_X)
    t.components[X] = E.composeIn(b.components.at(Fp.onObject(X)),
                                  G.onMorphism(a.components.at(X)));
  }
  return t;
}

std::optional<FinCatInstance::Cell2> FinCatInstance::inverse(
    const Cell2& a) const {
  FinNatTrans t;
  t.source = a.target;
  t.target = a.source;
  const FinCategory& D = a.source.target;
  for (const auto& [X, comp] : a.components) {
    const FinMorphism& m = D.morphism(comp);
    bool found = false;
    for (const auto& cand : D.morphisms) {
      if (cand.dom != m.cod || cand.cod != m.dom) {
        continue;
      }
      if (D.composeIn(cand.label, comp) == D.identityOf(m.dom) &&
          D.composeIn(comp, cand.label) == D.identityOf(m.cod)) {
        t.components[X] = cand.label;
        found = true;
        break;
      }
    }
    if (!found) {
      return std::nullopt;
    }
  }
  return t;
}

std::vector<FinCatInstance::Cell2> FinCatInstance::twoCells(
    const Cell1& F, const Cell1& G) const {
  if (F.source.label != G.source.label ||
      F.target.label != G.target.label) {
    failInput("ShapeMismatch", "2-cells require parallel 1-cells, got " +
                                   label1(F) + " and " + label1(G));
  }
  return enumerateNatTrans(F, G);
}

std::string FinCatInstance::label1(const Cell1& F) const {
  return "fun{" + F.source.label + "→" + F.target.label + "}[" +
         renderMap(F.objectMap) + "]";
}

std::string FinCatInstance::label2(const Cell2& a) const {
  return "nat[" + renderMap(a.components) + "]:" + label1(a.source) + "⇒" +
         label1(a.target);
}

}  // namespace finsem
