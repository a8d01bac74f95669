#include "finsem/fincat.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace finsem {

namespace {

constexpr const char* kArrow = "↦";
constexpr std::size_t kMaxWitnesses = 32;

std::string joinWith(const std::vector<std::string>& parts,
                     const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) {
      out += sep;
    }
    out += parts[i];
  }
  return out;
}

// Adds a witness unless the report is already saturated; the saturation flag
// keeps huge failures readable without hiding that trimming happened.
void addWitness(Report& report, json witness) {
  if (report.witnesses.size() < kMaxWitnesses) {
    report.fail(std::move(witness));
  } else {
    report.pass = false;
    report.details["witnessesTruncated"] = true;
  }
}

// Category tables interned to dense integer structures. Construction throws
// MalformedTable on structural defects; law checking afterwards is pure
// index arithmetic.
struct InternedCategory {
  const FinCategory& cat;
  std::unordered_map<std::string, std::size_t> objIdx, morIdx;
  std::vector<std::size_t> dom, cod;             // per morphism
  std::vector<std::size_t> identityMor;          // per object
  std::vector<std::size_t> comp;                 // n·n dense; npos = undefined
  std::vector<std::vector<std::size_t>> byDom;   // object → morphism indices

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t at(std::size_t g, std::size_t f) const {
    return comp[g * morIdx.size() + f];
  }

  explicit InternedCategory(const FinCategory& C) : cat(C) {
    for (std::size_t i = 0; i < C.objects.size(); ++i) {
      if (!objIdx.emplace(C.objects[i], i).second) {
        failInput("MalformedTable", "duplicate object label '" + C.objects[i] +
                                        "' in category " + C.label);
      }
    }
    const std::size_t n = C.morphisms.size();
    dom.resize(n);
    cod.resize(n);
    byDom.assign(C.objects.size(), {});
    for (std::size_t i = 0; i < n; ++i) {
      const FinMorphism& m = C.morphisms[i];
      if (!morIdx.emplace(m.label, i).second) {
        failInput("MalformedTable", "duplicate morphism label '" + m.label +
                                        "' in category " + C.label);
      }
      auto d = objIdx.find(m.dom);
      auto c = objIdx.find(m.cod);
      if (d == objIdx.end() || c == objIdx.end()) {
        failInput("MalformedTable", "morphism '" + m.label +
                                        "' has unknown endpoint in category " +
                                        C.label);
      }
      dom[i] = d->second;
      cod[i] = c->second;
      byDom[d->second].push_back(i);
    }
    identityMor.assign(C.objects.size(), npos);
    for (const auto& o : C.objects) {
      auto it = C.identities.find(o);
      if (it == C.identities.end()) {
        failInput("MalformedTable",
                  "object '" + o + "' has no identity in category " + C.label);
      }
      auto m = morIdx.find(it->second);
      if (m == morIdx.end()) {
        failInput("MalformedTable", "identity of '" + o +
                                        "' names unknown morphism '" +
                                        it->second + "'");
      }
      identityMor[objIdx.at(o)] = m->second;
    }
    for (const auto& [o, m] : C.identities) {
      if (!objIdx.count(o)) {
        failInput("MalformedTable",
                  "identity listed for unknown object '" + o + "'");
      }
    }
    comp.assign(n * n, npos);
    for (const auto& [pair, h] : C.compose) {
      auto g = morIdx.find(pair.first);
      auto f = morIdx.find(pair.second);
      auto hm = morIdx.find(h);
      if (g == morIdx.end() || f == morIdx.end()) {
        failInput("MalformedTable", "composition entry (" + pair.first + "," +
                                        pair.second +
                                        ") names unknown morphisms");
      }
      if (hm == morIdx.end()) {
        failInput("MalformedTable", "composite '" + h +
                                        "' is not a listed morphism");
      }
      if (cod[f->second] != dom[g->second]) {
        failInput("MalformedTable", "composition entry (" + pair.first + "," +
                                        pair.second +
                                        ") is defined on a non-composable "
                                        "pair");
      }
      comp[g->second * n + f->second] = hm->second;
    }
    for (std::size_t f = 0; f < n; ++f) {
      for (std::size_t g : byDom[cod[f]]) {
        if (at(g, f) == npos) {
          failInput("MalformedTable",
                    "missing composite for composable pair (" +
                        C.morphisms[g].label + "," + C.morphisms[f].label +
                        ")");
        }
      }
    }
  }
};

}  // namespace

bool FinCategory::hasObject(const std::string& o) const {
  return std::find(objects.begin(), objects.end(), o) != objects.end();
}

const FinMorphism& FinCategory::morphism(const std::string& label) const {
  for (const auto& m : morphisms) {
    if (m.label == label) {
      return m;
    }
  }
  failInput("MalformedTable",
            "unknown morphism '" + label + "' in category " + this->label);
}

const std::string& FinCategory::composeIn(const std::string& g,
                                          const std::string& f) const {
  auto it = compose.find({g, f});
  if (it == compose.end()) {
    if (morphism(f).cod != morphism(g).dom) {
      failInput("CompositionMismatch", "morphisms '" + g + "' and '" + f +
                                           "' are not composable in " + label);
    }
    failInput("MalformedTable", "missing composite for (" + g + "," + f +
                                    ") in category " + label);
  }
  return it->second;
}

const std::string& FinCategory::identityOf(const std::string& object) const {
  auto it = identities.find(object);
  if (it == identities.end()) {
    failInput("MalformedTable",
              "object '" + object + "' has no identity in category " + label);
  }
  return it->second;
}

const std::string& FinFunctor::onObject(const std::string& o) const {
  auto it = objectMap.find(o);
  if (it == objectMap.end()) {
    failInput("MalformedTable", "functor has no image for object '" + o + "'");
  }
  return it->second;
}

const std::string& FinFunctor::onMorphism(const std::string& m) const {
  auto it = morphismMap.find(m);
  if (it == morphismMap.end()) {
    failInput("MalformedTable",
              "functor has no image for morphism '" + m + "'");
  }
  return it->second;
}

Report checkCategoryAxioms(const FinCategory& C) {
  InternedCategory I(C);
  const std::size_t n = C.morphisms.size();
  Report report = Report::passing("category-axioms");
  report.details["category"] = C.label;
  report.details["objects"] = C.objects.size();
  report.details["morphisms"] = n;

  // identity boundaries
  std::vector<bool> identityUsable(C.objects.size(), true);
  for (std::size_t o = 0; o < C.objects.size(); ++o) {
    std::size_t id = I.identityMor[o];
    if (I.dom[id] != o || I.cod[id] != o) {
      identityUsable[o] = false;
      addWitness(report, {{"law", "identity-boundary"},
                          {"object", C.objects[o]},
                          {"identity", C.morphisms[id].label}});
    }
  }

  // composite boundaries
  for (const auto& [pair, h] : C.compose) {
    const FinMorphism& f = C.morphisms[I.morIdx.at(pair.second)];
    const FinMorphism& g = C.morphisms[I.morIdx.at(pair.first)];
    const FinMorphism& gf = C.morphisms[I.morIdx.at(h)];
    if (gf.dom != f.dom || gf.cod != g.cod) {
      addWitness(report, {{"law", "composite-boundary"},
                          {"f", f.label},
                          {"g", g.label},
                          {"assigned", gf.label},
                          {"expectedDom", f.dom},
                          {"expectedCod", g.cod}});
    }
  }

  // identity neutrality
  for (std::size_t f = 0; f < n; ++f) {
    std::size_t idDom = I.identityMor[I.dom[f]];
    if (identityUsable[I.dom[f]] && I.at(f, idDom) != f) {
      addWitness(report, {{"law", "identity"},
                          {"side", "right"},
                          {"f", C.morphisms[f].label},
                          {"got", C.morphisms[I.at(f, idDom)].label}});
    }
    std::size_t idCod = I.identityMor[I.cod[f]];
    if (identityUsable[I.cod[f]] && I.at(idCod, f) != f) {
      addWitness(report, {{"law", "identity"},
                          {"side", "left"},
                          {"f", C.morphisms[f].label},
                          {"got", C.morphisms[I.at(idCod, f)].label}});
    }
  }

  // associativity over all composable triples
  unsigned long long triples = 0;
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g : I.byDom[I.cod[f]]) {
      for (std::size_t h : I.byDom[I.cod[g]]) {
        ++triples;
        std::size_t lhs = I.at(h, I.at(g, f));
        std::size_t rhs = I.at(I.at(h, g), f);
        // boundary defects can leave lookups undefined; they are already
        // reported above, so only genuine mismatches are added here
        if (lhs != rhs && lhs != InternedCategory::npos &&
            rhs != InternedCategory::npos) {
          addWitness(report, {{"law", "associativity"},
                              {"f", C.morphisms[f].label},
                              {"g", C.morphisms[g].label},
                              {"h", C.morphisms[h].label},
                              {"lhs", C.morphisms[lhs].label},
                              {"rhs", C.morphisms[rhs].label}});
        }
      }
    }
  }
  report.details["composableTriples"] = triples;
  return report;
}

std::string finSetMorphismLabel(const FinSetMap& f) {
  return f.dom.label + "->" + f.cod.label + ":[" + joinWith(f.table, ",") +
         "]";
}

FinSetCategoryData finSetAsCategoryData(const std::vector<FinSetObj>& objects,
                                        SizeBudget budget) {
  FinSetCategoryData data;
  std::vector<std::string> names;
  for (const auto& A : objects) {
    if (!data.setsByLabel.emplace(A.label, A).second) {
      failInput("MalformedSet",
                "duplicate set label '" + A.label + "' in category input");
    }
    names.push_back(A.label);
  }
  unsigned long long total = 0;
  for (const auto& A : objects) {
    for (const auto& B : objects) {
      auto c = mapCount(A, B, budget.morphisms);
      if (!c || (total += *c) > budget.morphisms) {
        failBudget("SizeBudgetExceeded",
                   "morphism count exceeds budget of " +
                       std::to_string(budget.morphisms) +
                       " (raise --budget-morphisms)");
      }
    }
  }
  FinCategory& cat = data.category;
  cat.label = "FinSet[" + joinWith(names, ",") + "]";
  cat.objects = names;
  for (const auto& A : objects) {
    for (const auto& B : objects) {
      for (auto& f : enumerateMaps(A, B)) {
        std::string label = finSetMorphismLabel(f);
        cat.morphisms.push_back({label, A.label, B.label});
        data.mapsByLabel.emplace(label, std::move(f));
      }
    }
    cat.identities[A.label] = finSetMorphismLabel(identity(A));
  }
  // group labels per hom-set, then fill the composition table per triple
  std::map<std::pair<std::string, std::string>, std::vector<std::string>> homs;
  for (const auto& m : cat.morphisms) {
    homs[{m.dom, m.cod}].push_back(m.label);
  }
  for (const auto& A : objects) {
    for (const auto& B : objects) {
      for (const auto& C : objects) {
        for (const auto& f : homs[{A.label, B.label}]) {
          for (const auto& g : homs[{B.label, C.label}]) {
            cat.compose[{g, f}] = finSetMorphismLabel(
                compose(data.mapsByLabel.at(g), data.mapsByLabel.at(f)));
          }
        }
      }
    }
  }
  return data;
}

FinCategory finSetAsCategory(const std::vector<FinSetObj>& objects,
                             SizeBudget budget) {
  return finSetAsCategoryData(objects, budget).category;
}

Report checkFunctor(const FinFunctor& F) {
  Report report = Report::passing("functor-laws");
  report.details["source"] = F.source.label;
  report.details["target"] = F.target.label;
  for (const auto& o : F.source.objects) {
    if (!F.target.hasObject(F.onObject(o))) {
      failInput("MalformedTable", "functor sends '" + o +
                                      "' outside the target category");
    }
  }
  for (const auto& m : F.source.morphisms) {
    const FinMorphism& img = F.target.morphism(F.onMorphism(m.label));
    if (img.dom != F.onObject(m.dom) || img.cod != F.onObject(m.cod)) {
      addWitness(report, {{"law", "boundary"},
                          {"morphism", m.label},
                          {"image", img.label},
                          {"expectedDom", F.onObject(m.dom)},
                          {"expectedCod", F.onObject(m.cod)}});
    }
  }
  for (const auto& o : F.source.objects) {
    const std::string& img = F.onMorphism(F.source.identityOf(o));
    const std::string& want = F.target.identityOf(F.onObject(o));
    if (img != want) {
      addWitness(report, {{"law", "identity"},
                          {"object", o},
                          {"image", img},
                          {"expected", want}});
    }
  }
  for (const auto& [pair, h] : F.source.compose) {
    const std::string& fg = F.onMorphism(h);
    const std::string& gImg = F.onMorphism(pair.first);
    const std::string& fImg = F.onMorphism(pair.second);
    auto it = F.target.compose.find({gImg, fImg});
    if (it == F.target.compose.end() || it->second != fg) {
      addWitness(report,
                 {{"law", "composition"},
                  {"f", pair.second},
                  {"g", pair.first},
                  {"imageOfComposite", fg},
                  {"compositeOfImages",
                   it == F.target.compose.end() ? json() : json(it->second)}});
    }
  }
  return report;
}

Report checkNatTrans(const FinNatTrans& eta) {
  const FinFunctor& F = eta.source;
  const FinFunctor& G = eta.target;
  if (F.source != G.source || F.target != G.target) {
    failInput("NotParallel",
              "natural transformation needs parallel functors");
  }
  Report report = Report::passing("naturality");
  for (const auto& A : F.source.objects) {
    auto it = eta.components.find(A);
    if (it == eta.components.end()) {
      failInput("MalformedTable", "no component at object '" + A + "'");
    }
    const FinMorphism& c = F.target.morphism(it->second);
    if (c.dom != F.onObject(A) || c.cod != G.onObject(A)) {
      addWitness(report, {{"law", "component-boundary"},
                          {"object", A},
                          {"component", c.label},
                          {"expectedDom", F.onObject(A)},
                          {"expectedCod", G.onObject(A)}});
    }
  }
  if (!report.pass) {
    return report;  // squares below would throw on broken boundaries
  }
  for (const auto& f : F.source.morphisms) {
    const std::string& lhs =
        F.target.composeIn(eta.components.at(f.cod), F.onMorphism(f.label));
    const std::string& rhs =
        F.target.composeIn(G.onMorphism(f.label), eta.components.at(f.dom));
    if (lhs != rhs) {
      addWitness(report, {{"law", "naturality"},
                          {"f", f.label},
                          {"A", f.dom},
                          {"B", f.cod},
                          {"viaF", lhs},
                          {"viaG", rhs}});
    }
  }
  report.details["squares"] = F.source.morphisms.size();
  return report;
}

FinCategory disjointUnion(const FinCategory& C, const FinCategory& D) {
  FinCategory out;
  out.label = "(" + C.label + "⊔" + D.label + ")";
  auto add = [&out](const FinCategory& side, const std::string& tag) {
    for (const auto& o : side.objects) {
      out.objects.push_back(tag + o);
    }
    for (const auto& m : side.morphisms) {
      out.morphisms.push_back({tag + m.label, tag + m.dom, tag + m.cod});
    }
    for (const auto& [o, id] : side.identities) {
      out.identities[tag + o] = tag + id;
    }
    for (const auto& [pair, h] : side.compose) {
      out.compose[{tag + pair.first, tag + pair.second}] = tag + h;
    }
  };
  add(C, "L:");
  add(D, "R:");
  return out;
}

FinCategory productCategory(const FinCategory& C, const FinCategory& D) {
  FinCategory out;
  out.label = "(" + C.label + "×" + D.label + ")";
  auto pairLabel = [](const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
  };
  for (const auto& c : C.objects) {
    for (const auto& d : D.objects) {
      out.objects.push_back(pairLabel(c, d));
      out.identities[pairLabel(c, d)] =
          pairLabel(C.identityOf(c), D.identityOf(d));
    }
  }
  for (const auto& f : C.morphisms) {
    for (const auto& g : D.morphisms) {
      out.morphisms.push_back({pairLabel(f.label, g.label),
                               pairLabel(f.dom, g.dom),
                               pairLabel(f.cod, g.cod)});
    }
  }
  for (const auto& [cf, ch] : C.compose) {
    for (const auto& [df, dh] : D.compose) {
      out.compose[{pairLabel(cf.first, df.first),
                   pairLabel(cf.second, df.second)}] = pairLabel(ch, dh);
    }
  }
  return out;
}

Report checkBifunctor(const FinFunctor& F, const FinCategory& C,
                      const FinCategory& D) {
  if (F.source != productCategory(C, D)) {
    failInput("ShapeMismatch",
              "bifunctor source is not the product category of the two "
              "given categories");
  }
  auto pairLabel = [](const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
  };
  Report report = Report::passing("bifunctor-laws");
  for (const auto& c : C.objects) {
    for (const auto& d : D.objects) {
      const std::string& img =
          F.onMorphism(pairLabel(C.identityOf(c), D.identityOf(d)));
      const std::string& want =
          F.target.identityOf(F.onObject(pairLabel(c, d)));
      if (img != want) {
        addWitness(report, {{"law", "identity"},
                            {"objectPair", pairLabel(c, d)},
                            {"image", img},
                            {"expected", want}});
      }
    }
  }
  unsigned long long pairs = 0;
  for (const auto& [cf, ch] : C.compose) {
    for (const auto& [df, dh] : D.compose) {
      ++pairs;
      const std::string& lhs = F.onMorphism(pairLabel(ch, dh));
      const std::string& rhs = F.target.composeIn(
          F.onMorphism(pairLabel(cf.first, df.first)),
          F.onMorphism(pairLabel(cf.second, df.second)));
      if (lhs != rhs) {
        addWitness(report, {{"law", "composition"},
                            {"fPair", pairLabel(cf.second, df.second)},
                            {"gPair", pairLabel(cf.first, df.first)},
                            {"imageOfComposite", lhs},
                            {"compositeOfImages", rhs}});
      }
    }
  }
  report.details["composablePairs"] = pairs;
  return report;
}

FinFunctor identityFunctor(const FinCategory& C) {
  FinFunctor F{C, C, {}, {}};
  for (const auto& o : C.objects) {
    F.objectMap[o] = o;
  }
  for (const auto& m : C.morphisms) {
    F.morphismMap[m.label] = m.label;
  }
  return F;
}

FinFunctor composeFunctors(const FinFunctor& G, const FinFunctor& F) {
  if (F.target != G.source) {
    failInput("CompositionMismatch",
              "functor composition needs matching middle category");
  }
  FinFunctor out{F.source, G.target, {}, {}};
  for (const auto& [o, img] : F.objectMap) {
    out.objectMap[o] = G.onObject(img);
  }
  for (const auto& [m, img] : F.morphismMap) {
    out.morphismMap[m] = G.onMorphism(img);
  }
  return out;
}

std::vector<FinNatTrans> enumerateNatTrans(const FinFunctor& F,
                                           const FinFunctor& G) {
  if (F.source != G.source || F.target != G.target) {
    failInput("NotParallel", "functors are not parallel");
  }
  const auto& objs = F.source.objects;
  std::vector<std::vector<std::string>> cands(objs.size());
  for (std::size_t i = 0; i < objs.size(); ++i) {
    for (const auto& m : F.target.morphisms) {
      if (m.dom == F.onObject(objs[i]) && m.cod == G.onObject(objs[i])) {
        cands[i].push_back(m.label);
      }
    }
    if (cands[i].empty()) {
      return {};
    }
  }
  std::vector<FinNatTrans> out;
  std::vector<std::size_t> slot(objs.size(), 0);
  while (true) {
    FinNatTrans eta{F, G, {}};
    for (std::size_t i = 0; i < objs.size(); ++i) {
      eta.components[objs[i]] = cands[i][slot[i]];
    }
    bool natural = true;
    for (const auto& f : F.source.morphisms) {
      if (F.target.composeIn(eta.components.at(f.cod),
                             F.onMorphism(f.label)) !=
          F.target.composeIn(G.onMorphism(f.label),
                             eta.components.at(f.dom))) {
        natural = false;
        break;
      }
    }
    if (natural) {
      out.push_back(std::move(eta));
    }
    std::size_t i = objs.size();
    while (i > 0 && ++slot[i - 1] == cands[i - 1].size()) {
      slot[--i] = 0;
    }
    if (i == 0) {
      break;
    }
  }
  return out;
}

bool isInvertible(const FinCategory& C, const std::string& morphism) {
  const FinMorphism& m = C.morphism(morphism);
  const std::string& idDom = C.identityOf(m.dom);
  const std::string& idCod = C.identityOf(m.cod);
  for (const auto& w : C.morphisms) {
    if (w.dom != m.cod || w.cod != m.dom) {
      continue;
    }
    auto back = C.compose.find({w.label, morphism});
    auto forth = C.compose.find({morphism, w.label});
    if (back != C.compose.end() && back->second == idDom &&
        forth != C.compose.end() && forth->second == idCod) {
      return true;
    }
  }
  return false;
}

namespace {

struct ConeData {
  std::map<std::string, std::string> x;      // index object → object
  std::map<std::string, std::string> theta;  // generator → morphism
};

std::string coneLabel(const Diagram& D, const ConeData& cone) {
  std::vector<std::string> xs, ts;
  for (const auto& j : D.indexObjects) {
    xs.push_back(j + kArrow + cone.x.at(j));
  }
  for (const auto& u : D.generators) {
    ts.push_back(u.label + kArrow + cone.theta.at(u.label));
  }
  return "cone[x:{" + joinWith(xs, ",") + "};θ:{" + joinWith(ts, ",") + "}]";
}

std::string familyKey(const Diagram& D,
                      const std::map<std::string, std::string>& phi) {
  std::vector<std::string> parts;
  for (const auto& j : D.indexObjects) {
    parts.push_back(j + kArrow + phi.at(j));
  }
  return joinWith(parts, ",");
}

void validateDiagram(const Diagram& D) {
  std::unordered_set<std::string> idx;
  for (const auto& j : D.indexObjects) {
    if (!idx.insert(j).second) {
      failInput("ShapeMismatch", "duplicate index object '" + j + "'");
    }
    if (!D.categories.count(j)) {
      failInput("ShapeMismatch", "no category assigned to index '" + j + "'");
    }
  }
  std::unordered_set<std::string> gens;
  for (const auto& u : D.generators) {
    if (!gens.insert(u.label).second) {
      failInput("ShapeMismatch", "duplicate generator '" + u.label + "'");
    }
    if (!idx.count(u.src) || !idx.count(u.dst)) {
      failInput("ShapeMismatch", "generator '" + u.label +
                                     "' has unknown endpoints");
    }
    auto it = D.functors.find(u.label);
    if (it == D.functors.end()) {
      failInput("ShapeMismatch",
                "no functor assigned to generator '" + u.label + "'");
    }
    if (it->second.source != D.categories.at(u.src) ||
        it->second.target != D.categories.at(u.dst)) {
      failInput("ShapeMismatch", "functor for '" + u.label +
                                     "' does not match its endpoints");
    }
    if (!checkFunctor(it->second).pass) {
      failInput("MalformedTable", "diagram functor for '" + u.label +
                                      "' violates the functor laws");
    }
  }
}

}  // namespace

PseudoLimitData pseudoLimit(const Diagram& D, SizeBudget budget) {
  validateDiagram(D);

  // enumerate object families
  std::vector<ConeData> cones;
  std::vector<std::map<std::string, std::string>> families{{}};
  for (const auto& j : D.indexObjects) {
    std::vector<std::map<std::string, std::string>> next;
    for (const auto& fam : families) {
      for (const auto& o : D.categories.at(j).objects) {
        auto f = fam;
        f[j] = o;
        next.push_back(std::move(f));
      }
    }
    families = std::move(next);
  }

  // attach invertible θ_u : x_k → D(u)(x_j) per generator
  for (const auto& fam : families) {
    std::vector<std::vector<std::string>> cands;
    bool possible = true;
    for (const auto& u : D.generators) {
      const FinCategory& catK = D.categories.at(u.dst);
      const FinFunctor& Fu = D.functors.at(u.label);
      std::vector<std::string> list;
      for (const auto& m : catK.morphisms) {
        if (m.dom == fam.at(u.dst) && m.cod == Fu.onObject(fam.at(u.src)) &&
            isInvertible(catK, m.label)) {
          list.push_back(m.label);
        }
      }
      if (list.empty()) {
        possible = false;
        break;
      }
      cands.push_back(std::move(list));
    }
    if (!possible) {
      continue;
    }
    std::vector<std::size_t> slot(cands.size(), 0);
    while (true) {
      ConeData cone;
      cone.x = fam;
      for (std::size_t i = 0; i < cands.size(); ++i) {
        cone.theta[D.generators[i].label] = cands[i][slot[i]];
      }
      cones.push_back(std::move(cone));
      if (cones.size() > budget.objects) {
        failBudget("SizeBudgetExceeded",
                   "pseudo-limit has more than " +
                       std::to_string(budget.objects) +
                       " cone objects (raise --budget-objects)");
      }
      std::size_t i = cands.size();
      while (i > 0 && ++slot[i - 1] == cands[i - 1].size()) {
        slot[--i] = 0;
      }
      if (i == 0) {
        break;
      }
    }
  }

  // θ extends to composite paths by θ_{vu} = D(v)(θ_u) ∘ θ_v; the index
  // category is free, so distinct paths never need to agree, but the
  // extension must stay invertible — verified here on paths of length ≤ 3.
  for (const auto& cone : cones) {
    struct PathState {
      std::string start, end, theta;
      std::size_t length;
    };
    std::vector<PathState> frontier;
    for (const auto& u : D.generators) {
      frontier.push_back({u.src, u.dst, cone.theta.at(u.label), 1});
    }
    for (std::size_t len = 1; len < 3; ++len) {
      std::vector<PathState> next;
      for (const auto& p : frontier) {
        if (p.length != len) {
          continue;
        }
        for (const auto& v : D.generators) {
          if (v.src != p.end) {
            continue;
          }
          const FinCategory& catEnd = D.categories.at(v.dst);
          const FinFunctor& Fv = D.functors.at(v.label);
          std::string ext = catEnd.composeIn(Fv.onMorphism(p.theta),
                                             cone.theta.at(v.label));
          if (!isInvertible(catEnd, ext)) {
            failInput("MalformedTable",
                      "θ extension along '" + v.label +
                          "' lost invertibility — diagram data inconsistent");
          }
          next.push_back({p.start, v.dst, ext, len + 1});
        }
      }
      frontier.insert(frontier.end(), next.begin(), next.end());
    }
  }

  PseudoLimitData out;
  FinCategory& L = out.category;
  L.label = "pslim";
  std::vector<std::string> labels;
  for (const auto& cone : cones) {
    labels.push_back(coneLabel(D, cone));
    L.objects.push_back(labels.back());
  }

  // morphisms: φ families with θ′_u ∘ φ_k = D(u)(φ_j) ∘ θ_u
  struct MorRecord {
    std::string label;
    std::map<std::string, std::string> phi;
  };
  std::map<std::pair<std::size_t, std::size_t>,
           std::map<std::string, std::string>>
      byPairKeyToLabel;  // (dom,cod) → familyKey → label
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, MorRecord>> mors;
  for (std::size_t a = 0; a < cones.size(); ++a) {
    for (std::size_t b = 0; b < cones.size(); ++b) {
      std::vector<std::vector<std::string>> cands;
      bool possible = true;
      for (const auto& j : D.indexObjects) {
        const FinCategory& cat = D.categories.at(j);
        std::vector<std::string> list;
        for (const auto& m : cat.morphisms) {
          if (m.dom == cones[a].x.at(j) && m.cod == cones[b].x.at(j)) {
            list.push_back(m.label);
          }
        }
        if (list.empty()) {
          possible = false;
          break;
        }
        cands.push_back(std::move(list));
      }
      if (!possible && !D.indexObjects.empty()) {
        continue;
      }
      std::vector<std::size_t> slot(cands.size(), 0);
      while (true) {
        std::map<std::string, std::string> phi;
        for (std::size_t i = 0; i < D.indexObjects.size(); ++i) {
          phi[D.indexObjects[i]] = cands[i][slot[i]];
        }
        bool commutes = true;
        for (const auto& u : D.generators) {
          const FinCategory& catK = D.categories.at(u.dst);
          const FinFunctor& Fu = D.functors.at(u.label);
          const std::string& lhs =
              catK.composeIn(cones[b].theta.at(u.label), phi.at(u.dst));
          const std::string& rhs = catK.composeIn(
              Fu.onMorphism(phi.at(u.src)), cones[a].theta.at(u.label));
          if (lhs != rhs) {
            commutes = false;
            break;
          }
        }
        if (commutes) {
          std::string key = familyKey(D, phi);
          std::string label = "phi[" + key + "]:" + std::to_string(a) +
                              kArrow + std::to_string(b);
          byPairKeyToLabel[{a, b}][key] = label;
          mors.push_back({{a, b}, {label, phi}});
          if (mors.size() > budget.morphisms) {
            failBudget("SizeBudgetExceeded",
                       "pseudo-limit has more than " +
                           std::to_string(budget.morphisms) +
                           " cone morphisms (raise --budget-morphisms)");
          }
        }
        std::size_t i = cands.size();
        while (i > 0 && ++slot[i - 1] == cands[i - 1].size()) {
          slot[--i] = 0;
        }
        if (i == 0) {
          break;
        }
      }
      if (cands.empty()) {
        break;  // no index objects: the single empty family is done
      }
    }
    if (cones.empty()) {
      break;
    }
  }
  for (const auto& [pair, rec] : mors) {
    L.morphisms.push_back({rec.label, labels[pair.first], labels[pair.second]});
  }

  // find an enumerated cone morphism by boundary pair and component family;
  // absence means the input tables were not actually categorical
  auto lookupPhi = [&byPairKeyToLabel](std::size_t a, std::size_t b,
                                       const std::string& key,
                                       const char* what) -> const std::string& {
    auto pairIt = byPairKeyToLabel.find({a, b});
    if (pairIt != byPairKeyToLabel.end()) {
      auto it = pairIt->second.find(key);
      if (it != pairIt->second.end()) {
        return it->second;
      }
    }
    failInput("MalformedTable", std::string(what) +
                                    " family is not a cone morphism — input "
                                    "tables are not categorical");
  };

  // identities
  for (std::size_t a = 0; a < cones.size(); ++a) {
    std::map<std::string, std::string> idPhi;
    for (const auto& j : D.indexObjects) {
      idPhi[j] = D.categories.at(j).identityOf(cones[a].x.at(j));
    }
    L.identities[labels[a]] = lookupPhi(a, a, familyKey(D, idPhi), "identity");
  }

  // composition, componentwise
  for (const auto& [pf, f] : mors) {
    for (const auto& [pg, g] : mors) {
      if (pg.first != pf.second) {
        continue;
      }
      std::map<std::string, std::string> comp;
      for (const auto& j : D.indexObjects) {
        comp[j] =
            D.categories.at(j).composeIn(g.phi.at(j), f.phi.at(j));
      }
      L.compose[{g.label, f.label}] =
          lookupPhi(pf.first, pg.second, familyKey(D, comp), "composite");
    }
  }

  // projections π_j
  for (const auto& j : D.indexObjects) {
    FinFunctor pi{L, D.categories.at(j), {}, {}};
    for (std::size_t a = 0; a < cones.size(); ++a) {
      pi.objectMap[labels[a]] = cones[a].x.at(j);
    }
    for (const auto& [pair, rec] : mors) {
      pi.morphismMap[rec.label] = rec.phi.at(j);
    }
    out.projections.emplace(j, std::move(pi));
  }
  return out;
}

FinFunctor mediateCone(const Diagram& D, const PseudoLimitData& limit,
                       const DiagramCone& cone) {
  validateDiagram(D);
  for (const auto& j : D.indexObjects) {
    auto it = cone.legs.find(j);
    if (it == cone.legs.end()) {
      failInput("MissingWitness", "cone has no leg at index '" + j + "'");
    }
    if (it->second.source != cone.apex ||
        it->second.target != D.categories.at(j)) {
      failInput("ShapeMismatch",
                "leg at '" + j + "' does not run from the apex to D(" + j +
                    ")");
    }
    if (!checkFunctor(it->second).pass) {
      failInput("MalformedTable",
                "cone leg at '" + j + "' violates the functor laws");
    }
  }
  for (const auto& u : D.generators) {
    const FinCategory& catK = D.categories.at(u.dst);
    const FinFunctor& Fu = D.functors.at(u.label);
    const FinFunctor& legJ = cone.legs.at(u.src);
    const FinFunctor& legK = cone.legs.at(u.dst);
    auto isoIt = cone.isos.find(u.label);
    if (isoIt == cone.isos.end()) {
      failInput("MissingWitness",
                "cone has no comparison isos for generator '" + u.label + "'");
    }
    for (const auto& a : cone.apex.objects) {
      auto mIt = isoIt->second.find(a);
      if (mIt == isoIt->second.end()) {
        failInput("MissingWitness", "no comparison iso at apex object '" + a +
                                        "' for generator '" + u.label + "'");
      }
      const FinMorphism& m = catK.morphism(mIt->second);
      if (m.dom != legK.onObject(a) ||
          m.cod != Fu.onObject(legJ.onObject(a))) {
        failInput("ShapeMismatch", "comparison iso '" + m.label +
                                       "' has wrong boundaries at apex "
                                       "object '" +
                                       a + "'");
      }
      if (!isInvertible(catK, m.label)) {
        failInput("ShapeMismatch", "comparison morphism '" + m.label +
                                       "' is not invertible");
      }
    }
    // naturality of the comparison family in the apex
    for (const auto& f : cone.apex.morphisms) {
      const std::string& lhs = catK.composeIn(isoIt->second.at(f.cod),
                                              legK.onMorphism(f.label));
      const std::string& rhs = catK.composeIn(
          Fu.onMorphism(legJ.onMorphism(f.label)), isoIt->second.at(f.dom));
      if (lhs != rhs) {
        failInput("IncoherentCone",
                  "comparison square at '" + f.label + "' over generator '" +
                      u.label + "' does not commute: " + lhs + " ≠ " + rhs);
      }
    }
  }

  FinFunctor M{cone.apex, limit.category, {}, {}};
  for (const auto& a : cone.apex.objects) {
    ConeData packed;
    for (const auto& j : D.indexObjects) {
      packed.x[j] = cone.legs.at(j).onObject(a);
    }
    for (const auto& u : D.generators) {
      packed.theta[u.label] = cone.isos.at(u.label).at(a);
    }
    std::string label = coneLabel(D, packed);
    if (!limit.category.hasObject(label)) {
      failInput("MissingWitness",
                "packaged cone object '" + label +
                    "' is absent from the computed pseudo-limit (budget too "
                    "small?)");
    }
    M.objectMap[a] = label;
  }
  for (const auto& f : cone.apex.morphisms) {
    const std::string& domCone = M.objectMap.at(f.dom);
    const std::string& codCone = M.objectMap.at(f.cod);
    const FinMorphism* found = nullptr;
    for (const auto& m : limit.category.morphisms) {
      if (m.dom != domCone || m.cod != codCone) {
        continue;
      }
      bool matches = true;
      for (const auto& j : D.indexObjects) {
        if (limit.projections.at(j).onMorphism(m.label) !=
            cone.legs.at(j).onMorphism(f.label)) {
          matches = false;
          break;
        }
      }
      if (matches) {
        found = &m;
        break;
      }
    }
    if (!found) {
      failInput("MissingWitness",
                "no cone morphism matches the image of '" + f.label + "'");
    }
    M.morphismMap[f.label] = found->label;
  }
  return M;
}

}  // namespace finsem
