#include "finsem/uprop.hpp"

#include <unordered_map>

namespace finsem {

namespace {

// Dense integer view of a category for the inner search loops. Structural
// defects throw MalformedTable; law checking is checkCategoryAxioms' job
// (the searches assume a valid category).
struct Dense {
  const FinCategory& C;
  std::unordered_map<std::string, int> objIdx, morIdx;
  std::vector<int> dom, cod;
  std::vector<int> comp;                        // n·n, -1 = undefined
  std::vector<std::vector<std::vector<int>>> homs;  // [dom][cod] → morphisms
  int nObj = 0, nMor = 0;

  explicit Dense(const FinCategory& cat) : C(cat) {
    nObj = static_cast<int>(C.objects.size());
    nMor = static_cast<int>(C.morphisms.size());
    for (int i = 0; i < nObj; ++i) {
      objIdx.emplace(C.objects[i], i);
    }
    dom.resize(nMor);
    cod.resize(nMor);
    homs.assign(nObj, std::vector<std::vector<int>>(nObj));
    for (int i = 0; i < nMor; ++i) {
      const FinMorphism& m = C.morphisms[i];
      auto d = objIdx.find(m.dom);
      auto c = objIdx.find(m.cod);
      if (d == objIdx.end() || c == objIdx.end()) {
        failInput("MalformedTable",
                  "morphism '" + m.label + "' has unknown endpoints");
      }
      if (!morIdx.emplace(m.label, i).second) {
        failInput("MalformedTable", "duplicate morphism '" + m.label + "'");
      }
      dom[i] = d->second;
      cod[i] = c->second;
      homs[d->second][c->second].push_back(i);
    }
    comp.assign(static_cast<std::size_t>(nMor) * nMor, -1);
    for (const auto& [gf, h] : C.compose) {
      auto g = morIdx.find(gf.first);
      auto f = morIdx.find(gf.second);
      auto hm = morIdx.find(h);
      if (g == morIdx.end() || f == morIdx.end() || hm == morIdx.end()) {
        failInput("MalformedTable", "composition entry (" + gf.first + "," +
                                        gf.second + ") names unknown "
                                        "morphisms");
      }
      comp[static_cast<std::size_t>(g->second) * nMor + f->second] =
          hm->second;
    }
  }

  int at(int g, int f) const {
    int h = comp[static_cast<std::size_t>(g) * nMor + f];
    if (h < 0) {
      failInput("MalformedTable",
                "missing composite for (" + C.morphisms[g].label + "," +
                    C.morphisms[f].label + ") — run the axiom check first");
    }
    return h;
  }

  int object(const std::string& label) const {
    auto it = objIdx.find(label);
    if (it == objIdx.end()) {
      failInput("ShapeMismatch",
                "'" + label + "' is not an object of " + C.label);
    }
    return it->second;
  }

  bool invertible(int m) const {
    for (int w : homs[cod[m]][dom[m]]) {
      if (C.morphisms[at(w, m)].label == C.identityOf(C.objects[dom[m]]) &&
          C.morphisms[at(m, w)].label == C.identityOf(C.objects[cod[m]])) {
        return true;
      }
    }
    return false;
  }
};

void guardBudget(const FinCategory& C, SizeBudget budget) {
  if (C.objects.size() > budget.objects ||
      C.morphisms.size() > budget.morphisms) {
    failBudget("SizeBudgetExceeded",
               "category has " + std::to_string(C.objects.size()) +
                   " objects / " + std::to_string(C.morphisms.size()) +
                   " morphisms, over the search budget of " +
                   std::to_string(budget.objects) + "/" +
                   std::to_string(budget.morphisms));
  }
}

}  // namespace

std::vector<UniversalWitness> findTerminal(const FinCategory& C) {
  Dense d(C);
  std::vector<UniversalWitness> out;
  for (int t = 0; t < d.nObj; ++t) {
    UniversalWitness w;
    w.kind = "terminal";
    w.object = C.objects[t];
    bool ok = true;
    for (int x = 0; x < d.nObj; ++x) {
      if (d.homs[x][t].size() != 1) {
        ok = false;
        break;
      }
      w.uniquenessCertificate[C.objects[x]] = 1;
    }
    if (ok) {
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<UniversalWitness> findInitial(const FinCategory& C) {
  Dense d(C);
  std::vector<UniversalWitness> out;
  for (int i = 0; i < d.nObj; ++i) {
    UniversalWitness w;
    w.kind = "initial";
    w.object = C.objects[i];
    bool ok = true;
    for (int x = 0; x < d.nObj; ++x) {
      if (d.homs[i][x].size() != 1) {
        ok = false;
        break;
      }
      w.uniquenessCertificate[C.objects[x]] = 1;
    }
    if (ok) {
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<UniversalWitness> findProducts(const FinCategory& C,
                                           const std::string& A,
                                           const std::string& B,
                                           SizeBudget budget) {
  guardBudget(C, budget);
  Dense d(C);
  int a = d.object(A), b = d.object(B);
  std::vector<UniversalWitness> out;
  for (int p = 0; p < d.nObj; ++p) {
    for (int pa : d.homs[p][a]) {
      for (int pb : d.homs[p][b]) {
        bool ok = true;
        UniversalWitness w;
        for (int x = 0; x < d.nObj && ok; ++x) {
          for (int f : d.homs[x][a]) {
            for (int g : d.homs[x][b]) {
              int mediators = 0;
              for (int m : d.homs[x][p]) {
                if (d.at(pa, m) == f && d.at(pb, m) == g) {
                  ++mediators;
                }
              }
              if (mediators != 1) {
                ok = false;
                break;
              }
            }
            if (!ok) {
              break;
            }
          }
          if (ok) {
            w.uniquenessCertificate[C.objects[x]] = 1;
          }
        }
        if (ok) {
          w.kind = "product";
          w.object = C.objects[p];
          w.structure = {{"piLeft", C.morphisms[pa].label},
                         {"piRight", C.morphisms[pb].label}};
          w.details = {{"factors", json::array({A, B})}};
          out.push_back(std::move(w));
        }
      }
    }
  }
  return out;
}

std::vector<UniversalWitness> findCoproducts(const FinCategory& C,
                                             const std::string& A,
                                             const std::string& B,
                                             SizeBudget budget) {
  guardBudget(C, budget);
  Dense d(C);
  int a = d.object(A), b = d.object(B);
  std::vector<UniversalWitness> out;
  for (int c = 0; c < d.nObj; ++c) {
    for (int ia : d.homs[a][c]) {
      for (int ib : d.homs[b][c]) {
        bool ok = true;
        UniversalWitness w;
        for (int x = 0; x < d.nObj && ok; ++x) {
          for (int f : d.homs[a][x]) {
            for (int g : d.homs[b][x]) {
              int mediators = 0;
              for (int m : d.homs[c][x]) {
                if (d.at(m, ia) == f && d.at(m, ib) == g) {
                  ++mediators;
                }
              }
              if (mediators != 1) {
                ok = false;
                break;
              }
            }
            if (!ok) {
              break;
            }
          }
          if (ok) {
            w.uniquenessCertificate[C.objects[x]] = 1;
          }
        }
        if (ok) {
          w.kind = "coproduct";
          w.object = C.objects[c];
          w.structure = {{"injLeft", C.morphisms[ia].label},
                         {"injRight", C.morphisms[ib].label}};
          w.details = {{"factors", json::array({A, B})}};
          out.push_back(std::move(w));
        }
      }
    }
  }
  return out;
}

namespace {

// The chosen product witness for (O, A), unpacked to dense indices.
struct ChosenProduct {
  int carrier;
  int piLeft;   // carrier → O
  int piRight;  // carrier → A
};

ChosenProduct unpackProduct(const Dense& d, const std::string& forObject,
                            int a, const UniversalWitness& w) {
  if (w.kind != "product") {
    failInput("MissingProducts", "witness supplied for '" + forObject +
                                     "' is a " + w.kind +
                                     ", not a product");
  }
  auto pl = d.morIdx.find(w.structure.count("piLeft")
                              ? w.structure.at("piLeft")
                              : std::string());
  auto pr = d.morIdx.find(w.structure.count("piRight")
                              ? w.structure.at("piRight")
                              : std::string());
  auto car = d.objIdx.find(w.object);
  if (pl == d.morIdx.end() || pr == d.morIdx.end() ||
      car == d.objIdx.end()) {
    failInput("MissingProducts", "product witness for '" + forObject +
                                     "' names morphisms outside the "
                                     "category");
  }
  ChosenProduct cp{car->second, pl->second, pr->second};
  if (d.dom[cp.piLeft] != cp.carrier || d.dom[cp.piRight] != cp.carrier ||
      d.cod[cp.piLeft] != d.object(forObject) || d.cod[cp.piRight] != a) {
    failInput("MissingProducts", "product witness for '" + forObject +
                                     "' has wrong projection boundaries");
  }
  return cp;
}

// The unique h with piLeft∘h = m∘(other piLeft), piRight∘h = other piRight:
// the pairing ⟨m∘p1, p2⟩ through the chosen product. Exactly one must exist
// when the supplied witnesses are genuine products.
int pairingMediator(const Dense& d, const ChosenProduct& from,
                    const ChosenProduct& to, int m) {
  int found = -1;
  for (int h : d.homs[from.carrier][to.carrier]) {
    if (d.at(to.piLeft, h) == d.at(m, from.piLeft) &&
        d.at(to.piRight, h) == from.piRight) {
      if (found >= 0) {
        failInput("MissingProducts",
                  "chosen product witness admits two pairing mediators — "
                  "it is not a product");
      }
      found = h;
    }
  }
  if (found < 0) {
    failInput("MissingProducts",
              "chosen product witness admits no pairing mediator — "
              "it is not a product");
  }
  return found;
}

}  // namespace

std::vector<UniversalWitness> findExponential(
    const FinCategory& C, const std::string& A, const std::string& B,
    const std::map<std::string, UniversalWitness>& productsWithA,
    SizeBudget budget) {
  guardBudget(C, budget);
  if (productsWithA.empty()) {
    failInput("MissingProducts",
              "exponential search needs chosen products with '" + A + "'");
  }
  Dense d(C);
  int a = d.object(A), b = d.object(B);
  std::map<int, ChosenProduct> chosen;  // object index → product data
  for (const auto& [label, w] : productsWithA) {
    chosen.emplace(d.object(label), unpackProduct(d, label, a, w));
  }
  std::vector<UniversalWitness> out;
  for (const auto& [e, pe] : chosen) {
    for (int ev : d.homs[pe.carrier][b]) {
      bool ok = true;
      UniversalWitness w;
      for (const auto& [x, px] : chosen) {
        if (!ok) {
          break;
        }
        for (int f : d.homs[px.carrier][b]) {
          int mediators = 0;
          for (int m : d.homs[x][e]) {
            int h = pairingMediator(d, px, pe, m);  // m × id_A
            if (d.at(ev, h) == f) {
              ++mediators;
            }
          }
          if (mediators != 1) {
            ok = false;
            break;
          }
        }
        if (ok) {
          w.uniquenessCertificate[C.objects[x]] = 1;
        }
      }
      if (ok) {
        w.kind = "exponential";
        w.object = C.objects[e];
        w.structure = {{"ev", C.morphisms[ev].label}};
        w.details = {{"exponent", A},
                     {"base", B},
                     {"productCarrier", C.objects[pe.carrier]}};
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

NegationSearch findNegation(const FinCategory& C, const std::string& D,
                            const std::string& A,
                            std::optional<std::string> eta,
                            SizeBudget budget) {
  guardBudget(C, budget);
  Dense dense(C);
  int dObj = dense.object(D), a = dense.object(A);
  NegationSearch out;

  // factorization characterization: enumerate eta unless one was supplied
  std::vector<int> etas;
  if (eta) {
    auto it = dense.morIdx.find(*eta);
    if (it == dense.morIdx.end() || dense.dom[it->second] != a ||
        dense.cod[it->second] != dObj) {
      failInput("ShapeMismatch",
                "supplied eta is not a morphism " + A + " → " + D);
    }
    etas.push_back(it->second);
  } else {
    etas = dense.homs[a][dObj];
  }
  for (int e : etas) {
    for (int n = 0; n < dense.nObj; ++n) {
      for (int nu : dense.homs[a][n]) {
        bool ok = true;
        UniversalWitness w;
        for (int x = 0; x < dense.nObj && ok; ++x) {
          bool sawFactoring = false;
          for (int f : dense.homs[a][x]) {
            bool factors = false;
            for (int wmor : dense.homs[dObj][x]) {
              if (dense.at(wmor, e) == f) {
                factors = true;
                break;
              }
            }
            if (!factors) {
              continue;
            }
            sawFactoring = true;
            int mediators = 0;
            for (int u : dense.homs[n][x]) {
              if (dense.at(u, nu) == f) {
                ++mediators;
              }
            }
            if (mediators != 1) {
              ok = false;
              break;
            }
          }
          if (ok && sawFactoring) {
            w.uniquenessCertificate[C.objects[x]] = 1;
          }
        }
        if (ok) {
          w.kind = "negation";
          w.object = C.objects[n];
          w.structure = {{"eta", C.morphisms[e].label},
                         {"nu", C.morphisms[nu].label}};
          w.details = {{"characterization", "factorization"},
                       {"dualizer", D},
                       {"argument", A}};
          out.witnesses.push_back(std::move(w));
        }
      }
    }
  }

  // adjunction characterization: |Hom(A,D)| = |Hom(1,N)|
  auto terminals = findTerminal(C);
  if (terminals.empty()) {
    out.notes.push_back(
        {{"code", "NoTerminalForAdjunctionCheck"},
         {"message", "no terminal object — adjunction characterization "
                     "skipped, factorization search still ran"}});
  } else {
    int t = dense.object(terminals.front().object);
    auto want = dense.homs[a][dObj].size();
    for (int n = 0; n < dense.nObj; ++n) {
      if (dense.homs[t][n].size() == want) {
        UniversalWitness w;
        w.kind = "negation";
        w.object = C.objects[n];
        w.details = {{"characterization", "adjunction"},
                     {"dualizer", D},
                     {"argument", A},
                     {"terminal", terminals.front().object},
                     {"homCount", want}};
        out.witnesses.push_back(std::move(w));
      }
    }
  }
  return out;
}

Report compareWitnesses(
    const FinCategory& C, const UniversalWitness& a, const UniversalWitness& b,
    const std::map<std::string, UniversalWitness>* productsWithA) {
  if (a.kind != b.kind) {
    failInput("ShapeMismatch", "cannot compare a " + a.kind + " witness "
                                   "with a " + b.kind + " witness");
  }
  Dense d(C);
  Report report = Report::passing("witness-comparison");
  report.details["kind"] = a.kind;
  report.details["from"] = a.object;
  report.details["to"] = b.object;

  int from = d.object(a.object), to = d.object(b.object);
  auto mor = [&d](const UniversalWitness& w, const char* role) {
    auto it = w.structure.find(role);
    if (it == w.structure.end()) {
      failInput("MissingWitness",
                std::string("witness lacks structure morphism '") + role +
                    "'");
    }
    auto m = d.morIdx.find(it->second);
    if (m == d.morIdx.end()) {
      failInput("MissingWitness", "structure morphism '" + it->second +
                                      "' is outside the category");
    }
    return m->second;
  };

  std::vector<int> matching;
  for (int i : d.homs[from][to]) {
    bool preserves = true;
    if (a.kind == "product") {
      preserves = d.at(mor(b, "piLeft"), i) == mor(a, "piLeft") &&
                  d.at(mor(b, "piRight"), i) == mor(a, "piRight");
    } else if (a.kind == "coproduct") {
      preserves = d.at(i, mor(a, "injLeft")) == mor(b, "injLeft") &&
                  d.at(i, mor(a, "injRight")) == mor(b, "injRight");
    } else if (a.kind == "exponential") {
      if (!productsWithA) {
        failInput("MissingProducts",
                  "exponential comparison needs the chosen products");
      }
      int expArg = d.object(a.details.at("exponent").get<std::string>());
      auto pa = unpackProduct(d, a.object, expArg, productsWithA->at(a.object));
      auto pb = unpackProduct(d, b.object, expArg, productsWithA->at(b.object));
      int h = pairingMediator(d, pa, pb, i);  // i × id
      preserves = d.at(mor(b, "ev"), h) == mor(a, "ev");
    } else if (a.kind == "negation") {
      // the two characterizations are distinct properties; comparing across
      // them would be comparing apples to oranges
      if (a.details.value("characterization", "") !=
          b.details.value("characterization", "")) {
        failInput("ShapeMismatch",
                  "cannot compare negation witnesses from different "
                  "characterizations");
      }
      if (a.details.value("characterization", "") == "factorization") {
        preserves = d.at(i, mor(a, "nu")) == mor(b, "nu");
      }
      // adjunction-class witnesses carry no structure to preserve
    }
    if (preserves && d.invertible(i)) {
      matching.push_back(i);
    }
  }
  report.details["isoCount"] = matching.size();
  if (matching.size() == 1) {
    report.details["iso"] = C.morphisms[matching.front()].label;
  } else {
    report.fail({{"law", "unique-comparison-iso"},
                 {"from", a.object},
                 {"to", b.object},
                 {"count", matching.size()}});
  }
  return report;
}

}  // namespace finsem
