// Acceptance gate: one line per criterion, [PASS]/[FAIL], exit = #failures.
//
// Each criterion re-derives its expectations from first principles at desk
// scale (exhaustive enumeration over small carriers) rather than trusting
// the unit suites; the goal is an end-to-end demonstration that the library
// delivers what it promises, timed where a budget is part of the promise.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "finsem/bicat.hpp"
#include "finsem/coherence.hpp"
#include "finsem/errors.hpp"
#include "finsem/fincat.hpp"
#include "finsem/finset.hpp"
#include "finsem/logic.hpp"
#include "finsem/report.hpp"
#include "finsem/strictify.hpp"
#include "finsem/uprop.hpp"

namespace {

using namespace finsem;
using Clock = std::chrono::steady_clock;

struct Tally {
  bool pass = true;
  std::string detail;  // first failure, or summary counts
  std::size_t checks = 0;

  void fail(const std::string& why) {
    if (pass) {
      detail = why;
    }
    pass = false;
  }
};

// --- small builders ----------------------------------------------------------

FinSetObj sized(const std::string& label, std::size_t n) {
  std::vector<std::string> els;
  els.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    els.push_back(label + std::to_string(i));
  }
  return makeObj(label, els);
}

FinCategory booleanPoset() {
  FinCategory C;
  C.label = "bool";
  C.objects = {"0", "1"};
  C.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"le", "0", "1"}};
  C.identities = {{"0", "id0"}, {"1", "id1"}};
  C.compose = {{{"id0", "id0"}, "id0"},
               {{"id1", "id1"}, "id1"},
               {{"le", "id0"}, "le"},
               {{"id1", "le"}, "le"}};
  return C;
}

FinCategory cyclicTwo() {
  FinCategory C;
  C.label = "z2";
  C.objects = {"z"};
  C.morphisms = {{"idz", "z", "z"}, {"s", "z", "z"}};
  C.identities = {{"z", "idz"}};
  C.compose = {{{"idz", "idz"}, "idz"},
               {{"idz", "s"}, "s"},
               {{"s", "idz"}, "s"},
               {{"s", "s"}, "idz"}};
  return C;
}

// fan fn(0..n) over worker threads; false from fn marks the run failed
template <class Fn>
void parallelFor(std::size_t n, Fn&& fn) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) {
    workers = 1;
  }
  workers = std::min<unsigned>(workers, n == 0 ? 1 : n);
  std::atomic<std::size_t> next{0};
  auto body = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) {
        return;
      }
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back(body);
  }
  for (auto& t : pool) {
    t.join();
  }
}

// --- criterion 1: finite-set law suite ---------------------------------------

Tally criterion1() {
  Tally t;
  std::vector<FinSetObj> pool;
  for (std::size_t n = 0; n <= 3; ++n) {
    pool.push_back(sized("S" + std::to_string(n) + "_", n));
  }

  // composition is associative and unital
  for (const auto& A : pool)
    for (const auto& B : pool) {
      for (const auto& f : enumerateMaps(A, B)) {
        if (!(compose(f, identity(A)) == f) ||
            !(compose(identity(B), f) == f)) {
          t.fail("identity law broke for a map " + A.label + "→" + B.label);
        }
        ++t.checks;
      }
      for (const auto& C : pool)
        for (const auto& D : pool)
          for (const auto& f : enumerateMaps(A, B))
            for (const auto& g : enumerateMaps(B, C))
              for (const auto& h : enumerateMaps(C, D)) {
                if (!(compose(h, compose(g, f)) ==
                      compose(compose(h, g), f))) {
                  t.fail("associativity broke at sizes " +
                         std::to_string(A.elements.size()) + "," +
                         std::to_string(B.elements.size()) + "," +
                         std::to_string(C.elements.size()) + "," +
                         std::to_string(D.elements.size()));
                }
                ++t.checks;
              }
    }

  // product and coproduct mediators are unique: count = 1 by enumeration
  for (const auto& A : pool)
    for (const auto& B : pool) {
      const ProductData pd = product(A, B);
      const CoproductData cd = coproduct(A, B);
      for (const auto& X : pool) {
        for (const auto& f : enumerateMaps(X, A))
          for (const auto& g : enumerateMaps(X, B)) {
            std::size_t mediators = 0;
            for (const auto& m : enumerateMaps(X, pd.object)) {
              if (compose(pd.projLeft, m) == f &&
                  compose(pd.projRight, m) == g) {
                ++mediators;
              }
            }
            if (mediators != 1) {
              t.fail("product mediators ≠ 1 (" + std::to_string(mediators) +
                     ") into " + pd.object.label + " from " + X.label);
            }
            ++t.checks;
          }
        for (const auto& f : enumerateMaps(A, X))
          for (const auto& g : enumerateMaps(B, X)) {
            std::size_t mediators = 0;
            for (const auto& m : enumerateMaps(cd.object, X)) {
              if (compose(m, cd.injLeft) == f && compose(m, cd.injRight) == g) {
                ++mediators;
              }
            }
            if (mediators != 1) {
              t.fail("coproduct mediators ≠ 1 (" + std::to_string(mediators) +
                     ") out of " + cd.object.label + " into " + X.label);
            }
            ++t.checks;
          }
      }
    }

  // currying round-trips and satisfies the ev-equation exactly
  for (const auto& X : pool)
    for (const auto& A : pool)
      for (const auto& B : pool) {
        const ProductData xa = product(X, A);
        const ExponentialData e = exponential(A, B);
        for (const auto& f : enumerateMaps(xa.object, B)) {
          const FinSetMap fc = curry(f, X, A);
          if (!(uncurry(fc, A, B) == f)) {
            t.fail("uncurry∘curry ≠ id at sizes " +
                   std::to_string(X.elements.size()) + "," +
                   std::to_string(A.elements.size()) + "," +
                   std::to_string(B.elements.size()));
          }
          if (!(compose(e.ev, productMap(fc, identity(A))) == f)) {
            t.fail("ev∘(f̃×id) ≠ f at sizes " +
                   std::to_string(X.elements.size()) + "," +
                   std::to_string(A.elements.size()) + "," +
                   std::to_string(B.elements.size()));
          }
          ++t.checks;
        }
      }
  return t;
}

// --- criterion 2: cardinality identities --------------------------------------

unsigned long long ipow(unsigned long long b, unsigned long long e) {
  unsigned long long r = 1;
  for (unsigned long long i = 0; i < e; ++i) {
    r *= b;
  }
  return r;
}

Tally criterion2() {
  Tally t;
  std::vector<FinSetObj> pool;
  for (std::size_t n = 0; n <= 4; ++n) {
    pool.push_back(sized("C" + std::to_string(n) + "_", n));
  }
  for (const auto& A : pool)
    for (const auto& B : pool) {
      const auto a = A.elements.size(), b = B.elements.size();
      if (product(A, B).object.elements.size() != a * b) {
        t.fail("|A×B| ≠ |A|·|B| at " + std::to_string(a) + "," +
               std::to_string(b));
      }
      if (coproduct(A, B).object.elements.size() != a + b) {
        t.fail("|A+B| ≠ |A|+|B| at " + std::to_string(a) + "," +
               std::to_string(b));
      }
      if (exponential(A, B).object.elements.size() != ipow(b, a)) {
        t.fail("|B^A| ≠ |B|^|A| at " + std::to_string(a) + "," +
               std::to_string(b));
      }
      t.checks += 3;
    }
  return t;
}

// --- criterion 3: Boolean-poset oracle ----------------------------------------

Tally criterion3() {
  Tally t;
  const FinCategory C = booleanPoset();
  const auto meet = [](const std::string& a, const std::string& b) {
    return (a == "1" && b == "1") ? std::string("1") : std::string("0");
  };
  const auto join = [](const std::string& a, const std::string& b) {
    return (a == "0" && b == "0") ? std::string("0") : std::string("1");
  };
  const auto heyting = [](const std::string& a, const std::string& b) {
    return (a == "1" && b == "0") ? std::string("0") : std::string("1");
  };
  const std::vector<std::string> objs = {"0", "1"};

  auto objectsOf = [](const std::vector<UniversalWitness>& ws) {
    std::set<std::string> s;
    for (const auto& w : ws) {
      s.insert(w.object);
    }
    return s;
  };

  auto productsWith = [&](const std::string& A) {
    std::map<std::string, UniversalWitness> m;
    for (const auto& O : C.objects) {
      auto ps = findProducts(C, O, A);
      if (!ps.empty()) {
        m.emplace(O, ps.front());
      }
    }
    return m;
  };

  for (const auto& a : objs)
    for (const auto& b : objs) {
      if (objectsOf(findProducts(C, a, b)) != std::set<std::string>{meet(a, b)}) {
        t.fail("product(" + a + "," + b + ") ≠ meet");
      }
      if (objectsOf(findCoproducts(C, a, b)) !=
          std::set<std::string>{join(a, b)}) {
        t.fail("coproduct(" + a + "," + b + ") ≠ join");
      }
      if (objectsOf(findExponential(C, a, b, productsWith(a))) !=
          std::set<std::string>{heyting(a, b)}) {
        t.fail("exponential(" + a + "," + b + ") ≠ Heyting implication");
      }
      t.checks += 3;
    }

  // negation against D = 0, read off the adjunction characterization
  auto negOf = [&](const std::string& a) {
    std::set<std::string> s;
    for (const auto& w : findNegation(C, "0", a).witnesses) {
      if (w.details.at("characterization") == "adjunction") {
        s.insert(w.object);
      }
    }
    return s;
  };
  const std::map<std::string, std::string> expectedNeg{{"0", "1"}, {"1", "0"}};
  for (const auto& [a, na] : expectedNeg) {
    if (negOf(a) != std::set<std::string>{na}) {
      t.fail("¬" + a + " ≠ " + na);
    }
    // a ∧ ¬a = 0 and a ∨ ¬a = 1
    if (objectsOf(findProducts(C, a, na)) != std::set<std::string>{"0"}) {
      t.fail(a + " ∧ ¬" + a + " ≠ 0");
    }
    if (objectsOf(findCoproducts(C, a, na)) != std::set<std::string>{"1"}) {
      t.fail(a + " ∨ ¬" + a + " ≠ 1");
    }
    t.checks += 3;
  }
  return t;
}

// --- criterion 4: coherence law sweeps ----------------------------------------

template <class B, class C1>
void sweepLaws(Tally& t, const B& b, const std::vector<C1>& pool,
               const std::string& tag) {
  auto chain = [&](const C1& f, const C1& g) { return b.dst(f) == b.src(g); };
  auto prl = [&](const C1& f, const C1& g) {
    return b.src(f) == b.src(g) && b.dst(f) == b.dst(g);
  };
  std::mutex mu;
  std::atomic<std::size_t> done{0};

  auto record = [&](const Report& r, const char* law) {
    ++done;
    if (!r.pass) {
      std::lock_guard<std::mutex> lock(mu);
      t.fail(std::string(law) + " failed on " + tag + ": " +
             r.witnesses.dump());
    }
  };

  // pentagon / triangle / unitors: 1-cell tuples, cheap enough serially
  for (const auto& f : pool)
    for (const auto& g : pool) {
      if (!chain(f, g)) continue;
      record(checkTriangle(b, f, g), "triangle");
      for (const auto& h : pool) {
        if (!chain(g, h)) continue;
        for (const auto& k : pool) {
          if (!chain(h, k)) continue;
          record(checkPentagon(b, f, g, h, k), "pentagon");
        }
      }
    }
  for (const auto& f : pool) {
    record(checkUnitorInvertibility(b, f), "unitorInvertibility");
  }

  // associator naturality over all 2-cell triples
  for (const auto& f : pool)
    for (const auto& fp : pool) {
      if (!prl(f, fp)) continue;
      for (const auto& g : pool)
        for (const auto& gp : pool) {
          if (!prl(g, gp) || !chain(f, g)) continue;
          for (const auto& h : pool)
            for (const auto& hp : pool) {
              if (!prl(h, hp) || !chain(g, h)) continue;
              for (const auto& al : b.twoCells(f, fp))
                for (const auto& be : b.twoCells(g, gp))
                  for (const auto& ga : b.twoCells(h, hp))
                    record(checkAssociatorNaturality(b, al, be, ga),
                           "associatorNaturality");
            }
        }
    }

  // interchange over all 2-cell quadruples; the largest sweep, so the
  // hom-sextuples fan out over worker threads
  struct Sextet {
    C1 f, fp, fpp, g, gp, gpp;
  };
  std::vector<Sextet> sextets;
  for (const auto& f : pool)
    for (const auto& fp : pool) {
      if (!prl(f, fp)) continue;
      for (const auto& fpp : pool) {
        if (!prl(fp, fpp)) continue;
        for (const auto& g : pool) {
          if (!chain(f, g)) continue;
          for (const auto& gp : pool) {
            if (!prl(g, gp)) continue;
            for (const auto& gpp : pool) {
              if (!prl(gp, gpp)) continue;
              sextets.push_back({f, fp, fpp, g, gp, gpp});
            }
          }
        }
      }
    }
  parallelFor(sextets.size(), [&](std::size_t i) {
    const Sextet& s = sextets[i];
    for (const auto& al : b.twoCells(s.f, s.fp))
      for (const auto& be : b.twoCells(s.fp, s.fpp))
        for (const auto& ga : b.twoCells(s.g, s.gp))
          for (const auto& de : b.twoCells(s.gp, s.gpp))
            record(checkInterchange(b, al, be, ga, de), "interchange");
  });

  t.checks += done.load();
}

Tally criterion4() {
  Tally t;

  // weak exemplar: registered sets of sizes 1–3
  const MonoidalFinSetInstance mon(
      {sized("u", 1), sized("b", 2), sized("w", 3)});
  sweepLaws(t, mon, mon.registered, "monoidal-finset");

  // strict exemplar: identities and constant functors, coherence cells must
  // be identity 2-cells throughout
  const FinCatInstance fc({booleanPoset(), cyclicTwo()});
  std::vector<FinFunctor> pool;
  for (const auto& C : fc.registered) {
    pool.push_back(identityFunctor(C));
  }
  for (const auto& C : fc.registered)
    for (const auto& D : fc.registered)
      for (const auto& x : D.objects) {
        FinFunctor F;
        F.source = C;
        F.target = D;
        for (const auto& o : C.objects) F.objectMap[o] = x;
        for (const auto& m : C.morphisms) F.morphismMap[m.label] = D.identityOf(x);
        pool.push_back(F);
      }
  sweepLaws(t, fc, pool, "fincat");

  // identity cells throughout: every coherence accessor is an identity 2-cell
  for (const auto& f : pool) {
    if (!(fc.lunit(f) == fc.id2(f)) || !(fc.runit(f) == fc.id2(f))) {
      t.fail("a unitor on the strict instance is not an identity cell");
    }
    ++t.checks;
    for (const auto& g : pool) {
      if (fc.dst(f) != fc.src(g)) continue;
      for (const auto& h : pool) {
        if (fc.dst(g) != fc.src(h)) continue;
        const auto composite = fc.hcomp1(fc.hcomp1(h, g), f);
        if (!(fc.assoc(f, g, h) == fc.id2(composite))) {
          t.fail("an associator on the strict instance is not an identity cell");
        }
        ++t.checks;
      }
    }
  }
  return t;
}

// --- criterion 5: multi-path coherence ----------------------------------------

// all comp-trees over seq[lo, hi)
std::vector<ExprPtr> bracketings(const std::vector<ExprPtr>& leaves,
                                 std::size_t lo, std::size_t hi) {
  std::vector<ExprPtr> out;
  if (hi - lo == 1) {
    out.push_back(leaves[lo]);
    return out;
  }
  for (std::size_t m = lo + 1; m < hi; ++m) {
    for (const auto& l : bracketings(leaves, lo, m))
      for (const auto& r : bracketings(leaves, m, hi)) {
        out.push_back(makeComp(l, r));
      }
  }
  return out;
}

// associator with a deliberate twist on 2-element factors — the fault the
// detection half of the criterion must catch
struct TwistedAssoc : MonoidalFinSetInstance {
  explicit TwistedAssoc(std::vector<FinSetObj> sets)
      : MonoidalFinSetInstance(std::move(sets)) {}
  FinSetMap assoc(const FinSetObj& f, const FinSetObj& g,
                  const FinSetObj& h) const {
    FinSetMap a = MonoidalFinSetInstance::assoc(f, g, h);
    if (f.elements.size() == 2 && g.elements.size() == 2 &&
        h.elements.size() == 2) {
      std::swap(a.table[0], a.table[1]);
    }
    return a;
  }
};

Tally criterion5() {
  Tally t;
  const MonoidalFinSetInstance b(
      {sized("p", 2), sized("u", 1), sized("w", 3), sized("q", 2)});
  GenEnv<MonoidalFinSetInstance> env{{"f", b.registered[0]},
                                     {"g", b.registered[1]},
                                     {"h", b.registered[2]},
                                     {"k", b.registered[3]}};
  std::vector<ExprPtr> leaves = {makeGenerator("f", "•", "•"),
                                 makeGenerator("g", "•", "•"),
                                 makeGenerator("h", "•", "•"),
                                 makeGenerator("k", "•", "•")};
  const std::size_t budget = 5;

  for (std::size_t n = 1; n <= 4; ++n) {
    const auto trees = bracketings(leaves, 0, n);
    for (const auto& t1 : trees)
      for (const auto& t2 : trees) {
        const Report all = checkAllPathsEqual(b, env, t1, t2, budget);
        if (!all.pass) {
          t.fail("paths disagree between " + renderExpr(t1) + " and " +
                 renderExpr(t2));
        }
        const auto canonical = canonicalCell(b, env, t1, t2);
        for (const auto& path : enumeratePaths(t1, t2, budget)) {
          if (!b.equal2(evalPath(b, env, path), canonical)) {
            t.fail("a path from " + renderExpr(t1) + " misses canonicalCell");
          }
          ++t.checks;
        }
      }
  }

  // fault injection: a twisted associator must be caught with a witness
  const TwistedAssoc broken({sized("m", 2), sized("n", 2), sized("r", 2),
                             sized("s", 2)});
  GenEnv<TwistedAssoc> benv{{"f", broken.registered[0]},
                            {"g", broken.registered[1]},
                            {"h", broken.registered[2]},
                            {"k", broken.registered[3]}};
  bool caught = false;
  const auto trees4 = bracketings(leaves, 0, 4);
  for (const auto& t1 : trees4) {
    for (const auto& t2 : trees4) {
      const Report r = checkAllPathsEqual(broken, benv, t1, t2, budget);
      if (!r.pass && !r.witnesses.empty()) {
        caught = true;
      }
    }
  }
  if (!caught) {
    t.fail("the twisted associator went undetected across all "
           "4-generator bracketing pairs");
  }
  ++t.checks;
  return t;
}

// --- criterion 6: strictification ----------------------------------------------

Tally criterion6() {
  Tally t;
  const FinSetObj bit = sized("x", 2);
  const FinSetObj two = sized("y", 2);
  const MonoidalFinSetInstance b({bit, two});
  GenEnv<MonoidalFinSetInstance> env{{"x", bit}, {"y", two}};
  const auto res = strictifyInstance(b, env, 4, SizeBudget{6, 500});

  // strings compose strictly associatively (and unitally) by representation
  for (const auto& s : res.strict.cells)
    for (const auto& u : res.strict.cells)
      for (const auto& w : res.strict.cells) {
        if (!(concatStrings(concatStrings(s, u), w) ==
              concatStrings(s, concatStrings(u, w)))) {
          t.fail("string concatenation is not associative on the nose");
        }
        ++t.checks;
      }
  const CellString empty{"•", "•", {}};
  for (const auto& s : res.strict.cells) {
    if (!(concatStrings(s, empty) == s) || !(concatStrings(empty, s) == s)) {
      t.fail("the empty string is not a strict unit");
    }
    ++t.checks;
  }

  // every expression within the bound: unitIso is invertible, has canonical
  // boundaries, and is path-independent — composing with the canonical cell
  // between two bracketings transports one unitIso onto the other
  for (const auto& s : res.strict.cells) {
    if (s.gens.empty()) {
      continue;
    }
    const auto exprs = allBracketings(b, env, s);
    for (const auto& e : exprs) {
      const auto iso = unitIso(b, env, e);
      const auto inv = b.inverse(iso);
      if (!inv || !b.equal2(b.vcomp(*inv, iso), b.id2(b.dom2(iso))) ||
          !b.equal2(b.vcomp(iso, *inv), b.id2(b.cod2(iso)))) {
        t.fail("unitIso is not invertible on " + renderExpr(e));
      }
      ++t.checks;
    }
    for (const auto& e1 : exprs)
      for (const auto& e2 : exprs) {
        const auto transport = canonicalCell(b, env, e2, e1);
        if (!b.equal2(b.vcomp(unitIso(b, env, e1), transport),
                      unitIso(b, env, e2))) {
          t.fail("unitIso differs from the canonical coherence cell between " +
                 renderExpr(e1) + " and " + renderExpr(e2));
        }
        ++t.checks;
      }
  }

  // naturality squares hold exactly
  const Report bieq = checkBiequivalence(b, res, 4);
  if (!bieq.pass) {
    t.fail("biequivalence naturality squares failed: " +
           bieq.witnesses.dump());
  }
  ++t.checks;

  // universal preservation: equal mediator counts for product witnesses of
  // factor sizes ≤ 2
  {
    const ProductData pd = product(bit, bit);
    const MonoidalFinSetInstance bp({bit, pd.object});
    GenEnv<MonoidalFinSetInstance> penv{{"x", bit}, {"p", pd.object}};
    const auto pres = strictifyInstance(bp, penv, 1, SizeBudget{6, 500});
    HomProductWitness<MonoidalFinSetInstance> w;
    w.kind = "product";
    w.apex = pd.object;
    w.left = bit;
    w.right = bit;
    w.projLeft = pd.projLeft;
    w.projRight = pd.projRight;
    const Report rep = checkUniversalPreservation(bp, pres, w);
    if (!rep.pass) {
      t.fail("mediator correspondence failed for bit×bit: " +
             rep.witnesses.dump());
    }
    ++t.checks;
  }
  {
    const FinSetObj one = sized("o", 1);
    const ProductData pd = product(one, bit);
    const MonoidalFinSetInstance bp({one, bit, pd.object});
    GenEnv<MonoidalFinSetInstance> penv{
        {"o", one}, {"x", bit}, {"p", pd.object}};
    const auto pres = strictifyInstance(bp, penv, 1, SizeBudget{6, 500});
    HomProductWitness<MonoidalFinSetInstance> w;
    w.kind = "product";
    w.apex = pd.object;
    w.left = one;
    w.right = bit;
    w.projLeft = pd.projLeft;
    w.projRight = pd.projRight;
    const Report rep = checkUniversalPreservation(bp, pres, w);
    if (!rep.pass) {
      t.fail("mediator correspondence failed for one×bit: " +
             rep.witnesses.dump());
    }
    ++t.checks;
  }
  return t;
}

// --- criterion 7: logic end-to-end ----------------------------------------------

// intro-form terms (plus variables, unit, and context projections) that
// check against `goal` by construction
std::vector<TermPtr> genTerms(const Context& ctx, const FormulaPtr& goal,
                              int depth) {
  std::vector<TermPtr> out;
  for (const auto& [x, psi] : ctx) {
    if (formulaEqual(psi, goal)) {
      out.push_back(makeVar(x));
    }
    if (psi->kind == FormulaKind::And) {
      if (formulaEqual(psi->left, goal)) {
        out.push_back(makeFst(makeVar(x)));
      }
      if (formulaEqual(psi->right, goal)) {
        out.push_back(makeSnd(makeVar(x)));
      }
    }
  }
  if (goal->kind == FormulaKind::Top) {
    out.push_back(makeUnit());
  }
  if (depth <= 0) {
    return out;
  }
  if (goal->kind == FormulaKind::And) {
    for (const auto& l : genTerms(ctx, goal->left, depth - 1))
      for (const auto& r : genTerms(ctx, goal->right, depth - 1)) {
        out.push_back(makePair(l, r));
      }
  } else if (goal->kind == FormulaKind::Or) {
    for (const auto& l : genTerms(ctx, goal->left, depth - 1)) {
      out.push_back(makeInl(l));
    }
    for (const auto& r : genTerms(ctx, goal->right, depth - 1)) {
      out.push_back(makeInr(r));
    }
  } else if (goal->kind == FormulaKind::Imp) {
    const std::string binder = "z" + std::to_string(ctx.size() + 1);
    Context extended = ctx;
    extended.emplace_back(binder, goal->left);
    for (const auto& body : genTerms(extended, goal->right, depth - 1)) {
      out.push_back(makeLam(binder, body));
    }
  }
  return out;
}

void collectLams(const Derivation& d, std::vector<const Derivation*>& out) {
  if (d.rule == "Imp-intro") {
    out.push_back(&d);
  }
  for (const auto& p : d.premises) {
    collectLams(p, out);
  }
}

Tally criterion7() {
  Tally t;
  const Valuation v1{{"p", sized("a", 2)}, {"q", sized("b", 2)}};
  const Valuation v2{{"p", sized("m", 1)}, {"q", makeObj("q", {})}};

  // the four named derivations: type-check, compile, currying at every λ
  const std::vector<std::pair<std::string, std::string>> named = {
      {"\\x. x", "p -> p"},
      {"\\x. (snd x, fst x)", "p & q -> q & p"},
      {"\\x. \\y. x", "p -> q -> p"},
      {"\\x. abort x", "bot -> p"},
  };
  for (const auto& [termText, formulaText] : named) {
    const TermPtr term = parseTerm(termText);
    const FormulaPtr phi = parseFormula(formulaText);
    const Derivation d = typeCheck({}, term, phi);
    (void)interpretTerm(d, v1);
    std::vector<const Derivation*> lams;
    collectLams(d, lams);
    if (lams.empty()) {
      t.fail("no λ-node found in " + termText);
    }
    for (const Derivation* lam : lams) {
      const Report r = verifyCurryingDiagram(*lam, v1);
      if (!r.pass) {
        t.fail("currying square failed inside " + termText + ": " +
               r.witnesses.dump());
      }
      ++t.checks;
    }
  }

  // β-soundness: ⟦(λx. body) arg⟧ = ⟦body[x := arg]⟧ over a systematic
  // family of closed redexes (argument types of connective depth ≤ 1 over
  // atoms valued at sizes ≤ 2; whole-term depth ≤ 4)
  std::vector<FormulaPtr> atoms = {makeAtom("p"), makeAtom("q"), makeTop(),
                                   makeBot()};
  std::vector<FormulaPtr> formulaPool = atoms;
  for (const auto& l : atoms)
    for (const auto& r : atoms) {
      formulaPool.push_back(makeAnd(l, r));
      formulaPool.push_back(makeOr(l, r));
      formulaPool.push_back(makeImp(l, r));
    }

  // a closed term synthesizes its formula iff it is built from unit and
  // pairing; for those, the public App rule is exercised directly as well
  std::function<bool(const TermPtr&)> synthesizable =
      [&](const TermPtr& term) {
        if (term->kind == TermKind::Unit) {
          return true;
        }
        if (term->kind == TermKind::Pair) {
          return synthesizable(term->t0) && synthesizable(term->t1);
        }
        return false;
      };

  std::size_t redexes = 0;
  for (const auto& T : formulaPool) {
    const auto args = genTerms({}, T, 2);
    if (args.empty()) {
      continue;
    }
    for (const auto& G : formulaPool) {
      const auto bodies = genTerms({{"x", T}}, G, 2);
      for (const auto& body : bodies)
        for (const auto& arg : args) {
          const TermPtr lam = makeLam("x", body);
          const TermPtr redex = makeApp(lam, arg);
          const TermPtr reduced = substitute(body, "x", arg);
          // the redex derivation, assembled from its two checked premises
          // by the implication-elimination rule
          Derivation dfn = typeCheck({}, lam, makeImp(T, G));
          Derivation da = typeCheck({}, arg, T);
          const Derivation dr{
              "Imp-elim", {}, redex, G, {std::move(dfn), std::move(da)}};
          const Derivation de = typeCheck({}, reduced, G);
          for (const Valuation& v : {v1, v2}) {
            if (!(interpretTerm(dr, v) == interpretTerm(de, v))) {
              t.fail("β-soundness broke for (" + printTerm(redex) + ") : " +
                     printFormula(G));
            }
            ++t.checks;
          }
          if (synthesizable(arg)) {
            const Derivation dchk = typeCheck({}, redex, G);
            if (!(interpretTerm(dchk, v1) == interpretTerm(dr, v1))) {
              t.fail("checked and assembled redex derivations disagree for (" +
                     printTerm(redex) + ")");
            }
            ++t.checks;
          }
          ++redexes;
        }
    }
  }
  if (redexes < 100) {
    t.fail("the redex family is too small to be meaningful (" +
           std::to_string(redexes) + ")");
  }
  return t;
}

// --- criterion 8: CLI determinism ------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Tally criterion8() {
  Tally t;
  const std::string cli = FINSEM_CLI_PATH;
  const std::string td = FINSEM_TESTDATA_DIR;
  const std::filesystem::path work =
      std::filesystem::temp_directory_path() / "finsem_acceptance";
  std::filesystem::create_directories(work);

  const std::vector<std::string> commands = {
      "check category '" + td + "/bool_poset.json'",
      "check functor '" + td + "/bool_functor.json'",
      "check bicat pentagon --instance '" + td +
          "/monfinset.json' --exhaustive",
      "check bicat interchange --instance '" + td +
          "/monfinset.json' --exhaustive --budget-morphisms 2000 --parallel 4",
      "find product '" + td + "/bool_poset.json' --left 0 --right 1",
      "find negation '" + td + "/bool_poset.json' --dualizing 0 --object 1",
      "coherence paths '" + td + "/coh_paths.json'",
      "strictify --instance '" + td +
          "/monfinset.json' --generators f=bit,g=one --bound 3 --out '" +
          (work / "strict_out").string() + "'",
      "logic check '" + td + "/id.proof' --valuation '" + td +
          "/valuation.json'",
      "pseudolimit '" + td + "/diagram.json'",
  };

  for (std::size_t i = 0; i < commands.size(); ++i) {
    const auto fileA = work / ("run" + std::to_string(i) + "a.json");
    const auto fileB = work / ("run" + std::to_string(i) + "b.json");
    const std::string base = "'" + cli + "' --json " + commands[i];
    if (std::system((base + " > '" + fileA.string() + "'").c_str()) != 0 ||
        std::system((base + " > '" + fileB.string() + "'").c_str()) != 0) {
      t.fail("CLI run exited nonzero: " + commands[i]);
      continue;
    }
    const std::string a = slurp(fileA), bts = slurp(fileB);
    if (a.empty() || a != bts) {
      t.fail("outputs differ between repeated runs of: " + commands[i]);
    }
    ++t.checks;
  }
  return t;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    std::function<Tally()> run;
    double limitSeconds;  // 0 = no explicit limit
  };
  const std::vector<Criterion> criteria = {
      {1, "finite-set laws: compose, mediator uniqueness, currying (sizes ≤ 3)",
       criterion1, 60.0},
      {2, "cardinality identities ×/+/^ (sizes ≤ 4)", criterion2, 0},
      {3, "Boolean-poset oracle: meet/join/Heyting/negation", criterion3, 0},
      {4, "coherence law sweeps on both instances", criterion4, 300.0},
      {5, "multi-path coherence and fault detection", criterion5, 0},
      {6, "strictification: strict composition, unitIso, preservation",
       criterion6, 0},
      {7, "logic end-to-end: derivations, currying, β-soundness", criterion7,
       60.0},
      {8, "CLI determinism: repeated --json runs are byte-identical",
       criterion8, 0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Tally t;
    try {
      t = c.run();
    } catch (const std::exception& e) {
      t.fail(std::string("unexpected exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.limitSeconds > 0 && secs > c.limitSeconds) {
      t.fail("exceeded the time limit of " +
             std::to_string(static_cast<int>(c.limitSeconds)) + "s");
    }
    std::ostringstream line;
    line << (t.pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.title
         << "  (" << t.checks << " checks, " << std::fixed
         << std::setprecision(2) << secs << "s)";
    std::cout << line.str() << "\n";
    if (!t.pass) {
      std::cout << "       ↳ " << t.detail << "\n";
      ++failures;
    }
  }
  std::cout << (failures == 0 ? "acceptance: all criteria passed"
                              : "acceptance: " + std::to_string(failures) +
                                    " criterion(s) failed")
            << "\n";
  return failures;
}
