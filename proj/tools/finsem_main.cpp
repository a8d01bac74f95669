// finsem — batch driver for the finite-semantics workbench.
//
// Every subcommand reads JSON table files, runs the corresponding library
// check or search, and emits either a human-readable transcript or (with
// --json) a key-sorted, byte-stable machine report. Exit codes: 0 pass,
// 1 fail (witnesses emitted), 2 input/parse error, 3 budget exceeded.
//
// Enumeration is never truncated silently: exhaustive law sweeps count their
// tuples first and refuse (exit 3) when the planned checks exceed
// --budget-morphisms. `--parallel N` fans independent tuples over N workers;
// results are collected by tuple index, so output order is deterministic
// regardless of scheduling.

#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "finsem/bicat.hpp"
#include "finsem/coherence.hpp"
#include "finsem/errors.hpp"
#include "finsem/fincat.hpp"
#include "finsem/finset.hpp"
#include "finsem/json_io.hpp"
#include "finsem/logic.hpp"
#include "finsem/report.hpp"
#include "finsem/strictify.hpp"
#include "finsem/uprop.hpp"

namespace {

using namespace finsem;

struct Options {
  bool jsonOut = false;
  SizeBudget budget;
  unsigned parallel = 1;
  std::string commandEcho;
};

// What a subcommand hands back: verification reports (drive the exit code),
// a payload of constructed data, and extra lines for the human transcript.
struct Outcome {
  std::vector<Report> reports;
  json payload = json::object();
  std::vector<std::string> humanLines;
};

// --- deterministic parallel fan-out -----------------------------------------

// Runs the tasks (possibly concurrently) and returns results in task order.
// The lowest-indexed exception wins, so a failing tuple reports identically
// at any --parallel value.
std::vector<Report> runAll(const std::vector<std::function<Report()>>& tasks,
                           unsigned parallel) {
  std::vector<Report> out(tasks.size());
  if (parallel <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      out[i] = tasks[i]();
    }
    return out;
  }
  std::vector<std::exception_ptr> errs(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) {
        return;
      }
      try {
        out[i] = tasks[i]();
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(parallel, tasks.size());
  pool.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    pool.emplace_back(worker);
  }
  for (auto& t : pool) {
    t.join();
  }
  for (const auto& e : errs) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return out;
}

// --- check category / functor / nattrans / bifunctor ------------------------

Outcome runCheckCategory(const std::string& file) {
  const FinCategory C = categoryFromJson(loadJsonFile(file));
  Outcome o;
  o.reports.push_back(checkCategoryAxioms(C));
  o.payload["category"] = C.label;
  o.payload["objects"] = C.objects.size();
  o.payload["morphisms"] = C.morphisms.size();
  o.humanLines.push_back("category " + C.label + ": " +
                         std::to_string(C.objects.size()) + " objects, " +
                         std::to_string(C.morphisms.size()) + " morphisms");
  return o;
}

Outcome runCheckFunctor(const std::string& file) {
  const FinFunctor F = functorFromJson(loadJsonFile(file));
  Outcome o;
  o.reports.push_back(checkCategoryAxioms(F.source));
  o.reports.push_back(checkCategoryAxioms(F.target));
  o.reports.push_back(checkFunctor(F));
  o.payload["source"] = F.source.label;
  o.payload["target"] = F.target.label;
  return o;
}

Outcome runCheckNatTrans(const std::string& file) {
  const FinNatTrans eta = natTransFromJson(loadJsonFile(file));
  Outcome o;
  o.reports.push_back(checkFunctor(eta.source));
  o.reports.push_back(checkFunctor(eta.target));
  o.reports.push_back(checkNatTrans(eta));
  o.payload["components"] = eta.components;
  return o;
}

Outcome runCheckBifunctor(const std::string& file) {
  FinCategory left, right;
  const FinFunctor F = bifunctorFromJson(loadJsonFile(file), left, right);
  Outcome o;
  o.reports.push_back(checkCategoryAxioms(left));
  o.reports.push_back(checkCategoryAxioms(right));
  o.reports.push_back(checkCategoryAxioms(F.target));
  o.reports.push_back(checkBifunctor(F, left, right));
  o.payload["source"] = F.source.label;
  o.payload["target"] = F.target.label;
  return o;
}

// --- check bicat <law> -------------------------------------------------------

// 1-cell alphabet for law sweeps. The monoidal instance quantifies over its
// registered sets. The functor instance quantifies over identities and all
// constant functors between registered categories — enough to exercise every
// src/dst combination without enumerating the full functor space.
std::vector<FinSetObj> onePool(const MonoidalFinSetInstance& b) {
  return b.registered;
}

std::vector<FinFunctor> onePool(const FinCatInstance& b) {
  std::vector<FinFunctor> pool;
  for (const auto& C : b.registered) {
    pool.push_back(identityFunctor(C));
  }
  for (const auto& C : b.registered) {
    for (const auto& D : b.registered) {
      for (const auto& x : D.objects) {
        FinFunctor F;
        F.source = C;
        F.target = D;
        for (const auto& o : C.objects) {
          F.objectMap[o] = x;
        }
        for (const auto& m : C.morphisms) {
          F.morphismMap[m.label] = D.identityOf(x);
        }
        pool.push_back(F);
      }
    }
  }
  return pool;
}

template <Bicategory B>
bool parallel1(const B& b, const typename B::Cell1& f,
               const typename B::Cell1& g) {
  return b.src(f) == b.src(g) && b.dst(f) == b.dst(g);
}

template <Bicategory B>
Outcome runBicatLaw(const B& b, const std::string& law, bool exhaustive,
                    const Options& opt) {
  const auto pool = onePool(b);
  if (pool.empty()) {
    failInput("MalformedInstance", "the instance registers no 1-cells");
  }
  using C1 = typename B::Cell1;
  std::vector<std::function<Report()>> tasks;
  auto chain = [&](const C1& f, const C1& g) { return b.dst(f) == b.src(g); };

  if (law == "pentagon") {
    for (const auto& f : pool)
      for (const auto& g : pool)
        for (const auto& h : pool)
          for (const auto& k : pool)
            if (chain(f, g) && chain(g, h) && chain(h, k))
              tasks.push_back(
                  [&b, f, g, h, k]() { return checkPentagon(b, f, g, h, k); });
  } else if (law == "triangle") {
    for (const auto& f : pool)
      for (const auto& g : pool)
        if (chain(f, g))
          tasks.push_back([&b, f, g]() { return checkTriangle(b, f, g); });
  } else if (law == "unitors") {
    for (const auto& f : pool)
      tasks.push_back([&b, f]() { return checkUnitorInvertibility(b, f); });
  } else if (law == "naturality") {
    // α: f⇒f', β: g⇒g', γ: h⇒h' over a composable chain f,g,h
    for (const auto& f : pool)
      for (const auto& fp : pool) {
        if (!parallel1(b, f, fp)) continue;
        for (const auto& g : pool)
          for (const auto& gp : pool) {
            if (!parallel1(b, g, gp) || !chain(f, g)) continue;
            for (const auto& h : pool)
              for (const auto& hp : pool) {
                if (!parallel1(b, h, hp) || !chain(g, h)) continue;
                for (const auto& al : b.twoCells(f, fp))
                  for (const auto& be : b.twoCells(g, gp))
                    for (const auto& ga : b.twoCells(h, hp))
                      tasks.push_back([&b, al, be, ga]() {
                        return checkAssociatorNaturality(b, al, be, ga);
                      });
              }
          }
      }
  } else if (law == "interchange") {
    // α: f⇒f', β: f'⇒f'' against γ: g⇒g', δ: g'⇒g'' with f,g composable
    for (const auto& f : pool)
      for (const auto& fp : pool) {
        if (!parallel1(b, f, fp)) continue;
        for (const auto& fpp : pool) {
          if (!parallel1(b, fp, fpp)) continue;
          for (const auto& g : pool) {
            if (!chain(f, g)) continue;
            for (const auto& gp : pool) {
              if (!parallel1(b, g, gp)) continue;
              for (const auto& gpp : pool) {
                if (!parallel1(b, gp, gpp)) continue;
                for (const auto& al : b.twoCells(f, fp))
                  for (const auto& be : b.twoCells(fp, fpp))
                    for (const auto& ga : b.twoCells(g, gp))
                      for (const auto& de : b.twoCells(gp, gpp))
                        tasks.push_back([&b, al, be, ga, de]() {
                          return checkInterchange(b, al, be, ga, de);
                        });
              }
            }
          }
        }
      }
  } else {
    failInput("ShapeMismatch", "unknown law '" + law + "'");
  }

  if (tasks.empty()) {
    failInput("MalformedInstance",
              "no composable tuples exist for law '" + law + "'");
  }
  const std::size_t planned = tasks.size();
  if (!exhaustive) {
    tasks.resize(1);
  } else if (planned > opt.budget.morphisms) {
    failBudget("SizeBudgetExceeded",
               "exhaustive '" + law + "' sweep needs " +
                   std::to_string(planned) +
                   " checks; raise --budget-morphisms (currently " +
                   std::to_string(opt.budget.morphisms) + ")");
  }

  Outcome o;
  o.reports = runAll(tasks, opt.parallel);
  o.payload["law"] = law;
  o.payload["mode"] = exhaustive ? "exhaustive" : "spot";
  o.payload["checksRun"] = tasks.size();
  o.payload["tuplesAvailable"] = planned;
  o.humanLines.push_back(
      (exhaustive ? "exhaustive sweep: " : "spot check: ") +
      std::to_string(tasks.size()) + " of " + std::to_string(planned) +
      " composable tuples");
  return o;
}

Outcome runCheckBicat(const std::string& law, const std::string& instanceFile,
                      bool exhaustive, const Options& opt) {
  const json j = loadJsonFile(instanceFile);
  const std::string kind = instanceKind(j);
  if (kind == "monoidal-finset") {
    return runBicatLaw(monoidalInstanceFromJson(j), law, exhaustive, opt);
  }
  if (kind == "fincat") {
    return runBicatLaw(finCatInstanceFromJson(j), law, exhaustive, opt);
  }
  failInput("MalformedInstance", "unknown instance kind '" + kind + "'");
}

// --- find <structure> --------------------------------------------------------

Outcome witnessOutcome(std::vector<UniversalWitness> witnesses,
                       json notes = json::array()) {
  Outcome o;
  json arr = json::array();
  for (const auto& w : witnesses) {
    arr.push_back(w.toJson());
  }
  o.payload["witnesses"] = arr;
  if (!notes.empty()) {
    o.payload["notes"] = notes;
  }
  Report r = Report::passing("search");
  r.details["found"] = witnesses.size();
  o.reports.push_back(r);
  o.humanLines.push_back("found " + std::to_string(witnesses.size()) +
                         " witness(es)");
  for (const auto& w : witnesses) {
    o.humanLines.push_back("  " + w.kind + " at " + w.object);
  }
  return o;
}

Outcome runFind(const std::string& what, const std::string& file,
                const std::string& left, const std::string& right,
                const std::string& dualizing, const std::string& object,
                const std::optional<std::string>& eta, const Options& opt) {
  const FinCategory C = categoryFromJson(loadJsonFile(file));
  if (what == "terminal") {
    return witnessOutcome(findTerminal(C));
  }
  if (what == "product") {
    return witnessOutcome(findProducts(C, left, right, opt.budget));
  }
  if (what == "coproduct") {
    return witnessOutcome(findCoproducts(C, left, right, opt.budget));
  }
  if (what == "exponential") {
    // choose one product with `left` per object that has any; the witness
    // certificate records which test objects were quantified over
    std::map<std::string, UniversalWitness> productsWithA;
    json notes = json::array();
    for (const auto& O : C.objects) {
      auto ps = findProducts(C, O, left, opt.budget);
      if (!ps.empty()) {
        productsWithA.emplace(O, ps.front());
      } else {
        notes.push_back("no product of (" + O + ", " + left +
                        ") exists; excluded from the test range");
      }
    }
    Outcome o = witnessOutcome(
        findExponential(C, left, right, productsWithA, opt.budget),
        std::move(notes));
    o.payload["convention"] = "witnesses carry right^left";
    return o;
  }
  if (what == "negation") {
    NegationSearch res =
        findNegation(C, dualizing, object, eta, opt.budget);
    return witnessOutcome(std::move(res.witnesses), std::move(res.notes));
  }
  failInput("ShapeMismatch", "unknown structure '" + what + "'");
}

// --- coherence paths ---------------------------------------------------------

Outcome runCoherencePaths(const std::string& file, const Options& opt) {
  const json spec = loadJsonFile(file);
  if (!spec.is_object() || !spec.contains("instance")) {
    failInput("BadJson", "a paths file needs an 'instance' field");
  }
  const MonoidalFinSetInstance b = monoidalInstanceFromJson(spec.at("instance"));
  if (!spec.contains("generators") || !spec.at("generators").is_object()) {
    failInput("BadJson", "a paths file needs a 'generators' object");
  }

  GenEnv<MonoidalFinSetInstance> env;
  std::map<std::string, GeneratorDecl> decls;
  for (const auto& [name, setLabel] : spec.at("generators").items()) {
    if (!setLabel.is_string()) {
      failInput("BadJson", "generator '" + name + "' must name a set");
    }
    const std::string want = setLabel.get<std::string>();
    bool found = false;
    for (const auto& s : b.registered) {
      if (s.label == want) {
        env.emplace(name, s);
        found = true;
        break;
      }
    }
    if (!found) {
      failInput("MalformedInstance", "generator '" + name +
                                         "' names unregistered set '" + want +
                                         "'");
    }
    decls.emplace(name, GeneratorDecl{"•", "•"});
  }

  auto textField = [&](const char* key) {
    if (!spec.contains(key) || !spec.at(key).is_string()) {
      failInput("BadJson",
                std::string("a paths file needs a '") + key + "' expression");
    }
    return spec.at(key).get<std::string>();
  };
  const ExprPtr e1 = parseExpr(textField("left"), decls);
  const ExprPtr e2 = parseExpr(textField("right"), decls);
  const std::size_t budget =
      spec.contains("budget") ? spec.at("budget").get<std::size_t>() : 5;

  Outcome o;
  // pairwise agreement of every enumerated rewrite path…
  o.reports.push_back(checkAllPathsEqual(b, env, e1, e2, budget));

  // …and agreement with the canonical normalize/denormalize cell, which the
  // pairwise sweep does not test on its own.
  const auto canonical = canonicalCell(b, env, e1, e2);
  const auto paths = enumeratePaths(e1, e2, budget);
  Report canon = Report::passing("canonicalAgreement");
  canon.details["source"] = renderExpr(e1);
  canon.details["target"] = renderExpr(e2);
  canon.details["canonical"] = b.label2(canonical);
  canon.details["pathsCompared"] = paths.size();
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto cell = evalPath(b, env, paths[i]);
    if (!b.equal2(cell, canonical)) {
      canon.fail(json{{"pathIndex", i},
                      {"steps", paths[i].steps.size()},
                      {"evaluated", b.label2(cell)},
                      {"canonical", b.label2(canonical)}});
    }
  }
  o.reports.push_back(canon);

  o.payload["left"] = renderExpr(e1);
  o.payload["right"] = renderExpr(e2);
  o.payload["paths"] = paths.size();
  o.payload["budget"] = budget;
  o.humanLines.push_back(std::to_string(paths.size()) +
                         " rewrite path(s) within budget " +
                         std::to_string(budget));
  return o;
}

// --- strictify ----------------------------------------------------------------

Outcome runStrictify(const std::string& instanceFile,
                     const std::vector<std::string>& generatorSpecs,
                     std::size_t bound, const std::string& outDir,
                     const Options& opt) {
  const json j = loadJsonFile(instanceFile);
  const std::string kind = instanceKind(j);
  if (kind != "monoidal-finset") {
    failInput("MalformedInstance",
              "the strictify command drives monoidal finite-set instances; "
              "the library API covers the '" +
                  kind + "' instance");
  }
  const MonoidalFinSetInstance b = monoidalInstanceFromJson(j);

  GenEnv<MonoidalFinSetInstance> env;
  json genEcho = json::object();
  for (const auto& spec : generatorSpecs) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      failInput("BadJson", "generator binding '" + spec +
                               "' is not of the form name=set");
    }
    const std::string name = spec.substr(0, eq);
    const std::string setLabel = spec.substr(eq + 1);
    bool found = false;
    for (const auto& s : b.registered) {
      if (s.label == setLabel) {
        env.emplace(name, s);
        genEcho[name] = setLabel;
        found = true;
        break;
      }
    }
    if (!found) {
      failInput("MalformedInstance", "generator '" + name +
                                         "' names unregistered set '" +
                                         setLabel + "'");
    }
  }

  const auto res = strictifyInstance(b, env, bound, opt.budget);
  const Report bieq = checkBiequivalence(b, res, bound);

  json cells = json::array();
  for (const auto& s : res.strict.cells) {
    cells.push_back(json{{"label", s.label()},
                         {"src", s.srcObject},
                         {"tgt", s.tgtObject},
                         {"generators", s.gens}});
  }
  const json strings = {
      {"objects", res.strict.objects},
      {"cells", cells},
      {"lengthBound", res.strict.lengthBound},
      {"metadata", res.strict.metadata}};
  const json witness = {
      {"generators", genEcho},
      {"lengthBound", res.witness.lengthBound},
      {"metadata", res.witness.metadata},
      {"quotient", res.witness.quotientCheck.toJson()}};
  const json reportFile = {{"biequivalence", bieq.toJson()},
                           {"quotient", res.witness.quotientCheck.toJson()}};

  std::filesystem::create_directories(outDir);
  auto emitFile = [&](const std::string& name, const json& body) {
    std::ofstream out(outDir + "/" + name);
    if (!out) {
      failInput("FileNotFound", "cannot write '" + outDir + "/" + name + "'");
    }
    out << body.dump(2) << "\n";
  };
  emitFile("strings.json", strings);
  emitFile("witness.json", witness);
  emitFile("report.json", reportFile);

  Outcome o;
  o.reports.push_back(bieq);  // absorbs the quotient check
  o.payload["out"] = outDir;
  o.payload["files"] = {"report.json", "strings.json", "witness.json"};
  o.payload["objects"] = res.strict.objects.size();
  o.payload["cells"] = res.strict.cells.size();
  o.payload["lengthBound"] = res.strict.lengthBound;
  o.humanLines.push_back("strict 2-category: " +
                         std::to_string(res.strict.cells.size()) +
                         " string(s) on " +
                         std::to_string(res.strict.objects.size()) +
                         " object(s), written to " + outDir);
  return o;
}

// --- logic check ---------------------------------------------------------------

void collectLamNodes(const Derivation& d, std::vector<const Derivation*>& out) {
  if (d.rule == "Imp-intro") {
    out.push_back(&d);
  }
  for (const auto& p : d.premises) {
    collectLamNodes(p, out);
  }
}

Outcome runLogicCheck(const std::string& proofPath,
                      const std::string& valuationPath,
                      const std::optional<std::string>& dualizingPath) {
  std::ifstream in(proofPath);
  if (!in) {
    failInput("FileNotFound", "cannot open '" + proofPath + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const ProofFile pf = parseProofFile(buf.str());

  const Valuation v = valuationFromJson(loadJsonFile(valuationPath));
  const FinSetObj D = dualizingPath
                          ? setFromJson(loadJsonFile(*dualizingPath))
                          : makeObj("0", {});

  const Derivation d = typeCheck({}, pf.term, pf.formula);
  Report typing = Report::passing("typing");
  typing.details["theorem"] = pf.name;
  typing.details["formula"] = printFormula(pf.formula);
  typing.details["rootRule"] = d.rule;

  const FinSetMap table = interpretTerm(d, v, D);
  Report compiled = Report::passing("compilation");
  compiled.details["dom"] = table.dom.label;
  compiled.details["cod"] = table.cod.label;

  Outcome o;
  o.reports.push_back(typing);
  o.reports.push_back(compiled);

  std::vector<const Derivation*> lams;
  collectLamNodes(d, lams);
  for (const Derivation* lam : lams) {
    o.reports.push_back(verifyCurryingDiagram(*lam, v, D));
  }

  json tableJson = json::object();
  for (std::size_t i = 0; i < table.dom.elements.size(); ++i) {
    tableJson[table.dom.elements[i]] = table.table[i];
  }
  o.payload["theorem"] = pf.name;
  o.payload["formula"] = printFormula(pf.formula);
  o.payload["term"] = printTerm(pf.term);
  o.payload["map"] = {{"dom", table.dom.label},
                      {"cod", table.cod.label},
                      {"table", tableJson}};
  o.humanLines.push_back("theorem " + pf.name + " : " +
                         printFormula(pf.formula));
  o.humanLines.push_back("proof " + printTerm(pf.term));
  o.humanLines.push_back("compiled: " + table.dom.label + " → " +
                         table.cod.label);
  for (std::size_t i = 0; i < table.dom.elements.size(); ++i) {
    o.humanLines.push_back("  " + table.dom.elements[i] + " ↦ " +
                           table.table[i]);
  }
  return o;
}

// --- pseudolimit ----------------------------------------------------------------

Outcome runPseudoLimit(const std::string& file, const Options& opt) {
  const Diagram D = diagramFromJson(loadJsonFile(file));
  const PseudoLimitData lim = pseudoLimit(D, opt.budget);

  Outcome o;
  o.reports.push_back(checkCategoryAxioms(lim.category));
  json projections = json::object();
  for (const auto& [idx, pi] : lim.projections) {
    Report pr = checkFunctor(pi);
    pr.details["projection"] = idx;
    o.reports.push_back(pr);
    projections[idx] = functorMapsToJson(pi);
  }
  o.payload["limit"] = categoryToJson(lim.category);
  o.payload["projections"] = projections;
  o.humanLines.push_back("pseudo-limit: " +
                         std::to_string(lim.category.objects.size()) +
                         " objects, " +
                         std::to_string(lim.category.morphisms.size()) +
                         " morphisms");
  return o;
}

// --- output --------------------------------------------------------------------

json budgetJson(const SizeBudget& b) {
  return json{{"objects", b.objects}, {"morphisms", b.morphisms}};
}

int emitOutcome(const Options& opt, const Outcome& o,
                std::chrono::milliseconds elapsed) {
  bool pass = true;
  for (const auto& r : o.reports) {
    pass = pass && r.pass;
  }
  if (opt.jsonOut) {
    // no timing in machine output: identical inputs must give identical bytes
    json env;
    env["budget"] = budgetJson(opt.budget);
    env["command"] = opt.commandEcho;
    json reports = json::array();
    for (const auto& r : o.reports) {
      reports.push_back(r.toJson());
    }
    env["payload"] = o.payload;
    env["reports"] = reports;
    env["status"] = pass ? "pass" : "fail";
    std::cout << env.dump(2) << "\n";
  } else {
    for (const auto& r : o.reports) {
      std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.check << "\n";
      if (!r.pass) {
        for (const auto& w : r.witnesses) {
          std::cout << "  witness: " << w.dump() << "\n";
        }
      }
    }
    for (const auto& line : o.humanLines) {
      std::cout << line << "\n";
    }
    std::cout << "status: " << (pass ? "pass" : "fail") << " ("
              << o.reports.size() << " check(s), " << elapsed.count()
              << " ms)\n";
  }
  return pass ? 0 : 1;
}

int emitError(const Options& opt, const Error& e) {
  const bool budget = e.errorClass() == Error::Class::Budget;
  std::string message = e.what();  // what() is "code: message"
  const std::string prefix = e.code() + ": ";
  if (message.rfind(prefix, 0) == 0) {
    message = message.substr(prefix.size());
  }
  if (opt.jsonOut) {
    json env;
    env["budget"] = budgetJson(opt.budget);
    env["command"] = opt.commandEcho;
    env["error"] = json{{"class", budget ? "budget" : "input"},
                        {"code", e.code()},
                        {"message", message}};
    env["status"] = "error";
    std::cout << env.dump(2) << "\n";
  } else {
    std::cerr << "error: " << e.what() << "\n";
  }
  return budget ? 3 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  {
    std::ostringstream echo;
    for (int i = 1; i < argc; ++i) {
      echo << (i > 1 ? " " : "") << argv[i];
    }
    opt.commandEcho = echo.str();
  }

  CLI::App app{
      "finsem — constructs and verifies categorical semantics over finite "
      "data"};
  app.require_subcommand(1);
  app.add_flag("--json", opt.jsonOut, "machine-readable, byte-stable output");
  app.add_option("--budget-objects", opt.budget.objects,
                 "object budget for searches (default 6)");
  app.add_option("--budget-morphisms", opt.budget.morphisms,
                 "enumeration budget for sweeps and searches (default 200)");
  app.add_option("--parallel", opt.parallel,
                 "worker threads for independent check tuples (default 1)");

  std::function<Outcome()> run;

  // check …
  auto* check = app.add_subcommand("check", "verify a structure or law");
  check->require_subcommand(1);

  static std::string catFile;
  auto* cCat = check->add_subcommand("category", "category axioms on a table");
  cCat->add_option("file", catFile, "category JSON file")->required();
  cCat->callback([&]() { run = [&]() { return runCheckCategory(catFile); }; });

  static std::string funFile;
  auto* cFun = check->add_subcommand("functor", "functor laws on a table");
  cFun->add_option("file", funFile, "functor JSON file")->required();
  cFun->callback([&]() { run = [&]() { return runCheckFunctor(funFile); }; });

  static std::string natFile;
  auto* cNat = check->add_subcommand("nattrans", "naturality on a table");
  cNat->add_option("file", natFile, "natural-transformation JSON file")
      ->required();
  cNat->callback([&]() { run = [&]() { return runCheckNatTrans(natFile); }; });

  static std::string bifFile;
  auto* cBif = check->add_subcommand("bifunctor",
                                     "bifunctor laws against C×D");
  cBif->add_option("file", bifFile, "bifunctor JSON file")->required();
  cBif->callback(
      [&]() { run = [&]() { return runCheckBifunctor(bifFile); }; });

  auto* cBicat = check->add_subcommand("bicat", "bicategory coherence laws");
  cBicat->require_subcommand(1);
  static std::string bicatInstance;
  static bool exhaustive = false;
  for (const std::string law :
       {"pentagon", "triangle", "interchange", "naturality", "unitors"}) {
    auto* sub = cBicat->add_subcommand(law, law + " law");
    sub->add_option("--instance", bicatInstance, "instance JSON file")
        ->required();
    sub->add_flag("--exhaustive", exhaustive,
                  "sweep every composable tuple (budget-gated)");
    sub->callback([&, law]() {
      run = [&, law]() {
        return runCheckBicat(law, bicatInstance, exhaustive, opt);
      };
    });
  }

  // find …
  auto* find = app.add_subcommand("find", "brute-force universal structures");
  find->require_subcommand(1);
  static std::string findFile, findLeft, findRight, findDual, findObject;
  static std::string etaText;
  for (const std::string what :
       {"terminal", "product", "coproduct", "exponential", "negation"}) {
    auto* sub = find->add_subcommand(what, "search for a " + what);
    sub->add_option("file", findFile, "category JSON file")->required();
    if (what == "product" || what == "coproduct" || what == "exponential") {
      sub->add_option("--left", findLeft, "left factor object")->required();
      sub->add_option("--right", findRight, "right factor object")->required();
    }
    if (what == "negation") {
      sub->add_option("--dualizing", findDual, "dualizing object")->required();
      sub->add_option("--object", findObject, "object to negate")->required();
      sub->add_option("--eta", etaText, "fixed map into the dualizing object");
    }
    sub->callback([&, what]() {
      run = [&, what]() {
        std::optional<std::string> eta;
        if (!etaText.empty()) {
          eta = etaText;
        }
        return runFind(what, findFile, findLeft, findRight, findDual,
                       findObject, eta, opt);
      };
    });
  }

  // coherence paths …
  auto* coh = app.add_subcommand("coherence", "expression-level coherence");
  coh->require_subcommand(1);
  static std::string pathsFile;
  auto* cohPaths = coh->add_subcommand(
      "paths", "all rewrite paths between two bracketings agree");
  cohPaths->add_option("file", pathsFile, "paths JSON file")->required();
  cohPaths->callback(
      [&]() { run = [&]() { return runCoherencePaths(pathsFile, opt); }; });

  // strictify …
  static std::string strictInstance, strictOut;
  static std::vector<std::string> strictGens;
  static std::size_t strictBound = 4;
  auto* strict = app.add_subcommand(
      "strictify", "build the strict string model and its witness");
  strict->add_option("--instance", strictInstance, "instance JSON file")
      ->required();
  strict->add_option("--generators", strictGens,
                     "comma-separated name=set bindings")
      ->required()
      ->delimiter(',');
  strict->add_option("--bound", strictBound, "string length bound");
  strict->add_option("--out", strictOut, "output directory")->required();
  strict->callback([&]() {
    run = [&]() {
      return runStrictify(strictInstance, strictGens, strictBound, strictOut,
                          opt);
    };
  });

  // logic check …
  auto* logic = app.add_subcommand("logic", "propositional proofs over finite "
                                            "valuations");
  logic->require_subcommand(1);
  static std::string proofFile, valuationFile;
  static std::string dualizingFile;
  auto* lCheck = logic->add_subcommand(
      "check", "type-check, compile, and verify a proof file");
  lCheck->add_option("file", proofFile, "proof file")->required();
  lCheck->add_option("--valuation", valuationFile, "valuation JSON file")
      ->required();
  lCheck->add_option("--dualizing", dualizingFile,
                     "set JSON file for the dualizing object (default ∅)");
  lCheck->callback([&]() {
    run = [&]() {
      std::optional<std::string> dual;
      if (!dualizingFile.empty()) {
        dual = dualizingFile;
      }
      return runLogicCheck(proofFile, valuationFile, dual);
    };
  });

  // pseudolimit …
  static std::string diagramFile;
  auto* plim = app.add_subcommand("pseudolimit",
                                  "pseudo-limit of a diagram of categories");
  plim->add_option("file", diagramFile, "diagram JSON file")->required();
  plim->callback(
      [&]() { run = [&]() { return runPseudoLimit(diagramFile, opt); }; });

  // global flags (--json, budgets, --parallel) are valid anywhere on the line
  std::function<void(CLI::App*)> enableFallthrough = [&](CLI::App* a) {
    for (CLI::App* sub : a->get_subcommands([](CLI::App*) { return true; })) {
      sub->fallthrough();
      enableFallthrough(sub);
    }
  };
  enableFallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;  // --help exits 0; bad usage exits 2
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = run();
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - t0);
    return emitOutcome(opt, o, elapsed);
  } catch (const Error& e) {
    return emitError(opt, e);
  } catch (const std::exception& e) {
    std::cerr << "error [Internal] " << e.what() << "\n";
    return 2;
  }
}
