#include "finsem/json_io.hpp"

#include <fstream>

#include "doctest.h"
#include "finsem/errors.hpp"
#include "finsem/fincat.hpp"
#include "finsem/finset.hpp"
#include "finsem/logic.hpp"

using namespace finsem;

namespace {

std::string testdata(const std::string& name) {
  return std::string(FINSEM_TESTDATA_DIR) + "/" + name;
}

}  // namespace

TEST_SUITE("json_io") {

TEST_CASE("a category file round-trips through its table form") {
  const FinCategory C = categoryFromJson(loadJsonFile(testdata("bool_poset.json")));
  CHECK(C.label == "bool");
  CHECK(C.objects == std::vector<std::string>{"0", "1"});
  CHECK(C.morphisms.size() == 3);
  CHECK(C.composeIn("id1", "le") == "le");
  CHECK(checkCategoryAxioms(C).pass);

  // serialize and parse back — the tables must survive verbatim
  const FinCategory again = categoryFromJson(categoryToJson(C));
  CHECK(again.label == C.label);
  CHECK(again.objects == C.objects);
  CHECK(again.identities == C.identities);
  CHECK(again.compose == C.compose);
  REQUIRE(again.morphisms.size() == C.morphisms.size());
  for (std::size_t i = 0; i < C.morphisms.size(); ++i) {
    CHECK(again.morphisms[i].label == C.morphisms[i].label);
    CHECK(again.morphisms[i].dom == C.morphisms[i].dom);
    CHECK(again.morphisms[i].cod == C.morphisms[i].cod);
  }
}

TEST_CASE("sets and maps decode with reference to a registry") {
  const FinSetObj bit = setFromJson(json{{"set", {{"label", "bit"}, {"elements", {"0", "1"}}}}});
  CHECK(bit.label == "bit");
  CHECK(bit.elements == std::vector<std::string>{"0", "1"});

  // bare inner form (no envelope) is accepted too
  const FinSetObj bare = setFromJson(json{{"label", "bit"}, {"elements", {"0", "1"}}});
  CHECK(bare == bit);

  std::map<std::string, FinSetObj> registry{{"bit", bit}};
  const json mj = {{"map", {{"dom", "bit"},
                            {"cod", "bit"},
                            {"table", {{"0", "1"}, {"1", "0"}}}}}};
  const FinSetMap flip = mapFromJson(mj, registry);
  CHECK(apply(flip, "0") == "1");
  CHECK(apply(flip, "1") == "0");
}

TEST_CASE("map tables must be total and must not overflow the domain") {
  const FinSetObj bit = makeObj("bit", {"0", "1"});
  std::map<std::string, FinSetObj> registry{{"bit", bit}};

  const json missing = {{"map", {{"dom", "bit"}, {"cod", "bit"},
                                 {"table", {{"0", "1"}}}}}};
  CHECK_THROWS_WITH_AS(mapFromJson(missing, registry),
                       doctest::Contains("no entry for element '1'"), Error);

  const json extra = {{"map", {{"dom", "bit"}, {"cod", "bit"},
                               {"table", {{"0", "1"}, {"1", "0"}, {"2", "0"}}}}}};
  CHECK_THROWS_WITH_AS(mapFromJson(extra, registry),
                       doctest::Contains("outside the domain"), Error);

  const json unknown = {{"map", {{"dom", "trit"}, {"cod", "bit"},
                                 {"table", json::object()}}}};
  CHECK_THROWS_WITH_AS(mapFromJson(unknown, registry),
                       doctest::Contains("unknown set 'trit'"), Error);
}

TEST_CASE("functor and natural-transformation files decode and verify") {
  const FinFunctor F = functorFromJson(loadJsonFile(testdata("bool_functor.json")));
  CHECK(F.source.label == "bool");
  CHECK(F.onObject("0") == "0");
  CHECK(F.onMorphism("le") == "le");
  CHECK(checkFunctor(F).pass);

  const FinNatTrans eta = natTransFromJson(loadJsonFile(testdata("bool_nattrans.json")));
  CHECK(eta.components.at("1") == "le");
  CHECK(checkFunctor(eta.source).pass);   // constant-at-0 functor
  CHECK(checkNatTrans(eta).pass);
}

TEST_CASE("a bifunctor file decodes against the product of its factors") {
  FinCategory left, right;
  const FinFunctor meet =
      bifunctorFromJson(loadJsonFile(testdata("bifunctor_meet.json")), left, right);
  CHECK(meet.source.label == "(bool×bool)");
  CHECK(meet.onObject("(1,1)") == "1");
  CHECK(meet.onObject("(0,1)") == "0");
  CHECK(meet.onMorphism("(le,le)") == "le");
  CHECK(checkBifunctor(meet, left, right).pass);
}

TEST_CASE("instance files declare their kind and decode accordingly") {
  const json monJson = loadJsonFile(testdata("monfinset.json"));
  CHECK(instanceKind(monJson) == "monoidal-finset");
  const MonoidalFinSetInstance mon = monoidalInstanceFromJson(monJson);
  REQUIRE(mon.registered.size() == 2);
  CHECK(mon.registered[0].label == "one");
  CHECK(mon.registered[1].elements == std::vector<std::string>{"0", "1"});

  const json catJson = loadJsonFile(testdata("fincat_instance.json"));
  CHECK(instanceKind(catJson) == "fincat");
  const FinCatInstance fc = finCatInstanceFromJson(catJson);
  REQUIRE(fc.registered.size() == 2);
  CHECK(fc.object("z2").morphisms.size() == 2);

  // decoding one kind as the other is an input error, not a crash
  CHECK_THROWS_WITH_AS(monoidalInstanceFromJson(catJson),
                       doctest::Contains("expected kind \"monoidal-finset\""),
                       Error);
  CHECK_THROWS_WITH_AS(finCatInstanceFromJson(monJson),
                       doctest::Contains("expected kind \"fincat\""), Error);
}

TEST_CASE("a valuation file assigns carriers to atoms") {
  const Valuation v = valuationFromJson(loadJsonFile(testdata("valuation.json")));
  REQUIRE(v.size() == 2);
  CHECK(v.at("p").elements == std::vector<std::string>{"a", "b"});
  CHECK(v.at("q").label == "q");
}

TEST_CASE("a diagram file resolves generators to functors between its categories") {
  const Diagram D = diagramFromJson(loadJsonFile(testdata("diagram.json")));
  CHECK(D.indexObjects == std::vector<std::string>{"j", "k"});
  REQUIRE(D.generators.size() == 1);
  CHECK(D.generators[0].label == "u");
  const FinFunctor& Du = D.functors.at("u");
  CHECK(Du.source.label == "bool");
  CHECK(checkFunctor(Du).pass);
}

TEST_CASE("malformed files fail with the right error classes") {
  CHECK_THROWS_WITH_AS(loadJsonFile(testdata("no_such_file.json")),
                       doctest::Contains("cannot open"), Error);
  try {
    loadJsonFile(testdata("no_such_file.json"));
  } catch (const Error& e) {
    CHECK(e.errorClass() == Error::Class::Input);
    CHECK(e.code() == "FileNotFound");
  }

  CHECK_THROWS_WITH_AS(categoryFromJson(json{{"category", {{"objects", {"x"}}}}}),
                       doctest::Contains("missing the 'morphisms' field"), Error);
  CHECK_THROWS_WITH_AS(
      categoryFromJson(json{{"category",
                             {{"objects", {"x"}},
                              {"morphisms", json::array()},
                              {"identities", json::object()},
                              {"compose", {{"gf", "g"}}}}}}),
      doctest::Contains("not of the form \"g|f\""), Error);
  CHECK_THROWS_WITH_AS(setFromJson(json{{"set", {{"label", "A"}}}}),
                       doctest::Contains("missing the 'elements' field"), Error);
  CHECK_THROWS_WITH_AS(instanceKind(json::array()),
                       doctest::Contains("must be a JSON object"), Error);
}

}  // TEST_SUITE
