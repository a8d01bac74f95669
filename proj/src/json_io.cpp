#include "finsem/json_io.hpp"

#include <fstream>

#include "finsem/errors.hpp"

namespace finsem {

namespace {

// Unwrap {"<key>": {...}} envelopes; bare inner objects pass through.
const json& inner(const json& j, const char* key) {
  if (j.is_object() && j.contains(key)) {
    return j.at(key);
  }
  return j;
}

void requireObject(const json& j, const std::string& what) {
  if (!j.is_object()) {
    failInput("BadJson", what + " must be a JSON object");
  }
}

const json& field(const json& j, const char* name, const std::string& what) {
  if (!j.contains(name)) {
    failInput("BadJson", what + " is missing the '" + name + "' field");
  }
  return j.at(name);
}

std::vector<std::string> stringList(const json& j, const std::string& what) {
  if (!j.is_array()) {
    failInput("BadJson", what + " must be an array of strings");
  }
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) {
      failInput("BadJson", what + " must contain only strings");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::map<std::string, std::string> stringMap(const json& j,
                                             const std::string& what) {
  requireObject(j, what);
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) {
      failInput("BadJson", what + " values must be strings");
    }
    out[k] = v.get<std::string>();
  }
  return out;
}

}  // namespace

json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    failInput("FileNotFound", "cannot open '" + path + "'");
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    failInput("BadJson", "'" + path + "' is not valid JSON");
  }
  return j;
}

FinSetObj setFromJson(const json& j) {
  const json& s = inner(j, "set");
  requireObject(s, "a set");
  const json& elems = field(s, "elements", "a set");
  std::string label = s.contains("label")
                          ? field(s, "label", "a set").get<std::string>()
                          : std::string("A");
  return makeObj(std::move(label), stringList(elems, "set elements"));
}

FinSetMap mapFromJson(const json& j,
                      const std::map<std::string, FinSetObj>& sets) {
  const json& m = inner(j, "map");
  requireObject(m, "a map");
  const std::string domLabel =
      field(m, "dom", "a map").get<std::string>();
  const std::string codLabel =
      field(m, "cod", "a map").get<std::string>();
  auto lookup = [&](const std::string& label) -> const FinSetObj& {
    auto it = sets.find(label);
    if (it == sets.end()) {
      failInput("MalformedSet", "map references unknown set '" + label + "'");
    }
    return it->second;
  };
  const FinSetObj& dom = lookup(domLabel);
  const FinSetObj& cod = lookup(codLabel);
  const json& table = field(m, "table", "a map");
  requireObject(table, "a map table");
  std::vector<std::string> images;
  for (const auto& el : dom.elements) {
    if (!table.contains(el)) {
      failInput("MalformedTable",
                "map table has no entry for element '" + el + "'");
    }
    images.push_back(table.at(el).get<std::string>());
  }
  if (table.size() != dom.elements.size()) {
    failInput("MalformedTable",
              "map table has entries outside the domain");
  }
  return makeMap(dom, cod, std::move(images));
}

FinCategory categoryFromJson(const json& j) {
  const json& c = inner(j, "category");
  requireObject(c, "a category");
  FinCategory out;
  out.label = c.contains("label") ? c.at("label").get<std::string>()
                                  : std::string("C");
  out.objects = stringList(field(c, "objects", "a category"),
                           "category objects");
  const json& morphisms = field(c, "morphisms", "a category");
  if (!morphisms.is_array()) {
    failInput("BadJson", "category morphisms must be an array");
  }
  for (const auto& m : morphisms) {
    requireObject(m, "a morphism");
    out.morphisms.push_back({field(m, "label", "a morphism").get<std::string>(),
                             field(m, "dom", "a morphism").get<std::string>(),
                             field(m, "cod", "a morphism").get<std::string>()});
  }
  out.identities =
      stringMap(field(c, "identities", "a category"), "category identities");
  const json& compose = field(c, "compose", "a category");
  requireObject(compose, "a composition table");
  for (const auto& [key, value] : compose.items()) {
    const std::size_t bar = key.find('|');
    if (bar == std::string::npos) {
      failInput("BadJson", "composition key '" + key +
                               "' is not of the form \"g|f\"");
    }
    if (!value.is_string()) {
      failInput("BadJson", "composite for '" + key + "' must be a string");
    }
    out.compose[{key.substr(0, bar), key.substr(bar + 1)}] =
        value.get<std::string>();
  }
  return out;
}

json categoryToJson(const FinCategory& C) {
  json morphisms = json::array();
  for (const auto& m : C.morphisms) {
    morphisms.push_back(
        json{{"label", m.label}, {"dom", m.dom}, {"cod", m.cod}});
  }
  json compose = json::object();
  for (const auto& [pair, h] : C.compose) {
    compose[pair.first + "|" + pair.second] = h;
  }
  return json{{"category", json{{"label", C.label},
                                {"objects", C.objects},
                                {"morphisms", morphisms},
                                {"identities", C.identities},
                                {"compose", compose}}}};
}

namespace {

FinFunctor functorMapsFromJson(const json& maps, FinCategory source,
                               FinCategory target) {
  requireObject(maps, "a functor");
  FinFunctor F;
  F.source = std::move(source);
  F.target = std::move(target);
  F.objectMap =
      stringMap(field(maps, "objectMap", "a functor"), "an object map");
  F.morphismMap =
      stringMap(field(maps, "morphismMap", "a functor"), "a morphism map");
  return F;
}

}  // namespace

FinFunctor functorFromJson(const json& j) {
  requireObject(j, "a functor file");
  return functorMapsFromJson(field(j, "functor", "a functor file"),
                             categoryFromJson(field(j, "source", "a functor file")),
                             categoryFromJson(field(j, "target", "a functor file")));
}

json functorMapsToJson(const FinFunctor& F) {
  return json{{"objectMap", F.objectMap}, {"morphismMap", F.morphismMap}};
}

FinNatTrans natTransFromJson(const json& j) {
  requireObject(j, "a natural-transformation file");
  FinCategory source =
      categoryFromJson(field(j, "source", "a natural-transformation file"));
  FinCategory target =
      categoryFromJson(field(j, "target", "a natural-transformation file"));
  FinNatTrans eta;
  eta.source = functorMapsFromJson(
      field(j, "functorF", "a natural-transformation file"), source, target);
  eta.target = functorMapsFromJson(
      field(j, "functorG", "a natural-transformation file"), source, target);
  eta.components =
      stringMap(field(j, "components", "a natural-transformation file"),
                "nat-trans components");
  return eta;
}

FinFunctor bifunctorFromJson(const json& j, FinCategory& leftOut,
                             FinCategory& rightOut) {
  requireObject(j, "a bifunctor file");
  leftOut = categoryFromJson(field(j, "left", "a bifunctor file"));
  rightOut = categoryFromJson(field(j, "right", "a bifunctor file"));
  FinCategory target =
      categoryFromJson(field(j, "target", "a bifunctor file"));
  return functorMapsFromJson(field(j, "bifunctor", "a bifunctor file"),
                             productCategory(leftOut, rightOut),
                             std::move(target));
}

Valuation valuationFromJson(const json& j) {
  requireObject(j, "a valuation");
  Valuation v;
  for (const auto& [atom, body] : j.items()) {
    requireObject(body, "valuation entry '" + atom + "'");
    v[atom] = makeObj(
        atom, stringList(field(body, "elements", "valuation entry '" + atom + "'"),
                         "valuation elements"));
  }
  return v;
}

std::string instanceKind(const json& j) {
  const json& i = inner(j, "instance");
  requireObject(i, "an instance");
  return field(i, "kind", "an instance").get<std::string>();
}

MonoidalFinSetInstance monoidalInstanceFromJson(const json& j) {
  const json& i = inner(j, "instance");
  requireObject(i, "an instance");
  if (field(i, "kind", "an instance").get<std::string>() !=
      "monoidal-finset") {
    failInput("MalformedInstance",
              "expected kind \"monoidal-finset\", got \"" +
                  i.at("kind").get<std::string>() + "\"");
  }
  const json& sets = field(i, "sets", "a monoidal-finset instance");
  if (!sets.is_array()) {
    failInput("BadJson", "instance sets must be an array");
  }
  std::vector<FinSetObj> registered;
  for (const auto& s : sets) {
    registered.push_back(setFromJson(s));
  }
  return MonoidalFinSetInstance(std::move(registered));
}

FinCatInstance finCatInstanceFromJson(const json& j) {
  const json& i = inner(j, "instance");
  requireObject(i, "an instance");
  if (field(i, "kind", "an instance").get<std::string>() != "fincat") {
    failInput("MalformedInstance", "expected kind \"fincat\", got \"" +
                                       i.at("kind").get<std::string>() + "\"");
  }
  const json& cats = field(i, "categories", "a fincat instance");
  if (!cats.is_array()) {
    failInput("BadJson", "instance categories must be an array");
  }
  std::vector<FinCategory> registered;
  for (const auto& c : cats) {
    registered.push_back(categoryFromJson(c));
  }
  return FinCatInstance(std::move(registered));
}

Diagram diagramFromJson(const json& j) {
  const json& d = inner(j, "diagram");
  requireObject(d, "a diagram");
  Diagram out;
  out.indexObjects =
      stringList(field(d, "indexObjects", "a diagram"), "index objects");
  const json& gens = field(d, "generators", "a diagram");
  if (!gens.is_array()) {
    failInput("BadJson", "diagram generators must be an array");
  }
  for (const auto& g : gens) {
    requireObject(g, "a diagram generator");
    out.generators.push_back(
        {field(g, "label", "a generator").get<std::string>(),
         field(g, "src", "a generator").get<std::string>(),
         field(g, "dst", "a generator").get<std::string>()});
  }
  const json& cats = field(d, "categories", "a diagram");
  requireObject(cats, "diagram categories");
  for (const auto& [idx, c] : cats.items()) {
    out.categories[idx] = categoryFromJson(c);
  }
  const json& functors = field(d, "functors", "a diagram");
  requireObject(functors, "diagram functors");
  for (const auto& g : out.generators) {
    if (!functors.contains(g.label)) {
      failInput("BadJson",
                "diagram has no functor for generator '" + g.label + "'");
    }
    auto srcIt = out.categories.find(g.src);
    auto dstIt = out.categories.find(g.dst);
    if (srcIt == out.categories.end() || dstIt == out.categories.end()) {
      failInput("MalformedTable", "generator '" + g.label +
                                      "' references an index object with no "
                                      "category");
    }
    out.functors[g.label] = functorMapsFromJson(
        functors.at(g.label), srcIt->second, dstIt->second);
  }
  return out;
}

}  // namespace finsem
