#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "finsem/bicat.hpp"
#include "finsem/fincat.hpp"
#include "finsem/finset.hpp"
#include "finsem/logic.hpp"

namespace finsem {

// ---------------------------------------------------------------------------
// Wire formats. Every reader accepts either the enveloped form
// ({"set": {...}}, {"category": {...}}, ...) or the bare inner object, and
// raises Input errors (FileNotFound, BadJson, MalformedSet, MalformedTable,
// MalformedInstance) rather than ever guessing at absent fields.
// ---------------------------------------------------------------------------

json loadJsonFile(const std::string& path);

// {"set": {"label": "A", "elements": ["a1", "a2"]}}
FinSetObj setFromJson(const json& j);

// {"map": {"dom": "A", "cod": "B", "table": {"a1": "b2", ...}}} — dom/cod
// name sets in `sets`; the table must be total on dom's elements.
FinSetMap mapFromJson(const json& j,
                      const std::map<std::string, FinSetObj>& sets);

// {"category": {"label": ..., "objects": [...],
//   "morphisms": [{"label","dom","cod"}], "identities": {"X": "id_X"},
//   "compose": {"g|f": "h"}}}
FinCategory categoryFromJson(const json& j);
json categoryToJson(const FinCategory& C);

// {"source": <category>, "target": <category>,
//  "functor": {"objectMap": {...}, "morphismMap": {...}}}
FinFunctor functorFromJson(const json& j);
json functorMapsToJson(const FinFunctor& F);

// {"source": <category>, "target": <category>, "functorF": {maps},
//  "functorG": {maps}, "components": {"X": "m"}}
FinNatTrans natTransFromJson(const json& j);

// {"left": <category>, "right": <category>, "target": <category>,
//  "bifunctor": {"objectMap", "morphismMap"}} — the functor's source is the
// product category left×right, with "(c,d)" object and "(f,g)" morphism
// labels.
FinFunctor bifunctorFromJson(const json& j, FinCategory& leftOut,
                             FinCategory& rightOut);

// {"p": {"elements": [...]}, ...} — each atom's set is labeled by the atom.
Valuation valuationFromJson(const json& j);

// {"instance": {"kind": "monoidal-finset", "sets": [<set inner>...]}}
MonoidalFinSetInstance monoidalInstanceFromJson(const json& j);

// {"instance": {"kind": "fincat", "categories": [<category inner>...]}}
FinCatInstance finCatInstanceFromJson(const json& j);

// Which of the two instance kinds a file declares.
std::string instanceKind(const json& j);

// {"diagram": {"indexObjects": [...], "generators": [{"label","src","dst"}],
//  "categories": {"j": <category inner>},
//  "functors": {"u": {"objectMap", "morphismMap"}}}}
Diagram diagramFromJson(const json& j);

}  // namespace finsem
