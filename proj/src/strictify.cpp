#include "finsem/strictify.hpp"

namespace finsem {

std::string CellString::label() const {
  if (gens.empty()) {
    return "[]@" + srcObject;
  }
  std::string out = "[";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) {
      out += ",";
    }
    out += gens[i];
  }
  return out + "]";
}

CellString concatStrings(const CellString& s, const CellString& t) {
  if (t.tgtObject != s.srcObject) {
    failInput("ShapeMismatch", "strings " + s.label() + " and " + t.label() +
                                   " are not composable");
  }
  if (s.gens.empty()) {
    return t;
  }
  if (t.gens.empty()) {
    return s;
  }
  CellString out{t.srcObject, s.tgtObject, s.gens};
  out.gens.insert(out.gens.end(), t.gens.begin(), t.gens.end());
  return out;
}

CellString stringOf(const ExprPtr& e) {
  return CellString{e->src, e->tgt, generatorSequence(e)};
}

}  // namespace finsem
