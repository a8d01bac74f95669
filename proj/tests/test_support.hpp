#pragma once

// Shared fixtures for the law-check suites: small categories that exercise
// distinct axioms (a thin poset, a one-object group), a small one-object
// instance over finite sets, and a deliberately broken wrapper whose
// associator is a bijection with the right boundaries but the wrong
// rebracketing — the fault every coherence check must be able to detect.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "finsem/bicat.hpp"
#include "finsem/fincat.hpp"
#include "finsem/finset.hpp"

namespace testsupport {

using namespace finsem;

inline FinCategory booleanPoset() {
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

inline FinCategory twoElementGroup() {
  FinCategory C;
  C.label = "z2";
  C.objects = {"•"};
  C.morphisms = {{"e", "•", "•"}, {"g", "•", "•"}};
  C.identities = {{"•", "e"}};
  C.compose = {{{"e", "e"}, "e"},
               {{"e", "g"}, "g"},
               {{"g", "e"}, "g"},
               {{"g", "g"}, "e"}};
  return C;
}

inline MonoidalFinSetInstance smallMonoidal() {
  return MonoidalFinSetInstance{{makeObj("1", {"*"}),
                                 makeObj("bit", {"0", "1"}),
                                 makeObj("tri", {"a", "b", "c"})}};
}

struct CorruptedAssociator {
  using Cell1 = MonoidalFinSetInstance::Cell1;
  using Cell2 = MonoidalFinSetInstance::Cell2;

  MonoidalFinSetInstance base;

  std::string src(const Cell1& f) const { return base.src(f); }
  std::string dst(const Cell1& f) const { return base.dst(f); }
  bool equal1(const Cell1& a, const Cell1& b) const {
    return base.equal1(a, b);
  }
  Cell1 id1(const std::string& o) const { return base.id1(o); }
  Cell1 hcomp1(const Cell1& g, const Cell1& f) const {
    return base.hcomp1(g, f);
  }
  Cell1 dom2(const Cell2& a) const { return base.dom2(a); }
  Cell1 cod2(const Cell2& a) const { return base.cod2(a); }
  Cell2 id2(const Cell1& f) const { return base.id2(f); }
  Cell2 vcomp(const Cell2& b, const Cell2& a) const { return base.vcomp(b, a); }
  Cell2 hcomp2(const Cell2& b, const Cell2& a) const {
    return base.hcomp2(b, a);
  }
  Cell2 assoc(const Cell1& f, const Cell1& g, const Cell1& h) const {
    auto a = base.assoc(f, g, h);
    if (a.table.size() > 1) {
      std::reverse(a.table.begin(), a.table.end());
    }
    return a;
  }
  Cell2 lunit(const Cell1& f) const { return base.lunit(f); }
  Cell2 runit(const Cell1& f) const { return base.runit(f); }
  std::optional<Cell2> inverse(const Cell2& a) const {
    return base.inverse(a);
  }
  bool equal2(const Cell2& a, const Cell2& b) const {
    return base.equal2(a, b);
  }
  std::vector<Cell2> twoCells(const Cell1& f, const Cell1& g) const {
    return base.twoCells(f, g);
  }
  std::string label1(const Cell1& f) const { return base.label1(f); }
  std::string label2(const Cell2& a) const { return base.label2(a); }
};

static_assert(Bicategory<CorruptedAssociator>);

// Horizontal composition twisted by a codomain reversal once the result is
// large enough: every boundary survives, but interchange — and with it the
// bookkeeping that transports 2-cells through a strictification — does not.
struct CorruptedInterchange {
  using Cell1 = MonoidalFinSetInstance::Cell1;
  using Cell2 = MonoidalFinSetInstance::Cell2;

  MonoidalFinSetInstance base;

  std::string src(const Cell1& f) const { return base.src(f); }
  std::string dst(const Cell1& f) const { return base.dst(f); }
  bool equal1(const Cell1& a, const Cell1& b) const {
    return base.equal1(a, b);
  }
  Cell1 id1(const std::string& o) const { return base.id1(o); }
  Cell1 hcomp1(const Cell1& g, const Cell1& f) const {
    return base.hcomp1(g, f);
  }
  Cell1 dom2(const Cell2& a) const { return base.dom2(a); }
  Cell1 cod2(const Cell2& a) const { return base.cod2(a); }
  Cell2 id2(const Cell1& f) const { return base.id2(f); }
  Cell2 vcomp(const Cell2& b, const Cell2& a) const { return base.vcomp(b, a); }
  Cell2 hcomp2(const Cell2& b, const Cell2& a) const {
    auto cell = base.hcomp2(b, a);
    const auto& elems = cell.cod.elements;
    if (elems.size() >= 8) {
      for (auto& image : cell.table) {
        auto it = std::find(elems.begin(), elems.end(), image);
        image = elems[elems.size() - 1 - (it - elems.begin())];
      }
    }
    return cell;
  }
  Cell2 assoc(const Cell1& f, const Cell1& g, const Cell1& h) const {
    return base.assoc(f, g, h);
  }
  Cell2 lunit(const Cell1& f) const { return base.lunit(f); }
  Cell2 runit(const Cell1& f) const { return base.runit(f); }
  std::optional<Cell2> inverse(const Cell2& a) const {
    return base.inverse(a);
  }
  bool equal2(const Cell2& a, const Cell2& b) const {
    return base.equal2(a, b);
  }
  std::vector<Cell2> twoCells(const Cell1& f, const Cell1& g) const {
    return base.twoCells(f, g);
  }
  std::string label1(const Cell1& f) const { return base.label1(f); }
  std::string label2(const Cell2& a) const { return base.label2(a); }
};

static_assert(Bicategory<CorruptedInterchange>);

}  // namespace testsupport
