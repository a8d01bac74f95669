#include "finsem/finset.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "finsem/errors.hpp"

namespace finsem {

namespace {

// UTF-8 spellings of the separators used by the canonical encodings.
constexpr const char* kTimes = "×";   // ×  product carrier
constexpr const char* kArrow = "↦";   // ↦  fn-table entry
constexpr const char* kMinus = "∖";   // ∖  complement carrier

std::unordered_map<std::string, std::size_t> indexMap(
    const std::vector<std::string>& elements) {
  std::unordered_map<std::string, std::size_t> out;
  out.reserve(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    out.emplace(elements[i], i);
  }
  return out;
}

std::string tupleLabel(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

// Scans `s` for the first top-level occurrence of the multi-byte separator
// `sep`, where "top level" means bracket depth zero with respect to () and
// []. Returns npos if there is none. Depth counting on raw bytes is sound
// because the brackets are ASCII and UTF-8 continuation bytes never collide
// with them.
std::size_t findTopLevel(const std::string& s, const std::string& sep,
                         std::size_t from = 0) {
  int depth = 0;
  for (std::size_t i = from; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') {
      ++depth;
    } else if (c == ')' || c == ']') {
      --depth;
    } else if (depth == 0 && s.compare(i, sep.size(), sep) == 0) {
      return i;
    }
  }
  return std::string::npos;
}

// "(L<sep>R)" → {L, R}, or nullopt if the shape is not present.
std::optional<std::pair<std::string, std::string>> splitCarrierLabel(
    const std::string& label, const std::string& sep) {
  if (label.size() < 2 + sep.size() || label.front() != '(' ||
      label.back() != ')') {
    return std::nullopt;
  }
  std::string inner = label.substr(1, label.size() - 2);
  std::size_t at = findTopLevel(inner, sep);
  if (at == std::string::npos) {
    return std::nullopt;
  }
  return std::make_pair(inner.substr(0, at), inner.substr(at + sep.size()));
}

// "(l,r)" → {l, r} at the first top-level comma.
std::optional<std::pair<std::string, std::string>> splitTuple(
    const std::string& e) {
  if (e.size() < 2 || e.front() != '(' || e.back() != ')') {
    return std::nullopt;
  }
  std::string inner = e.substr(1, e.size() - 2);
  std::size_t at = findTopLevel(inner, ",");
  if (at == std::string::npos) {
    return std::nullopt;
  }
  return std::make_pair(inner.substr(0, at), inner.substr(at + 1));
}

std::string fnLabel(const std::vector<std::string>& keys,
                    const std::vector<std::string>& images) {
  std::string out = "fn[";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i > 0) {
      out += ",";
    }
    out += keys[i] + kArrow + images[i];
  }
  return out + "]";
}

// "fn[k↦v,...]" → entry list, or nullopt if the shape is not present.
std::optional<std::vector<std::pair<std::string, std::string>>> parseFnLabel(
    const std::string& e) {
  if (e.size() < 4 || e.compare(0, 3, "fn[") != 0 || e.back() != ']') {
    return std::nullopt;
  }
  std::string inner = e.substr(3, e.size() - 4);
  std::vector<std::pair<std::string, std::string>> entries;
  if (inner.empty()) {
    return entries;
  }
  std::size_t start = 0;
  while (true) {
    std::size_t comma = findTopLevel(inner, ",", start);
    std::string entry = inner.substr(
        start, comma == std::string::npos ? comma : comma - start);
    std::size_t at = findTopLevel(entry, kArrow);
    if (at == std::string::npos) {
      return std::nullopt;
    }
    entries.emplace_back(entry.substr(0, at),
                         entry.substr(at + std::string(kArrow).size()));
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return entries;
}

}  // namespace

FinSetObj makeObj(std::string label, std::vector<std::string> elements) {
  std::unordered_set<std::string> seen;
  for (const auto& e : elements) {
    if (!seen.insert(e).second) {
      failInput("MalformedSet",
                "set '" + label + "' repeats element '" + e + "'");
    }
  }
  return FinSetObj{std::move(label), std::move(elements)};
}

FinSetMap makeMap(FinSetObj dom, FinSetObj cod, std::vector<std::string> table) {
  if (table.size() != dom.elements.size()) {
    failInput("MalformedTable",
              "map " + dom.label + " -> " + cod.label + " has " +
                  std::to_string(table.size()) + " entries for " +
                  std::to_string(dom.elements.size()) + " domain elements");
  }
  auto idx = indexMap(cod.elements);
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!idx.count(table[i])) {
      failInput("MalformedTable",
                "image '" + table[i] + "' of '" + dom.elements[i] +
                    "' is not an element of " + cod.label);
    }
  }
  return FinSetMap{std::move(dom), std::move(cod), std::move(table)};
}

FinSetMap identity(const FinSetObj& A) { return FinSetMap{A, A, A.elements}; }

FinSetMap compose(const FinSetMap& g, const FinSetMap& f) {
  if (f.cod != g.dom) {
    failInput("CompositionMismatch",
              "cod of " + f.dom.label + "->" + f.cod.label +
                  " is not dom of " + g.dom.label + "->" + g.cod.label);
  }
  auto idx = indexMap(g.dom.elements);
  std::vector<std::string> table;
  table.reserve(f.table.size());
  for (const auto& mid : f.table) {
    table.push_back(g.table[idx.at(mid)]);
  }
  return FinSetMap{f.dom, g.cod, std::move(table)};
}

FinSetMap emptyMap(const FinSetObj& cod) {
  return FinSetMap{FinSetObj{"0", {}}, cod, {}};
}

FinSetMap constantMap(const FinSetObj& X, const FinSetObj& cod,
                      const std::string& value) {
  if (std::find(cod.elements.begin(), cod.elements.end(), value) ==
      cod.elements.end()) {
    failInput("MalformedTable",
              "constant '" + value + "' is not an element of " + cod.label);
  }
  return FinSetMap{X, cod, std::vector<std::string>(X.size(), value)};
}

ProductData product(const FinSetObj& A, const FinSetObj& B) {
  FinSetObj P{"(" + A.label + kTimes + B.label + ")", {}};
  std::vector<std::string> toA, toB;
  P.elements.reserve(A.size() * B.size());
  for (const auto& a : A.elements) {
    for (const auto& b : B.elements) {
      P.elements.push_back(tupleLabel(a, b));
      toA.push_back(a);
      toB.push_back(b);
    }
  }
  return ProductData{P, FinSetMap{P, A, std::move(toA)},
                     FinSetMap{P, B, std::move(toB)}};
}

FinSetMap pair(const FinSetMap& f, const FinSetMap& g) {
  if (f.dom != g.dom) {
    failInput("DomainMismatch", "pairing needs a common domain; got " +
                                    f.dom.label + " and " + g.dom.label);
  }
  ProductData P = product(f.cod, g.cod);
  std::vector<std::string> table;
  table.reserve(f.table.size());
  for (std::size_t i = 0; i < f.table.size(); ++i) {
    table.push_back(tupleLabel(f.table[i], g.table[i]));
  }
  return FinSetMap{f.dom, P.object, std::move(table)};
}

CoproductData coproduct(const FinSetObj& A, const FinSetObj& B) {
  FinSetObj C{"(" + A.label + "+" + B.label + ")", {}};
  C.elements.reserve(A.size() + B.size());
  std::vector<std::string> fromA, fromB;
  for (const auto& a : A.elements) {
    C.elements.push_back("inl:" + a);
    fromA.push_back("inl:" + a);
  }
  for (const auto& b : B.elements) {
    C.elements.push_back("inr:" + b);
    fromB.push_back("inr:" + b);
  }
  return CoproductData{C, FinSetMap{A, C, std::move(fromA)},
                       FinSetMap{B, C, std::move(fromB)}};
}

FinSetMap copair(const FinSetMap& f, const FinSetMap& g) {
  if (f.cod != g.cod) {
    failInput("CodomainMismatch", "copairing needs a common codomain; got " +
                                      f.cod.label + " and " + g.cod.label);
  }
  CoproductData C = coproduct(f.dom, g.dom);
  std::vector<std::string> table = f.table;
  table.insert(table.end(), g.table.begin(), g.table.end());
  return FinSetMap{C.object, f.cod, std::move(table)};
}

ExponentialData exponential(const FinSetObj& A, const FinSetObj& B) {
  FinSetObj E{"(" + B.label + "^" + A.label + ")", {}};
  // Odometer over image tuples: the image of A's last element varies
  // fastest, which is exactly lexicographic order by image sequence.
  std::vector<std::string> evTable;
  const std::size_t n = A.size();
  if (B.size() == 0 && n > 0) {
    // no functions A → ∅ from nonempty A
  } else {
    std::vector<std::size_t> slot(n, 0);
    while (true) {
      std::vector<std::string> images;
      images.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        images.push_back(B.elements[slot[i]]);
      }
      E.elements.push_back(fnLabel(A.elements, images));
      for (const auto& img : images) {
        evTable.push_back(img);  // ev((h,a_i)) = images[i], A-major order
      }
      std::size_t i = n;
      while (i > 0 && ++slot[i - 1] == B.size()) {
        slot[--i] = 0;
      }
      if (i == 0) {
        break;
      }
    }
  }
  ProductData dom = product(E, A);
  return ExponentialData{E, FinSetMap{dom.object, B, std::move(evTable)}};
}

FinSetMap productMap(const FinSetMap& f, const FinSetMap& g) {
  ProductData dom = product(f.dom, g.dom);
  ProductData cod = product(f.cod, g.cod);
  std::vector<std::string> table;
  table.reserve(f.table.size() * g.table.size());
  for (const auto& fa : f.table) {
    for (const auto& gb : g.table) {
      table.push_back(tupleLabel(fa, gb));
    }
  }
  return FinSetMap{dom.object, cod.object, std::move(table)};
}

FinSetMap curry(const FinSetMap& f, const FinSetObj& X, const FinSetObj& A) {
  if (product(X, A).object != f.dom) {
    failInput("NotAProductDomain",
              "domain of the map is not the canonical product of " + X.label +
                  " and " + A.label);
  }
  ExponentialData E = exponential(A, f.cod);
  std::vector<std::string> table;
  table.reserve(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    std::vector<std::string> images(f.table.begin() + i * A.size(),
                                    f.table.begin() + (i + 1) * A.size());
    table.push_back(fnLabel(A.elements, images));
  }
  return FinSetMap{X, E.object, std::move(table)};
}

FinSetMap curry(const FinSetMap& f) {
  auto labels = splitCarrierLabel(f.dom.label, kTimes);
  if (!labels) {
    failInput("NotAProductDomain", "domain label '" + f.dom.label +
                                       "' has no top-level " + kTimes);
  }
  if (f.dom.elements.empty()) {
    // ∅ = X×A for several (X,A); the factors cannot be recovered from an
    // empty grid. The explicit overload exists for exactly this situation.
    failInput("NotAProductDomain",
              "cannot recover the factors of an empty product domain; pass "
              "them explicitly");
  }
  std::vector<std::string> xs, as;
  for (const auto& e : f.dom.elements) {
    auto parts = splitTuple(e);
    if (!parts) {
      failInput("NotAProductDomain",
                "domain element '" + e + "' is not a tuple label");
    }
    if (xs.empty() || xs.back() != parts->first) {
      xs.push_back(parts->first);
    }
    if (xs.size() == 1) {
      as.push_back(parts->second);
    }
  }
  FinSetObj X{labels->first, std::move(xs)};
  FinSetObj A{labels->second, std::move(as)};
  if (product(X, A).object != f.dom) {
    failInput("NotAProductDomain",
              "domain of the map does not have canonical tuple structure");
  }
  return curry(f, X, A);
}

FinSetMap uncurry(const FinSetMap& g, const FinSetObj& A, const FinSetObj& B) {
  ExponentialData E = exponential(A, B);
  if (E.object != g.cod) {
    failInput("NotAnExponentialCodomain",
              "codomain of the map is not the canonical exponential " +
                  E.object.label);
  }
  auto idx = indexMap(E.object.elements);
  ProductData dom = product(g.dom, A);
  std::vector<std::string> table;
  table.reserve(g.dom.size() * A.size());
  for (std::size_t i = 0; i < g.dom.size(); ++i) {
    std::size_t h = idx.at(g.table[i]);
    // Decode the odometer: slot j has stride |B|^(|A|-1-j).
    std::size_t stride = 1;
    std::vector<std::size_t> strides(A.size());
    for (std::size_t j = A.size(); j-- > 0;) {
      strides[j] = stride;
      stride *= B.size();
    }
    for (std::size_t j = 0; j < A.size(); ++j) {
      table.push_back(B.elements[(h / strides[j]) % B.size()]);
    }
  }
  return FinSetMap{dom.object, B, std::move(table)};
}

FinSetMap uncurry(const FinSetMap& g) {
  auto labels = splitCarrierLabel(g.cod.label, "^");
  if (!labels) {
    failInput("NotAnExponentialCodomain", "codomain label '" + g.cod.label +
                                              "' has no top-level ^");
  }
  if (g.cod.elements.empty()) {
    failInput("NotAnExponentialCodomain",
              "codomain is an empty exponential; the base cannot be empty");
  }
  auto first = parseFnLabel(g.cod.elements.front());
  if (!first) {
    failInput("NotAnExponentialCodomain", "codomain element '" +
                                              g.cod.elements.front() +
                                              "' is not a function label");
  }
  if (first->empty()) {
    // B^∅ is the bare singleton {fn[]} for every B; B is not recoverable.
    failInput("NotAnExponentialCodomain",
              "cannot recover the base of an empty-exponent exponential; "
              "pass the factors explicitly");
  }
  std::vector<std::string> as;
  as.reserve(first->size());
  for (const auto& [k, v] : *first) {
    as.push_back(k);
  }
  // The last slot varies fastest, so the base's canonical order is the order
  // of first appearance of last-slot images.
  std::vector<std::string> bs;
  for (const auto& e : g.cod.elements) {
    auto entries = parseFnLabel(e);
    if (!entries || entries->size() != as.size()) {
      failInput("NotAnExponentialCodomain",
                "codomain elements do not share one function shape");
    }
    const std::string& img = entries->back().second;
    if (std::find(bs.begin(), bs.end(), img) == bs.end()) {
      bs.push_back(img);
    }
  }
  FinSetObj A{labels->second, std::move(as)};
  FinSetObj B{labels->first, std::move(bs)};
  return uncurry(g, A, B);  // verifies the reconstruction structurally
}

ComplementData complementNegation(const FinSetObj& A, const FinSetObj& U) {
  std::unordered_set<std::string> inU(U.elements.begin(), U.elements.end());
  for (const auto& a : A.elements) {
    if (!inU.count(a)) {
      failInput("NotASubset", "element '" + a + "' of " + A.label +
                                  " does not occur in " + U.label);
    }
  }
  std::unordered_set<std::string> inA(A.elements.begin(), A.elements.end());
  FinSetObj C{"(" + U.label + kMinus + A.label + ")", {}};
  for (const auto& u : U.elements) {
    if (!inA.count(u)) {
      C.elements.push_back(u);
    }
  }
  return ComplementData{C, FinSetMap{A, U, A.elements}};
}

DistributionData distribution(const FinSetObj& G, const FinSetObj& A,
                              const FinSetObj& B) {
  CoproductData AB = coproduct(A, B);
  ProductData dom = product(G, AB.object);
  CoproductData cod =
      coproduct(product(G, A).object, product(G, B).object);
  std::vector<std::string> fwd;
  fwd.reserve(dom.object.size());
  for (const auto& g : G.elements) {
    for (const auto& a : A.elements) {
      fwd.push_back("inl:" + tupleLabel(g, a));
    }
    for (const auto& b : B.elements) {
      fwd.push_back("inr:" + tupleLabel(g, b));
    }
  }
  // The forward table was written in dom order (G-major, A block then B
  // block matches the coproduct element order), and it is bijective; invert
  // it positionally.
  FinSetMap forward{dom.object, cod.object, std::move(fwd)};
  auto idx = indexMap(forward.table);
  std::vector<std::string> bwd(cod.object.size());
  for (std::size_t i = 0; i < cod.object.size(); ++i) {
    bwd[i] = forward.dom.elements[idx.at(cod.object.elements[i])];
  }
  return DistributionData{forward,
                          FinSetMap{cod.object, dom.object, std::move(bwd)}};
}

std::optional<unsigned long long> mapCount(const FinSetObj& A,
                                           const FinSetObj& B,
                                           unsigned long long cap) {
  unsigned long long count = 1;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (B.size() == 0) {
      return A.size() == 0 ? std::optional<unsigned long long>(1)
                           : std::optional<unsigned long long>(0);
    }
    if (count > cap / B.size()) {
      return std::nullopt;
    }
    count *= B.size();
  }
  return count;
}

std::vector<FinSetMap> enumerateMaps(const FinSetObj& A, const FinSetObj& B) {
  std::vector<FinSetMap> out;
  if (B.size() == 0 && A.size() > 0) {
    return out;
  }
  std::vector<std::size_t> slot(A.size(), 0);
  while (true) {
    std::vector<std::string> table;
    table.reserve(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
      table.push_back(B.elements[slot[i]]);
    }
    out.push_back(FinSetMap{A, B, std::move(table)});
    std::size_t i = A.size();
    while (i > 0 && ++slot[i - 1] == B.size()) {
      slot[--i] = 0;
    }
    if (i == 0) {
      break;
    }
  }
  return out;
}

const std::string& apply(const FinSetMap& f, const std::string& element) {
  for (std::size_t i = 0; i < f.dom.elements.size(); ++i) {
    if (f.dom.elements[i] == element) {
      return f.table[i];
    }
  }
  failInput("MalformedTable",
            "'" + element + "' is not an element of " + f.dom.label);
}

std::optional<FinSetMap> inverseMap(const FinSetMap& f) {
  if (f.dom.size() != f.cod.size()) {
    return std::nullopt;
  }
  auto idx = indexMap(f.cod.elements);
  std::vector<std::string> inv(f.cod.size());
  std::vector<bool> hit(f.cod.size(), false);
  for (std::size_t i = 0; i < f.table.size(); ++i) {
    std::size_t j = idx.at(f.table[i]);
    if (hit[j]) {
      return std::nullopt;
    }
    hit[j] = true;
    inv[j] = f.dom.elements[i];
  }
  return FinSetMap{f.cod, f.dom, std::move(inv)};
}

}  // namespace finsem
