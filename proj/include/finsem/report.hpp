#pragma once

#include <string>
#include <utility>

#include "json.hpp"

namespace finsem {

using json = nlohmann::json;

// Outcome of one verification. A failing report always carries at least one
// witness — the counterexample is the product, not the boolean. `details`
// holds non-witness context (budgets used, enumeration counts, notes such as
// a skipped side check). Everything in a Report must be deterministic for
// identical inputs; nothing time- or address-dependent goes in here.
struct Report {
  std::string check;
  bool pass = true;
  json witnesses = json::array();
  json details = json::object();

  static Report passing(std::string name) {
    Report r;
    r.check = std::move(name);
    return r;
  }

  Report& fail(json witness) {
    pass = false;
    witnesses.push_back(std::move(witness));
    return *this;
  }

  // Merge a sub-report: failure propagates, witnesses accumulate.
  Report& absorb(const Report& sub) {
    if (!sub.pass) {
      pass = false;
      for (const auto& w : sub.witnesses) {
        witnesses.push_back(w);
      }
    }
    return *this;
  }

  json toJson() const {
    return json{{"check", check},
                {"details", details},
                {"pass", pass},
                {"witnesses", witnesses}};
  }
};

}  // namespace finsem
