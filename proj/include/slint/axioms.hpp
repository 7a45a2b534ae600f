#pragma once

#include <algorithm>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "slint/errors.hpp"

namespace slint {

/// forall x. f(x) <= g(x)
struct Inclusion {
  std::string f;
  std::string g;
  std::string label;

  auto operator<=>(const Inclusion&) const = default;
};

/// forall x,y. y <= g(x) -> f(y) <= h(x)   (the flattened form of f(g(x)) <= h(x))
struct Composition {
  std::string f;
  std::string g;
  std::string h;
  std::string label;

  auto operator<=>(const Composition&) const = default;
};

/// Extension functions together with their inclusion and composition axioms.
/// Every function implicitly carries monotonicity.
struct AxiomSet {
  std::set<std::string> functions;
  std::vector<Inclusion> inclusions;
  std::vector<Composition> compositions;

  bool empty() const { return inclusions.empty() && compositions.empty(); }
  std::size_t size() const { return inclusions.size() + compositions.size(); }

  void validate() const {
    auto need = [&](const std::string& fn) {
      if (!functions.count(fn)) throw UsageError("axiom mentions undeclared function '" + fn + "'");
    };
    for (const auto& i : inclusions) {
      need(i.f);
      need(i.g);
    }
    for (const auto& c : compositions) {
      need(c.f);
      need(c.g);
      need(c.h);
    }
  }

  AxiomSet& merge(const AxiomSet& other) {
    functions.insert(other.functions.begin(), other.functions.end());
    for (const auto& i : other.inclusions)
      if (std::find(inclusions.begin(), inclusions.end(), i) == inclusions.end()) inclusions.push_back(i);
    for (const auto& c : other.compositions)
      if (std::find(compositions.begin(), compositions.end(), c) == compositions.end())
        compositions.push_back(c);
    return *this;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Inclusion& i) {
  return os << "inclusion " << i.f << ' ' << i.g;
}

inline std::ostream& operator<<(std::ostream& os, const Composition& c) {
  return os << "composition " << c.f << ' ' << c.g << ' ' << c.h;
}

}  // namespace slint
