#pragma once

// Which extension functions count as shared between the two sides.  Under
// Theta sharing two functions are related when some axiom mentions both, and
// a function is shared when its class touches both sides.

#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "slint/axioms.hpp"

namespace slint {

enum class SharingMode { Theta, Intersection };

inline const char* to_string(SharingMode m) { return m == SharingMode::Theta ? "theta" : "intersection"; }

struct SharingMap {
  SharingMode mode = SharingMode::Theta;
  std::vector<std::set<std::string>> classes;  ///< partition of all functions, sorted by least member
  std::set<std::string> closure_a;             ///< Theta(Sigma_A)
  std::set<std::string> closure_b;             ///< Theta(Sigma_B)
  std::set<std::string> shared_functions;
  std::set<std::string> shared_constants;

  bool shares(const std::string& fn) const { return shared_functions.count(fn) > 0; }
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent_[std::max(x, y)] = std::min(x, y);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Partition functions by co-occurrence in axioms and close both signatures.
/// In Intersection mode the classes are still reported but sharing is plain
/// Sigma_A /\ Sigma_B.
inline SharingMap theta_sharing(const AxiomSet& k, const std::set<std::string>& sigma_a,
                                const std::set<std::string>& sigma_b, SharingMode mode = SharingMode::Theta) {
  std::vector<std::string> fns;
  std::set<std::string> all(k.functions.begin(), k.functions.end());
  all.insert(sigma_a.begin(), sigma_a.end());
  all.insert(sigma_b.begin(), sigma_b.end());
  for (const auto& i : k.inclusions) all.insert({i.f, i.g});
  for (const auto& c : k.compositions) all.insert({c.f, c.g, c.h});
  fns.assign(all.begin(), all.end());
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < fns.size(); ++i) idx[fns[i]] = i;

  detail::DisjointSets ds(fns.size());
  for (const auto& i : k.inclusions) ds.unite(idx[i.f], idx[i.g]);
  for (const auto& c : k.compositions) {
    ds.unite(idx[c.f], idx[c.g]);
    ds.unite(idx[c.f], idx[c.h]);
  }

  SharingMap out;
  out.mode = mode;
  std::map<std::size_t, std::set<std::string>> by_root;
  for (std::size_t i = 0; i < fns.size(); ++i) by_root[ds.find(i)].insert(fns[i]);
  for (auto& [root, cls] : by_root) out.classes.push_back(cls);

  auto close = [&](const std::set<std::string>& sigma) {
    std::set<std::size_t> roots;
    for (const auto& f : sigma) roots.insert(ds.find(idx[f]));
    std::set<std::string> c;
    for (std::size_t i = 0; i < fns.size(); ++i)
      if (roots.count(ds.find(i))) c.insert(fns[i]);
    return c;
  };
  out.closure_a = close(sigma_a);
  out.closure_b = close(sigma_b);
  const auto& left = mode == SharingMode::Theta ? out.closure_a : sigma_a;
  const auto& right = mode == SharingMode::Theta ? out.closure_b : sigma_b;
  for (const auto& f : left)
    if (right.count(f)) out.shared_functions.insert(f);
  return out;
}

}  // namespace slint
