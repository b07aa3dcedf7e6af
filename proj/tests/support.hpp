// Shared helpers for the test suite.  The enumeration code here is written
// directly against the groupoid tables on purpose: it serves as an oracle that
// is independent of the library's pullback / lifting machinery.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "forge/groupoid.hpp"

namespace forge::testing {

// Enumerates every functor dom -> cod by exhaustive assignment with early
// endpoint pruning, optionally filtered by a per-candidate predicate run on
// the completed tables before functor-law checking.
inline std::vector<GroupoidMap> enumerate_functors(const Gpd& dom,
                                                   const Gpd& cod) {
  std::vector<GroupoidMap> out;
  const auto& D = *dom;
  const auto& C = *cod;
  std::vector<int> obj(D.n_objects(), -1), arr(D.n_arrows(), -1);

  std::function<void(int)> arrows = [&](int a) {
    if (a == D.n_arrows()) {
      try {
        out.push_back(GroupoidMap::make(dom, cod, obj, arr));
      } catch (const Error&) {
      }
      return;
    }
    for (int c = 0; c < C.n_arrows(); ++c) {
      if (C.src(c) != obj[D.src(a)] || C.tgt(c) != obj[D.tgt(a)]) continue;
      arr[a] = c;
      arrows(a + 1);
      arr[a] = -1;
    }
  };
  std::function<void(int)> objects = [&](int x) {
    if (x == D.n_objects()) {
      arrows(0);
      return;
    }
    for (int c = 0; c < C.n_objects(); ++c) {
      obj[x] = c;
      objects(x + 1);
      obj[x] = -1;
    }
  };
  objects(0);
  return out;
}

// All commuting cones (u, v) from apex over the cospan (f, g), i.e. pairs
// with f∘u = g∘v.
inline std::vector<std::pair<GroupoidMap, GroupoidMap>> enumerate_cones(
    const Gpd& apex, const GroupoidMap& f, const GroupoidMap& g) {
  std::vector<std::pair<GroupoidMap, GroupoidMap>> cones;
  auto us = enumerate_functors(apex, f.dom());
  auto vs = enumerate_functors(apex, g.dom());
  for (const auto& u : us)
    for (const auto& v : vs)
      if (f.after(u) == g.after(v)) cones.push_back({u, v});
  return cones;
}

// Counts maps w : apex -> p_total with p1∘w = u and p2∘w = v.
inline int count_factorizations(const Gpd& apex, const Gpd& p_total,
                                const GroupoidMap& p1, const GroupoidMap& p2,
                                const GroupoidMap& u, const GroupoidMap& v) {
  int n = 0;
  for (const auto& w : enumerate_functors(apex, p_total))
    if (p1.after(w) == u && p2.after(w) == v) ++n;
  return n;
}

}  // namespace forge::testing
