#pragma once

#include <cstdint>
#include <vector>

#include "forge/awfs.hpp"
#include "forge/report.hpp"

namespace forge {

// The trivial factorization system on a slice: the middle object is the
// domain, the left part the identity, the right part the map itself.  Every
// map carries the identity retraction as right structure; left maps are
// exactly the isomorphisms.
AwfsInstance degenerate_instance(const Gpd& base);

// The mapping path-space factorization on a slice: the middle object of
// f : X -> Y pairs a point of X with a fibrewise path out of its image, the
// left part inserts constant paths, the right part evaluates the far end.
// Right structure amounts to a normalized choice of path lifts; the search
// picks the least arrow lifting each path and always succeeds on projections.
AwfsInstance groupoid_instance(const Gpd& base);

// The two instance families with their reindexing comparisons.  `at` is
// memoized per base, so repeated lookups share caches; none of this is
// thread-safe.
FibredAwfs degenerate_family();
FibredAwfs groupoid_family();
// Lookup by the names accepted on the command line ("degenerate",
// "groupoid"); MalformedInput otherwise.
FibredAwfs family_by_name(const std::string& name);

// --- generated corpus -------------------------------------------------------

struct CorpusSpec {
  std::uint64_t seed = 0;
  int count = 10;       // number of slice setups
  int max_objects = 6;  // caps per generated groupoid
  int max_arrows = 24;
};

// One generated setup over a random base: a composable pair of projection
// maps (which always admit right structure), one unconstrained slice map,
// and a reindexing functor into the base.
struct CorpusSlice {
  Gpd base;           // Γ
  SliceMap f;         // X -> Y over Γ, a projection
  SliceMap g;         // Y -> W over Γ, a projection; g∘f is defined
  SliceMap r;         // V -> Y over Γ, arbitrary
  GroupoidMap sigma;  // Δ -> Γ
  // A second tower T -> U -> Q built entirely from the factor menu, with at
  // most one nondiscrete factor.  Laws that factor an already-factored map
  // square the middle object's size, so they run on these maps: iterated
  // middles over fibres this small stay enumerable by design.
  SliceMap t;  // T -> U over Γ, a projection
  SliceMap u;  // U -> Q over Γ, a projection; u∘t is defined
};

// Deterministic in the spec: equal specs yield identical slices.
std::vector<CorpusSlice> make_corpus(const CorpusSpec& spec);

// --- exhaustive lifting oracle ----------------------------------------------

// Every diagonal filler of the square (left m, right f, top, bottom): all
// j : cod m -> dom f with j∘m = top and f∘j = bottom, in lexicographic table
// order.  Two complete search strategies are implemented; they must agree:
//   0 — object-then-arrow backtracking with forward consistency checks,
//   1 — spanning-forest search: root images, tree arrow images, and
//       vertex-group images are chosen, the remaining tables are forced.
// Throws CapExceeded when a corner of the square has more arrows than the
// cap (default 64; environment variable AWFS_FORGE_CAP overrides).
std::vector<GroupoidMap> brute_force_lifts(const Square& sq, int strategy = 0);

// The arrow cap brute_force_lifts is currently honouring.
long lifting_cap();

// --- corpus validation ------------------------------------------------------

// Runs the named law checks for one corpus slice against a family: the
// factorization laws, the (co)monad equations, functoriality and naturality
// of the middle action, structure search on the projection, canonical lifts,
// composition and pullback of right structure, and the reindexing
// comparison.  Record ids are prefixed with `label`.
std::vector<CheckRecord> validate_slice(const FibredAwfs& fam,
                                        const CorpusSlice& slice,
                                        const std::string& label);

}  // namespace forge
