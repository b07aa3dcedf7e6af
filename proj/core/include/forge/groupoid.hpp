#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

class FinGroupoid;
using Gpd = std::shared_ptr<const FinGroupoid>;

// One violated law found by validate().  `at` holds the external ids involved.
struct Violation {
  std::string law;  // "src-tgt", "identity", "compose-domain", "compose-ends",
                    // "associativity", "unit", "inverse"
  std::vector<int> at;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

// A finite groupoid with explicit tables.  Externally objects and arrows are
// opaque integer ids; internally everything is indexed densely 0..n-1 and all
// operations work on indices.  Values are immutable once built and shared by
// pointer; table equality is the notion of sameness.
class FinGroupoid {
 public:
  struct ArrowData {
    int id;
    int src;  // object id
    int tgt;  // object id
  };

  // Builds from raw tables.  Throws MalformedInput if any id dangles or a
  // table has the wrong shape.  Law violations do NOT throw here; they are
  // reported by validate().
  static Gpd from_tables(std::vector<int> object_ids,
                         std::vector<ArrowData> arrows,
                         std::vector<std::array<int, 3>> compose,  // {g,f,gf}
                         std::unordered_map<int, int> identity,    // obj -> arrow
                         std::unordered_map<int, int> inverse);    // arrow -> arrow

  // Checks every groupoid law over the tables: endpoint bookkeeping,
  // totality/exactness of the composition table, associativity, units,
  // inverses.  Returns all violations with minimal witnesses.
  ValidationReport validate() const;

  // --- sizes and id translation -------------------------------------------
  int n_objects() const { return static_cast<int>(object_ids_.size()); }
  int n_arrows() const { return static_cast<int>(arrow_ids_.size()); }
  int object_id(int idx) const { return object_ids_[idx]; }
  int arrow_id(int idx) const { return arrow_ids_[idx]; }
  int object_index(int id) const;  // throws MalformedInput if unknown
  int arrow_index(int id) const;
  bool has_object_id(int id) const { return obj_index_.count(id) != 0; }
  bool has_arrow_id(int id) const { return arr_index_.count(id) != 0; }

  // --- structure by index --------------------------------------------------
  int src(int a) const { return src_[a]; }
  int tgt(int a) const { return tgt_[a]; }
  int identity(int x) const { return identity_[x]; }
  int inverse(int a) const { return inverse_[a]; }
  bool composable(int g, int f) const { return tgt_[f] == src_[g]; }
  // g after f; throws PreconditionError when not composable or the table
  // lacks the entry (only possible on unvalidated data).
  int compose(int g, int f) const;
  std::optional<int> try_compose(int g, int f) const;

  // Arrows x -> y, by index.  Returned spans live as long as the groupoid.
  const std::vector<int>& hom(int x, int y) const;
  const std::vector<int>& arrows_from(int x) const { return out_[x]; }

  bool same_tables(const FinGroupoid& other) const;

  // Fast content hash (used for memoization keys).
  std::uint64_t table_hash() const { return hash_; }

 private:
  friend class GroupoidBuilder;
  FinGroupoid() = default;
  void finalize();  // builds indices, adjacency, hash

  std::vector<int> object_ids_;
  std::vector<int> arrow_ids_;
  std::unordered_map<int, int> obj_index_;
  std::unordered_map<int, int> arr_index_;
  std::vector<int> src_, tgt_, identity_, inverse_;
  // Composition stored as sorted (g * n_arrows + f, gf) pairs, indices.
  std::vector<std::pair<std::int64_t, int>> compose_;
  std::vector<std::vector<std::vector<int>>> hom_;  // [x][y] -> arrow indices
  std::vector<std::vector<int>> out_;               // [x] -> arrow indices
  std::uint64_t hash_ = 0;
};

// Incremental builder used by every internal construction.  Ids are assigned
// densely in insertion order, so any construction that enumerates its input
// deterministically yields identical tables on identical inputs.
class GroupoidBuilder {
 public:
  int add_object();                 // returns new object index (== id)
  int add_arrow(int src, int tgt);  // returns new arrow index (== id)
  void set_identity(int obj, int arrow);
  void set_inverse(int a, int b);
  void set_compose(int g, int f, int gf);
  int n_objects() const { return n_obj_; }
  int n_arrows() const { return static_cast<int>(src_.size()); }
  Gpd build();  // finalizes; throws LawViolation on missing identity/inverse rows

 private:
  int n_obj_ = 0;
  std::vector<int> src_, tgt_;
  std::vector<int> identity_, inverse_;
  std::vector<std::array<int, 3>> compose_;
};

// --- fixtures ---------------------------------------------------------------
// Shared immutable instances; repeated calls return the same pointer.
Gpd one_gpd();  // terminal: one object, its identity
Gpd ivl();      // walking isomorphism: objects 0,1; u : 0 -> 1 and u^-1
Gpd bz2();      // one object, arrows {e, t}, t*t = e
Gpd d2();       // two objects, identities only

// Arrow ids in ivl(), for tests and fixtures.
inline constexpr int kIvlId0 = 0, kIvlId1 = 1, kIvlU = 2, kIvlUInv = 3;
// Arrow ids in bz2().
inline constexpr int kBz2E = 0, kBz2T = 1;

// A functor between finite groupoids, stored as dense index tables.
class GroupoidMap {
 public:
  GroupoidMap() = default;

  // Validating constructor: checks endpoints, identities and composition.
  // Throws MalformedInput for shape problems, LawViolation for functor laws.
  static GroupoidMap make(Gpd dom, Gpd cod, std::vector<int> obj,
                          std::vector<int> arr);
  // For maps that are functors by construction (composites, projections,
  // mediating maps).  Skips the law check.
  static GroupoidMap trusted(Gpd dom, Gpd cod, std::vector<int> obj,
                             std::vector<int> arr);

  static GroupoidMap identity(const Gpd& g);
  // this∘other (other first).  Checks middle objects agree by table equality.
  GroupoidMap after(const GroupoidMap& other) const;

  const Gpd& dom() const { return dom_; }
  const Gpd& cod() const { return cod_; }
  int on_object(int idx) const { return obj_[idx]; }
  int on_arrow(int idx) const { return arr_[idx]; }
  const std::vector<int>& object_table() const { return obj_; }
  const std::vector<int>& arrow_table() const { return arr_; }

  bool is_identity() const;
  bool is_iso() const;  // bijective on objects and arrows
  GroupoidMap inverse() const;  // throws PreconditionError when not iso

  // Table equality (dom/cod compared by table identity as well).
  friend bool operator==(const GroupoidMap& a, const GroupoidMap& b);

  std::uint64_t table_hash() const;

 private:
  Gpd dom_, cod_;
  std::vector<int> obj_, arr_;
};

// True when the groupoids are the same object or have equal tables.
bool same_gpd(const Gpd& a, const Gpd& b);

// A commuting square of functors: right∘top = bottom∘left, with
// left : A -> B, top : A -> C, right : C -> D, bottom : B -> D.
struct Square {
  GroupoidMap top, bottom, left, right;
  bool commutes() const;
  void require_commutes(const char* who) const;  // PreconditionError when not
};

// An object of a slice: a groupoid anchored over a base.
struct SliceObject {
  GroupoidMap anchor;  // total -> base
  const Gpd& total() const { return anchor.dom(); }
  const Gpd& base() const { return anchor.cod(); }
};

// A map of slice objects over the same base: anchor_dst ∘ map = anchor_src.
struct SliceMap {
  SliceObject src, dst;
  GroupoidMap map;

  static SliceMap make(SliceObject src, SliceObject dst, GroupoidMap map);
  const Gpd& base() const { return src.base(); }
  // this∘other; PreconditionError when the middle slice objects disagree.
  SliceMap after(const SliceMap& other) const;
  // The same underlying functor regarded over the terminal groupoid.
  SliceMap globalized() const;
};

// A commuting square of slice maps over one base; `top` runs between the
// domains and `bottom` between the codomains.
struct SliceSquare {
  SliceMap from, to;         // from = f', to = f
  GroupoidMap top, bottom;   // dom f' -> dom f, cod f' -> cod f

  static SliceSquare make(SliceMap from, SliceMap to, GroupoidMap top,
                          GroupoidMap bottom);
};

// A verified pair of mutually inverse functors.
struct CanonIso {
  GroupoidMap fwd, bwd;
  static CanonIso make(GroupoidMap fwd, GroupoidMap bwd);  // checks both laws
  static CanonIso identity(const Gpd& g);
  static CanonIso from_iso(const GroupoidMap& f);  // inverts a bijective map
};

// Global slice: X regarded over the terminal groupoid.
SliceObject over_point(const Gpd& x);
GroupoidMap bang(const Gpd& x);  // unique map X -> ONE

}  // namespace forge
