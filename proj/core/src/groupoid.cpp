#include "forge/groupoid.hpp"

#include <algorithm>
#include <sstream>

namespace forge {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << violations.size() << " violation(s)";
  for (const auto& v : violations) {
    os << "; " << v.law << " at [";
    for (size_t i = 0; i < v.at.size(); ++i) os << (i ? "," : "") << v.at[i];
    os << "] " << v.detail;
  }
  return os.str();
}

Gpd FinGroupoid::from_tables(std::vector<int> object_ids,
                             std::vector<ArrowData> arrows,
                             std::vector<std::array<int, 3>> compose,
                             std::unordered_map<int, int> identity,
                             std::unordered_map<int, int> inverse) {
  auto g = std::shared_ptr<FinGroupoid>(new FinGroupoid());
  g->object_ids_ = std::move(object_ids);
  for (size_t i = 0; i < g->object_ids_.size(); ++i) {
    if (!g->obj_index_.emplace(g->object_ids_[i], static_cast<int>(i)).second)
      throw MalformedInput("duplicate object id " +
                           std::to_string(g->object_ids_[i]));
  }
  for (const auto& a : arrows) {
    int idx = static_cast<int>(g->arrow_ids_.size());
    if (!g->arr_index_.emplace(a.id, idx).second)
      throw MalformedInput("duplicate arrow id " + std::to_string(a.id));
    g->arrow_ids_.push_back(a.id);
    auto so = g->obj_index_.find(a.src);
    auto to = g->obj_index_.find(a.tgt);
    if (so == g->obj_index_.end() || to == g->obj_index_.end())
      throw MalformedInput("arrow " + std::to_string(a.id) +
                           " references undeclared object");
    g->src_.push_back(so->second);
    g->tgt_.push_back(to->second);
  }
  auto arrow_of = [&](int id, const char* where) {
    auto it = g->arr_index_.find(id);
    if (it == g->arr_index_.end())
      throw MalformedInput(std::string(where) + " references undeclared arrow " +
                           std::to_string(id));
    return it->second;
  };
  g->identity_.assign(g->object_ids_.size(), -1);
  for (const auto& [obj, arr] : identity) {
    auto it = g->obj_index_.find(obj);
    if (it == g->obj_index_.end())
      throw MalformedInput("identity table references undeclared object " +
                           std::to_string(obj));
    g->identity_[it->second] = arrow_of(arr, "identity table");
  }
  for (int x = 0; x < g->n_objects(); ++x)
    if (g->identity_[x] < 0)
      throw MalformedInput("identity table missing entry for object " +
                           std::to_string(g->object_ids_[x]));
  g->inverse_.assign(g->arrow_ids_.size(), -1);
  for (const auto& [a, b] : inverse)
    g->inverse_[arrow_of(a, "inverse table")] = arrow_of(b, "inverse table");
  for (int a = 0; a < g->n_arrows(); ++a)
    if (g->inverse_[a] < 0)
      throw MalformedInput("inverse table missing entry for arrow " +
                           std::to_string(g->arrow_ids_[a]));
  const std::int64_t n = g->n_arrows();
  for (const auto& row : compose) {
    int gi = arrow_of(row[0], "compose table");
    int fi = arrow_of(row[1], "compose table");
    int ci = arrow_of(row[2], "compose table");
    g->compose_.emplace_back(static_cast<std::int64_t>(gi) * n + fi, ci);
  }
  g->finalize();
  return g;
}

void FinGroupoid::finalize() {
  std::sort(compose_.begin(), compose_.end());
  for (size_t i = 1; i < compose_.size(); ++i)
    if (compose_[i].first == compose_[i - 1].first &&
        compose_[i].second != compose_[i - 1].second)
      throw MalformedInput("conflicting compose entries");
  compose_.erase(std::unique(compose_.begin(), compose_.end()), compose_.end());

  const int no = n_objects(), na = n_arrows();
  hom_.assign(no, std::vector<std::vector<int>>(no));
  out_.assign(no, {});
  for (int a = 0; a < na; ++a) {
    hom_[src_[a]][tgt_[a]].push_back(a);
    out_[src_[a]].push_back(a);
  }

  std::uint64_t h = mix(0, static_cast<std::uint64_t>(no));
  h = mix(h, static_cast<std::uint64_t>(na));
  for (int a = 0; a < na; ++a)
    h = mix(h, (static_cast<std::uint64_t>(src_[a]) << 20) ^
                   static_cast<std::uint64_t>(tgt_[a]));
  for (int x = 0; x < no; ++x) h = mix(h, identity_[x]);
  for (int a = 0; a < na; ++a) h = mix(h, inverse_[a]);
  for (const auto& [k, v] : compose_)
    h = mix(h, static_cast<std::uint64_t>(k) * 31 + v);
  hash_ = h;
}

int FinGroupoid::object_index(int id) const {
  auto it = obj_index_.find(id);
  if (it == obj_index_.end())
    throw MalformedInput("unknown object id " + std::to_string(id));
  return it->second;
}

int FinGroupoid::arrow_index(int id) const {
  auto it = arr_index_.find(id);
  if (it == arr_index_.end())
    throw MalformedInput("unknown arrow id " + std::to_string(id));
  return it->second;
}

std::optional<int> FinGroupoid::try_compose(int g, int f) const {
  const std::int64_t key = static_cast<std::int64_t>(g) * n_arrows() + f;
  auto it = std::lower_bound(
      compose_.begin(), compose_.end(), key,
      [](const std::pair<std::int64_t, int>& p, std::int64_t k) {
        return p.first < k;
      });
  if (it == compose_.end() || it->first != key) return std::nullopt;
  return it->second;
}

int FinGroupoid::compose(int g, int f) const {
  if (!composable(g, f))
    throw PreconditionError("compose: arrows not composable");
  auto c = try_compose(g, f);
  if (!c) throw PreconditionError("compose: missing table entry");
  return *c;
}

const std::vector<int>& FinGroupoid::hom(int x, int y) const {
  return hom_[x][y];
}

bool FinGroupoid::same_tables(const FinGroupoid& o) const {
  return this == &o ||
         (hash_ == o.hash_ && src_ == o.src_ && tgt_ == o.tgt_ &&
          identity_ == o.identity_ && inverse_ == o.inverse_ &&
          compose_ == o.compose_);
}

ValidationReport FinGroupoid::validate() const {
  ValidationReport rep;
  auto add = [&](std::string law, std::vector<int> at, std::string detail) {
    rep.violations.push_back({std::move(law), std::move(at), std::move(detail)});
  };
  const int na = n_arrows();
  // Identity arrows must be endo-arrows at their object.
  for (int x = 0; x < n_objects(); ++x) {
    int e = identity_[x];
    if (src_[e] != x || tgt_[e] != x)
      add("identity", {object_ids_[x], arrow_ids_[e]},
          "identity arrow does not loop at its object");
  }
  // Inverse arrows must swap endpoints.
  for (int a = 0; a < na; ++a) {
    int b = inverse_[a];
    if (src_[b] != tgt_[a] || tgt_[b] != src_[a])
      add("src-tgt", {arrow_ids_[a], arrow_ids_[b]},
          "inverse arrow has wrong endpoints");
  }
  // Composition: defined exactly on composable pairs, with correct endpoints.
  for (int f = 0; f < na; ++f)
    for (int g = 0; g < na; ++g) {
      auto c = try_compose(g, f);
      if (composable(g, f)) {
        if (!c) {
          add("compose-domain", {arrow_ids_[g], arrow_ids_[f]},
              "composable pair missing from table");
        } else if (src_[*c] != src_[f] || tgt_[*c] != tgt_[g]) {
          add("compose-ends", {arrow_ids_[g], arrow_ids_[f], arrow_ids_[*c]},
              "composite has wrong endpoints");
        }
      } else if (c) {
        add("compose-domain", {arrow_ids_[g], arrow_ids_[f]},
            "table defines a non-composable pair");
      }
    }
  // From here on, only proceed per-triple when the needed entries exist.
  // Associativity: (h g) f = h (g f) on all composable triples.
  for (int f = 0; f < na; ++f)
    for (int g : out_[tgt_[f]]) {
      auto gf = try_compose(g, f);
      if (!gf) continue;
      for (int h : out_[tgt_[g]]) {
        auto hg = try_compose(h, g);
        auto h_gf = try_compose(h, *gf);
        auto hg_f = hg ? try_compose(*hg, f) : std::nullopt;
        if (hg && h_gf && hg_f && *h_gf != *hg_f)
          add("associativity", {arrow_ids_[h], arrow_ids_[g], arrow_ids_[f]},
              "(h g) f != h (g f)");
      }
    }
  // Units.
  for (int a = 0; a < na; ++a) {
    auto l = try_compose(identity_[tgt_[a]], a);
    auto r = try_compose(a, identity_[src_[a]]);
    if ((l && *l != a) || (r && *r != a))
      add("unit", {arrow_ids_[a]}, "identity does not act as a unit");
  }
  // Inverses: a^-1 a = id_src, a a^-1 = id_tgt.
  for (int a = 0; a < na; ++a) {
    int b = inverse_[a];
    auto ba = try_compose(b, a);
    auto ab = try_compose(a, b);
    bool bad = false;
    if (!ba || *ba != identity_[src_[a]]) bad = true;
    if (!ab || *ab != identity_[tgt_[a]]) bad = true;
    if (bad)
      add("inverse", {arrow_ids_[a]},
          "inverse composite undefined or not the identity");
  }
  return rep;
}

// --- builder ----------------------------------------------------------------

int GroupoidBuilder::add_object() {
  identity_.push_back(-1);
  return n_obj_++;
}

int GroupoidBuilder::add_arrow(int src, int tgt) {
  src_.push_back(src);
  tgt_.push_back(tgt);
  inverse_.push_back(-1);
  return static_cast<int>(src_.size()) - 1;
}

void GroupoidBuilder::set_identity(int obj, int arrow) { identity_[obj] = arrow; }
void GroupoidBuilder::set_inverse(int a, int b) { inverse_[a] = b; }
void GroupoidBuilder::set_compose(int g, int f, int gf) {
  compose_.push_back({g, f, gf});
}

Gpd GroupoidBuilder::build() {
  auto g = std::shared_ptr<FinGroupoid>(new FinGroupoid());
  g->object_ids_.resize(n_obj_);
  for (int i = 0; i < n_obj_; ++i) {
    g->object_ids_[i] = i;
    g->obj_index_.emplace(i, i);
  }
  const int na = static_cast<int>(src_.size());
  g->arrow_ids_.resize(na);
  for (int i = 0; i < na; ++i) {
    g->arrow_ids_[i] = i;
    g->arr_index_.emplace(i, i);
  }
  g->src_ = std::move(src_);
  g->tgt_ = std::move(tgt_);
  for (int x = 0; x < n_obj_; ++x)
    if (identity_[x] < 0)
      throw LawViolation("builder: object " + std::to_string(x) +
                         " has no identity");
  for (int a = 0; a < na; ++a)
    if (inverse_[a] < 0)
      throw LawViolation("builder: arrow " + std::to_string(a) +
                         " has no inverse");
  g->identity_ = std::move(identity_);
  g->inverse_ = std::move(inverse_);
  g->compose_.reserve(compose_.size());
  for (const auto& row : compose_)
    g->compose_.emplace_back(
        static_cast<std::int64_t>(row[0]) * na + row[1], row[2]);
  g->finalize();
  return g;
}

// --- fixtures ---------------------------------------------------------------

Gpd one_gpd() {
  static const Gpd g = [] {
    GroupoidBuilder b;
    int x = b.add_object();
    int e = b.add_arrow(x, x);
    b.set_identity(x, e);
    b.set_inverse(e, e);
    b.set_compose(e, e, e);
    return b.build();
  }();
  return g;
}

Gpd ivl() {
  static const Gpd g = [] {
    GroupoidBuilder b;
    int o0 = b.add_object(), o1 = b.add_object();
    int id0 = b.add_arrow(o0, o0);   // 0
    int id1 = b.add_arrow(o1, o1);   // 1
    int u = b.add_arrow(o0, o1);     // 2
    int uinv = b.add_arrow(o1, o0);  // 3
    b.set_identity(o0, id0);
    b.set_identity(o1, id1);
    b.set_inverse(id0, id0);
    b.set_inverse(id1, id1);
    b.set_inverse(u, uinv);
    b.set_inverse(uinv, u);
    b.set_compose(id0, id0, id0);
    b.set_compose(id1, id1, id1);
    b.set_compose(u, id0, u);
    b.set_compose(id1, u, u);
    b.set_compose(uinv, id1, uinv);
    b.set_compose(id0, uinv, uinv);
    b.set_compose(uinv, u, id0);
    b.set_compose(u, uinv, id1);
    return b.build();
  }();
  return g;
}

Gpd bz2() {
  static const Gpd g = [] {
    GroupoidBuilder b;
    int x = b.add_object();
    int e = b.add_arrow(x, x);  // 0
    int t = b.add_arrow(x, x);  // 1
    b.set_identity(x, e);
    b.set_inverse(e, e);
    b.set_inverse(t, t);
    b.set_compose(e, e, e);
    b.set_compose(e, t, t);
    b.set_compose(t, e, t);
    b.set_compose(t, t, e);
    return b.build();
  }();
  return g;
}

Gpd d2() {
  static const Gpd g = [] {
    GroupoidBuilder b;
    int o0 = b.add_object(), o1 = b.add_object();
    int e0 = b.add_arrow(o0, o0), e1 = b.add_arrow(o1, o1);
    b.set_identity(o0, e0);
    b.set_identity(o1, e1);
    b.set_inverse(e0, e0);
    b.set_inverse(e1, e1);
    b.set_compose(e0, e0, e0);
    b.set_compose(e1, e1, e1);
    return b.build();
  }();
  return g;
}

// --- maps -------------------------------------------------------------------

bool same_gpd(const Gpd& a, const Gpd& b) {
  return a == b || (a && b && a->same_tables(*b));
}

GroupoidMap GroupoidMap::trusted(Gpd dom, Gpd cod, std::vector<int> obj,
                                 std::vector<int> arr) {
  GroupoidMap m;
  m.dom_ = std::move(dom);
  m.cod_ = std::move(cod);
  m.obj_ = std::move(obj);
  m.arr_ = std::move(arr);
  return m;
}

GroupoidMap GroupoidMap::make(Gpd dom, Gpd cod, std::vector<int> obj,
                              std::vector<int> arr) {
  if (static_cast<int>(obj.size()) != dom->n_objects() ||
      static_cast<int>(arr.size()) != dom->n_arrows())
    throw MalformedInput("functor tables have wrong size");
  for (int v : obj)
    if (v < 0 || v >= cod->n_objects())
      throw MalformedInput("functor object table out of range");
  for (int v : arr)
    if (v < 0 || v >= cod->n_arrows())
      throw MalformedInput("functor arrow table out of range");
  GroupoidMap m = trusted(std::move(dom), std::move(cod), std::move(obj),
                          std::move(arr));
  const auto& D = *m.dom_;
  const auto& C = *m.cod_;
  for (int a = 0; a < D.n_arrows(); ++a) {
    int fa = m.arr_[a];
    if (C.src(fa) != m.obj_[D.src(a)] || C.tgt(fa) != m.obj_[D.tgt(a)])
      throw LawViolation("functor does not preserve endpoints at arrow " +
                         std::to_string(D.arrow_id(a)));
  }
  for (int x = 0; x < D.n_objects(); ++x)
    if (m.arr_[D.identity(x)] != C.identity(m.obj_[x]))
      throw LawViolation("functor does not preserve identity at object " +
                         std::to_string(D.object_id(x)));
  for (int f = 0; f < D.n_arrows(); ++f)
    for (int g : D.arrows_from(D.tgt(f))) {
      auto gf = D.try_compose(g, f);
      if (!gf) continue;
      auto c = C.try_compose(m.arr_[g], m.arr_[f]);
      if (!c || *c != m.arr_[*gf])
        throw LawViolation("functor does not preserve composition at (" +
                           std::to_string(D.arrow_id(g)) + "," +
                           std::to_string(D.arrow_id(f)) + ")");
    }
  return m;
}

GroupoidMap GroupoidMap::identity(const Gpd& g) {
  std::vector<int> obj(g->n_objects()), arr(g->n_arrows());
  for (size_t i = 0; i < obj.size(); ++i) obj[i] = static_cast<int>(i);
  for (size_t i = 0; i < arr.size(); ++i) arr[i] = static_cast<int>(i);
  return trusted(g, g, std::move(obj), std::move(arr));
}

GroupoidMap GroupoidMap::after(const GroupoidMap& other) const {
  if (!same_gpd(dom_, other.cod_))
    throw PreconditionError("composition of maps with mismatched middle");
  std::vector<int> obj(other.obj_.size()), arr(other.arr_.size());
  for (size_t i = 0; i < obj.size(); ++i) obj[i] = obj_[other.obj_[i]];
  for (size_t i = 0; i < arr.size(); ++i) arr[i] = arr_[other.arr_[i]];
  return trusted(other.dom_, cod_, std::move(obj), std::move(arr));
}

bool GroupoidMap::is_identity() const {
  if (!same_gpd(dom_, cod_)) return false;
  for (size_t i = 0; i < obj_.size(); ++i)
    if (obj_[i] != static_cast<int>(i)) return false;
  for (size_t i = 0; i < arr_.size(); ++i)
    if (arr_[i] != static_cast<int>(i)) return false;
  return true;
}

bool GroupoidMap::is_iso() const {
  if (dom_->n_objects() != cod_->n_objects() ||
      dom_->n_arrows() != cod_->n_arrows())
    return false;
  std::vector<char> seen(obj_.size(), 0);
  for (int v : obj_) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  std::vector<char> seen2(arr_.size(), 0);
  for (int v : arr_) {
    if (seen2[v]) return false;
    seen2[v] = 1;
  }
  return true;
}

GroupoidMap GroupoidMap::inverse() const {
  if (!is_iso()) throw PreconditionError("inverse of a non-iso map");
  std::vector<int> obj(obj_.size()), arr(arr_.size());
  for (size_t i = 0; i < obj_.size(); ++i) obj[obj_[i]] = static_cast<int>(i);
  for (size_t i = 0; i < arr_.size(); ++i) arr[arr_[i]] = static_cast<int>(i);
  return trusted(cod_, dom_, std::move(obj), std::move(arr));
}

bool operator==(const GroupoidMap& a, const GroupoidMap& b) {
  return same_gpd(a.dom_, b.dom_) && same_gpd(a.cod_, b.cod_) &&
         a.obj_ == b.obj_ && a.arr_ == b.arr_;
}

std::uint64_t GroupoidMap::table_hash() const {
  std::uint64_t h = mix(dom_->table_hash(), cod_->table_hash());
  for (int v : obj_) h = mix(h, v);
  for (int v : arr_) h = mix(h, v);
  return h;
}

// --- squares, slices, isos --------------------------------------------------

bool Square::commutes() const {
  return right.after(top) == bottom.after(left);
}

void Square::require_commutes(const char* who) const {
  if (!commutes())
    throw PreconditionError(std::string(who) + ": square does not commute");
}

SliceMap SliceMap::make(SliceObject src, SliceObject dst, GroupoidMap map) {
  if (!same_gpd(src.base(), dst.base()))
    throw PreconditionError("slice map: objects live over different bases");
  if (!same_gpd(map.dom(), src.total()) || !same_gpd(map.cod(), dst.total()))
    throw PreconditionError("slice map: underlying map has wrong ends");
  if (!(dst.anchor.after(map) == src.anchor))
    throw PreconditionError("slice map: does not commute with anchors");
  return SliceMap{std::move(src), std::move(dst), std::move(map)};
}

SliceMap SliceMap::after(const SliceMap& other) const {
  if (!same_gpd(other.dst.total(), src.total()) ||
      !(other.dst.anchor == src.anchor))
    throw PreconditionError("slice composition: middle objects disagree");
  return SliceMap{other.src, dst, map.after(other.map)};
}

SliceMap SliceMap::globalized() const {
  return SliceMap::make(over_point(src.total()), over_point(dst.total()), map);
}

SliceSquare SliceSquare::make(SliceMap from, SliceMap to, GroupoidMap top,
                              GroupoidMap bottom) {
  // top and bottom must themselves be slice maps, and the square commute.
  if (!(to.src.anchor.after(top) == from.src.anchor) ||
      !(to.dst.anchor.after(bottom) == from.dst.anchor))
    throw PreconditionError("slice square: sides not over the base");
  if (!(to.map.after(top) == bottom.after(from.map)))
    throw PreconditionError("slice square: does not commute");
  return SliceSquare{std::move(from), std::move(to), std::move(top),
                     std::move(bottom)};
}

CanonIso CanonIso::make(GroupoidMap fwd, GroupoidMap bwd) {
  if (!(bwd.after(fwd) == GroupoidMap::identity(fwd.dom())) ||
      !(fwd.after(bwd) == GroupoidMap::identity(fwd.cod())))
    throw LawViolation("canonical iso: maps are not mutually inverse");
  return CanonIso{std::move(fwd), std::move(bwd)};
}

CanonIso CanonIso::identity(const Gpd& g) {
  auto i = GroupoidMap::identity(g);
  return CanonIso{i, i};
}

CanonIso CanonIso::from_iso(const GroupoidMap& f) {
  return CanonIso::make(f, f.inverse());
}

SliceObject over_point(const Gpd& x) { return SliceObject{bang(x)}; }

GroupoidMap bang(const Gpd& x) {
  return GroupoidMap::trusted(x, one_gpd(),
                              std::vector<int>(x->n_objects(), 0),
                              std::vector<int>(x->n_arrows(), 0));
}

}  // namespace forge
