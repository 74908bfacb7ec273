#include "reflekt/fincat.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "reflekt/error.hpp"

namespace reflekt {

namespace {

constexpr long kMorphismLimit = 20000;

std::string tuple_name(const std::vector<std::string>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += ",";
    out += parts[i];
  }
  out += ")";
  return out;
}

// Builds the total composition table by asking `comp` for every composable
// pair of the given morphisms.
std::vector<std::array<std::string, 3>> total_table(
    const std::vector<Morph>& morphisms,
    const std::function<std::string(const Morph&, const Morph&)>& comp) {
  std::vector<std::array<std::string, 3>> table;
  for (const Morph& g : morphisms)
    for (const Morph& f : morphisms)
      if (f.tgt == g.src) table.push_back({g.id, f.id, comp(g, f)});
  return table;
}

std::string fresh_name(const FinCat& c, std::string base) {
  while (c.has_object(base)) base += "'";
  return base;
}

}  // namespace

FinCat::FinCat(std::vector<std::string> objects, std::vector<Morph> morphisms,
               std::map<std::string, std::string> identity,
               std::vector<std::array<std::string, 3>> compose_table)
    : objects_(std::move(objects)), morphisms_(std::move(morphisms)) {
  if (static_cast<long>(morphisms_.size()) > kMorphismLimit)
    fail(errc::size_limit, "category has " + std::to_string(morphisms_.size()) +
                               " morphisms; the limit is " + std::to_string(kMorphismLimit));
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    if (objects_[i].empty()) fail(errc::bad_input, "empty object name");
    if (!object_index_.emplace(objects_[i], static_cast<long>(i)).second)
      fail(errc::bad_input, "duplicate object '" + objects_[i] + "'");
  }
  for (std::size_t i = 0; i < morphisms_.size(); ++i) {
    const Morph& m = morphisms_[i];
    if (m.id.empty()) fail(errc::bad_input, "empty morphism id");
    if (!morphism_index_.emplace(m.id, static_cast<long>(i)).second)
      fail(errc::bad_input, "duplicate morphism '" + m.id + "'");
    if (!object_index_.count(m.src))
      fail(errc::unknown_object, "morphism '" + m.id + "' has unknown source '" + m.src + "'");
    if (!object_index_.count(m.tgt))
      fail(errc::unknown_object, "morphism '" + m.id + "' has unknown target '" + m.tgt + "'");
  }
  identity_.assign(objects_.size(), -1);
  for (const auto& [obj, mor] : identity) {
    auto oit = object_index_.find(obj);
    if (oit == object_index_.end()) fail(errc::unknown_object, "identity for unknown object '" + obj + "'");
    auto mit = morphism_index_.find(mor);
    if (mit == morphism_index_.end())
      fail(errc::unknown_morphism, "identity morphism '" + mor + "' is not listed");
    const Morph& m = morphisms_[mit->second];
    if (m.src != obj || m.tgt != obj)
      fail(errc::bad_input, "identity of '" + obj + "' must be an endomorphism of it");
    identity_[oit->second] = mit->second;
  }
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (identity_[i] < 0) fail(errc::bad_input, "object '" + objects_[i] + "' has no identity");

  for (const auto& row : compose_table) {
    auto git = morphism_index_.find(row[0]);
    auto fit = morphism_index_.find(row[1]);
    auto rit = morphism_index_.find(row[2]);
    if (git == morphism_index_.end() || fit == morphism_index_.end() || rit == morphism_index_.end())
      fail(errc::unknown_morphism, "composition row mentions an unknown morphism");
    const Morph& g = morphisms_[git->second];
    const Morph& f = morphisms_[fit->second];
    const Morph& r = morphisms_[rit->second];
    if (f.tgt != g.src)
      fail(errc::bad_input, "table entry for non-composable pair ('" + g.id + "', '" + f.id + "')");
    if (r.src != f.src || r.tgt != g.tgt)
      fail(errc::bad_input, "composite of ('" + g.id + "', '" + f.id + "') has wrong endpoints");
    if (!compose_.emplace(pair_key(git->second, fit->second), rit->second).second)
      fail(errc::bad_input, "duplicate table entry for ('" + g.id + "', '" + f.id + "')");
  }
  // The table must cover every composable pair.
  for (std::size_t f = 0; f < morphisms_.size(); ++f)
    for (std::size_t g = 0; g < morphisms_.size(); ++g)
      if (morphisms_[f].tgt == morphisms_[g].src &&
          !compose_.count(pair_key(static_cast<long>(g), static_cast<long>(f))))
        fail(errc::bad_input, "missing composition for ('" + morphisms_[g].id + "', '" +
                                  morphisms_[f].id + "')");
}

bool FinCat::has_object(const std::string& name) const { return object_index_.count(name) > 0; }

bool FinCat::has_morphism(const std::string& name) const { return morphism_index_.count(name) > 0; }

long FinCat::object_index(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) fail(errc::unknown_object, "unknown object '" + name + "'");
  return it->second;
}

long FinCat::morphism_index(const std::string& name) const {
  auto it = morphism_index_.find(name);
  if (it == morphism_index_.end()) fail(errc::unknown_morphism, "unknown morphism '" + name + "'");
  return it->second;
}

const Morph& FinCat::morphism(const std::string& name) const {
  return morphisms_[morphism_index(name)];
}

const std::string& FinCat::identity_of(const std::string& object) const {
  return morphisms_[identity_[object_index(object)]].id;
}

bool FinCat::is_identity(const std::string& name) const {
  long i = morphism_index(name);
  return identity_[object_index_.at(morphisms_[i].src)] == i;
}

bool FinCat::composable(const std::string& g, const std::string& f) const {
  return morphism(f).tgt == morphism(g).src;
}

std::string FinCat::compose(const std::string& g, const std::string& f) const {
  long gi = morphism_index(g);
  long fi = morphism_index(f);
  auto it = compose_.find(pair_key(gi, fi));
  if (it == compose_.end())
    fail(errc::bad_morphism, "morphisms '" + g + "' and '" + f + "' are not composable");
  return morphisms_[it->second].id;
}

long FinCat::compose_index(long g, long f) const {
  auto it = compose_.find(pair_key(g, f));
  if (it == compose_.end()) fail(errc::bad_morphism, "morphism pair is not composable");
  return it->second;
}

std::vector<std::string> FinCat::hom(const std::string& a, const std::string& b) const {
  object_index(a);
  object_index(b);
  std::vector<std::string> out;
  for (const Morph& m : morphisms_)
    if (m.src == a && m.tgt == b) out.push_back(m.id);
  return out;
}

long FinCat::hom_count(const std::string& a, const std::string& b) const {
  return static_cast<long>(hom(a, b).size());
}

void FinCat::check() const {
  const long n = static_cast<long>(morphisms_.size());
  for (long f = 0; f < n; ++f) {
    const Morph& m = morphisms_[f];
    long ids = identity_[object_index_.at(m.src)];
    long idt = identity_[object_index_.at(m.tgt)];
    if (compose_index(f, ids) != f)
      fail(errc::audit_failed, "right identity law fails for '" + m.id + "'");
    if (compose_index(idt, f) != f)
      fail(errc::audit_failed, "left identity law fails for '" + m.id + "'");
  }
  // Associativity over all composable triples h∘(g∘f) = (h∘g)∘f.
  std::vector<std::vector<long>> out_of(objects_.size());
  for (long i = 0; i < n; ++i) out_of[object_index_.at(morphisms_[i].src)].push_back(i);
  for (long f = 0; f < n; ++f) {
    for (long g : out_of[object_index_.at(morphisms_[f].tgt)]) {
      long gf = compose_index(g, f);
      for (long h : out_of[object_index_.at(morphisms_[g].tgt)]) {
        if (compose_index(h, gf) != compose_index(compose_index(h, g), f))
          fail(errc::audit_failed, "associativity fails at ('" + morphisms_[h].id + "', '" +
                                       morphisms_[g].id + "', '" + morphisms_[f].id + "')");
      }
    }
  }
}

bool FinCat::operator==(const FinCat& other) const {
  if (object_index_.size() != other.object_index_.size()) return false;
  for (const auto& [name, idx] : object_index_) {
    (void)idx;
    if (!other.has_object(name)) return false;
  }
  if (morphism_index_.size() != other.morphism_index_.size()) return false;
  for (const auto& [name, idx] : morphism_index_) {
    const Morph& m = morphisms_[idx];
    if (!other.has_morphism(name)) return false;
    const Morph& o = other.morphism(name);
    if (m.src != o.src || m.tgt != o.tgt) return false;
  }
  for (const auto& [name, idx] : object_index_) {
    (void)idx;
    if (identity_of(name) != other.identity_of(name)) return false;
  }
  for (const auto& [key, value] : compose_) {
    long g = static_cast<long>(key >> 32);
    long f = static_cast<long>(key & 0xffffffffu);
    if (other.compose(morphisms_[g].id, morphisms_[f].id) != morphisms_[value].id) return false;
  }
  return true;
}

void check_functor(const CatFunctor& f) {
  for (const std::string& obj : f.source.objects()) {
    auto it = f.ob.find(obj);
    if (it == f.ob.end()) fail(errc::audit_failed, "functor misses object '" + obj + "'");
    if (!f.target.has_object(it->second))
      fail(errc::audit_failed, "functor sends '" + obj + "' to unknown object '" + it->second + "'");
  }
  for (const Morph& m : f.source.morphisms()) {
    auto it = f.mor.find(m.id);
    if (it == f.mor.end()) fail(errc::audit_failed, "functor misses morphism '" + m.id + "'");
    if (!f.target.has_morphism(it->second))
      fail(errc::audit_failed,
           "functor sends '" + m.id + "' to unknown morphism '" + it->second + "'");
    const Morph& image = f.target.morphism(it->second);
    if (image.src != f.ob.at(m.src) || image.tgt != f.ob.at(m.tgt))
      fail(errc::audit_failed, "functor breaks endpoints at '" + m.id + "'");
  }
  for (const std::string& obj : f.source.objects())
    if (f.mor.at(f.source.identity_of(obj)) != f.target.identity_of(f.ob.at(obj)))
      fail(errc::audit_failed, "functor breaks the identity of '" + obj + "'");
  for (const Morph& g : f.source.morphisms())
    for (const Morph& m : f.source.morphisms()) {
      if (m.tgt != g.src) continue;
      if (f.mor.at(f.source.compose(g.id, m.id)) != f.target.compose(f.mor.at(g.id), f.mor.at(m.id)))
        fail(errc::audit_failed,
             "functor breaks composition at ('" + g.id + "', '" + m.id + "')");
    }
}

std::string apply_ob(const CatFunctor& f, const std::string& object) {
  f.source.object_index(object);
  auto it = f.ob.find(object);
  if (it == f.ob.end()) fail(errc::unknown_object, "functor has no image for object '" + object + "'");
  return it->second;
}

std::string apply_mor(const CatFunctor& f, const std::string& morphism) {
  f.source.morphism_index(morphism);
  auto it = f.mor.find(morphism);
  if (it == f.mor.end())
    fail(errc::unknown_morphism, "functor has no image for morphism '" + morphism + "'");
  return it->second;
}

CatFunctor identity_functor(const FinCat& c) {
  CatFunctor f;
  f.source = c;
  f.target = c;
  for (const std::string& obj : c.objects()) f.ob[obj] = obj;
  for (const Morph& m : c.morphisms()) f.mor[m.id] = m.id;
  return f;
}

CatFunctor compose_functor(const CatFunctor& g, const CatFunctor& f) {
  if (f.target != g.source)
    fail(errc::base_mismatch, "functor composition requires matching middle category");
  CatFunctor out;
  out.source = f.source;
  out.target = g.target;
  for (const auto& [x, y] : f.ob) out.ob[x] = apply_ob(g, y);
  for (const auto& [x, y] : f.mor) out.mor[x] = apply_mor(g, y);
  return out;
}

bool functor_equal(const CatFunctor& f, const CatFunctor& g) {
  return f.source == g.source && f.target == g.target && f.ob == g.ob && f.mor == g.mor;
}

bool is_full_embedding(const CatFunctor& f) {
  std::set<std::string> seen;
  for (const std::string& obj : f.source.objects())
    if (!seen.insert(apply_ob(f, obj)).second) return false;
  for (const std::string& a : f.source.objects())
    for (const std::string& b : f.source.objects()) {
      std::set<std::string> images;
      for (const std::string& m : f.source.hom(a, b)) images.insert(apply_mor(f, m));
      if (static_cast<long>(images.size()) != f.source.hom_count(a, b)) return false;
      if (static_cast<long>(images.size()) != f.target.hom_count(apply_ob(f, a), apply_ob(f, b)))
        return false;
    }
  return true;
}

FinCat free_category(const Quiver& q) {
  std::vector<std::string> objects;
  for (const auto& v : q.vertices()) objects.push_back(v);

  // name -> arrow path, in traversal order
  std::vector<Morph> morphisms;
  std::map<std::string, std::vector<std::string>> path_of;
  std::map<std::string, std::string> identity;
  auto path_name = [](const std::string& src, const std::vector<std::string>& path) {
    if (path.empty()) return "1_" + src;
    std::string out;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      if (!out.empty()) out += "*";
      out += *it;
    }
    return out;
  };
  for (const auto& v : objects) {
    for (const auto& [tgt, paths] : enumerate_paths(q, v)) {
      for (const auto& path : paths) {
        std::string name = path_name(v, path);
        if (path_of.count(name)) fail(errc::bad_input, "arrow ids produce colliding path name '" + name + "'");
        path_of[name] = path;
        morphisms.push_back({name, v, tgt});
        if (path.empty()) identity[v] = name;
      }
    }
  }
  auto table = total_table(morphisms, [&](const Morph& g, const Morph& f) {
    std::vector<std::string> joined = path_of.at(f.id);
    const auto& tail = path_of.at(g.id);
    joined.insert(joined.end(), tail.begin(), tail.end());
    return path_name(f.src, joined);
  });
  return FinCat(objects, morphisms, identity, table);
}

FinCat product_many(const std::vector<FinCat>& factors) {
  if (factors.empty()) fail(errc::bad_input, "product of no categories");
  long object_total = 1;
  long morphism_total = 1;
  for (const FinCat& c : factors) {
    if (c.objects().empty()) fail(errc::bad_input, "product with an empty factor");
    object_total *= static_cast<long>(c.objects().size());
    morphism_total *= static_cast<long>(c.morphisms().size());
    if (morphism_total > kMorphismLimit)
      fail(errc::size_limit, "product category exceeds the morphism limit");
  }
  const std::size_t k = factors.size();

  // Enumerate index tuples in row-major order.
  auto tuples = [&](auto size_of) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(k, 0);
    while (true) {
      out.push_back(cur);
      std::size_t i = k;
      while (i > 0) {
        --i;
        if (++cur[i] < size_of(i)) break;
        cur[i] = 0;
        if (i == 0) return out;
      }
    }
  };

  std::vector<std::string> objects;
  for (const auto& t : tuples([&](std::size_t i) { return static_cast<long>(factors[i].objects().size()); })) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < k; ++i) parts.push_back(factors[i].objects()[t[i]]);
    objects.push_back(tuple_name(parts));
  }

  std::vector<Morph> morphisms;
  std::vector<std::vector<long>> components;
  std::map<std::string, std::string> identity;
  for (const auto& t : tuples([&](std::size_t i) { return static_cast<long>(factors[i].morphisms().size()); })) {
    std::vector<std::string> ids, srcs, tgts;
    bool all_identities = true;
    for (std::size_t i = 0; i < k; ++i) {
      const Morph& m = factors[i].morphisms()[t[i]];
      ids.push_back(m.id);
      srcs.push_back(m.src);
      tgts.push_back(m.tgt);
      if (!factors[i].is_identity(m.id)) all_identities = false;
    }
    Morph m{tuple_name(ids), tuple_name(srcs), tuple_name(tgts)};
    if (all_identities) identity[m.src] = m.id;
    morphisms.push_back(m);
    components.push_back(t);
  }
  std::map<std::string, long> row_of;
  for (std::size_t i = 0; i < morphisms.size(); ++i) row_of[morphisms[i].id] = static_cast<long>(i);

  auto table = total_table(morphisms, [&](const Morph& g, const Morph& f) {
    const auto& gc = components[row_of.at(g.id)];
    const auto& fc = components[row_of.at(f.id)];
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < k; ++i)
      parts.push_back(
          factors[i].morphisms()[factors[i].compose_index(gc[i], fc[i])].id);
    return tuple_name(parts);
  });
  return FinCat(objects, morphisms, identity, table);
}

FinCat product(const FinCat& c, const FinCat& d) { return product_many({c, d}); }

namespace {

ConeResult cone_impl(const FinCat& c, bool initial) {
  const std::string apex = initial ? "-inf" : "+inf";
  if (c.has_object(apex)) fail(errc::bad_input, "category already has an object named '" + apex + "'");
  std::vector<std::string> objects = c.objects();
  objects.push_back(apex);

  auto arrow_name = [&](const std::string& x) { return initial ? "!" + x : x + "!"; };
  std::vector<Morph> morphisms = c.morphisms();
  std::map<std::string, std::string> identity;
  for (const std::string& obj : c.objects()) identity[obj] = c.identity_of(obj);
  Morph apex_id{"1_" + apex, apex, apex};
  if (c.has_morphism(apex_id.id)) fail(errc::bad_input, "morphism name '" + apex_id.id + "' already taken");
  morphisms.push_back(apex_id);
  identity[apex] = apex_id.id;
  for (const std::string& obj : c.objects()) {
    std::string name = arrow_name(obj);
    if (c.has_morphism(name)) fail(errc::bad_input, "morphism name '" + name + "' already taken");
    if (initial)
      morphisms.push_back({name, apex, obj});
    else
      morphisms.push_back({name, obj, apex});
  }

  auto table = total_table(morphisms, [&](const Morph& g, const Morph& f) -> std::string {
    bool f_new = !c.has_morphism(f.id);
    bool g_new = !c.has_morphism(g.id);
    if (!f_new && !g_new) return c.compose(g.id, f.id);
    if (f.id == apex_id.id) return g.id;
    if (g.id == apex_id.id) return f.id;
    // One factor is a (co)cone arrow: the composite is again the unique
    // (co)cone arrow at the far end.
    return initial ? arrow_name(g.tgt) : arrow_name(f.src);
  });
  ConeResult out{FinCat(objects, morphisms, identity, table), {}};
  out.include.source = c;
  out.include.target = out.cat;
  for (const std::string& obj : c.objects()) out.include.ob[obj] = obj;
  for (const Morph& m : c.morphisms()) out.include.mor[m.id] = m.id;
  return out;
}

}  // namespace

ConeResult cone(const FinCat& c) { return cone_impl(c, true); }

ConeResult cocone(const FinCat& c) { return cone_impl(c, false); }

FinCat opposite(const FinCat& c) {
  std::vector<Morph> morphisms;
  for (const Morph& m : c.morphisms()) morphisms.push_back({m.id, m.tgt, m.src});
  std::map<std::string, std::string> identity;
  for (const std::string& obj : c.objects()) identity[obj] = c.identity_of(obj);
  auto table = total_table(morphisms, [&](const Morph& g, const Morph& f) {
    return c.compose(f.id, g.id);
  });
  return FinCat(c.objects(), morphisms, identity, table);
}

ExtendResult one_point_extend(const FinCat& a, const std::string& attach, extend_dir dir) {
  a.object_index(attach);
  std::string x = fresh_name(a, "x");
  std::string w = "w";
  while (a.has_morphism(w)) w += "'";

  std::vector<std::string> objects = a.objects();
  objects.push_back(x);
  std::vector<Morph> morphisms = a.morphisms();
  std::map<std::string, std::string> identity;
  for (const std::string& obj : a.objects()) identity[obj] = a.identity_of(obj);
  std::string idx = "1_" + x;
  while (a.has_morphism(idx)) idx += "'";
  morphisms.push_back({idx, x, x});
  identity[x] = idx;

  // Composite of an original morphism with the fresh arrow, keyed by the
  // original morphism; the identity of `attach` yields the arrow itself.
  std::map<std::string, std::string> through;
  through[a.identity_of(attach)] = w;
  if (dir == extend_dir::to_target) {
    morphisms.push_back({w, x, attach});
    for (const Morph& m : a.morphisms())
      if (m.src == attach && !a.is_identity(m.id)) {
        through[m.id] = m.id + "*" + w;
        morphisms.push_back({through[m.id], x, m.tgt});
      }
  } else {
    morphisms.push_back({w, attach, x});
    for (const Morph& m : a.morphisms())
      if (m.tgt == attach && !a.is_identity(m.id)) {
        through[m.id] = w + "*" + m.id;
        morphisms.push_back({through[m.id], m.src, x});
      }
  }

  std::map<std::string, std::string> origin;  // composite name -> original morphism
  for (const auto& [orig, name] : through) origin[name] = orig;

  auto table = total_table(morphisms, [&](const Morph& g, const Morph& f) -> std::string {
    bool f_old = a.has_morphism(f.id);
    bool g_old = a.has_morphism(g.id);
    if (f_old && g_old) return a.compose(g.id, f.id);
    if (f.id == idx) return g.id;
    if (g.id == idx) return f.id;
    if (dir == extend_dir::to_target) {
      // f is a composite through x; g is an original morphism.
      return through.at(a.compose(g.id, origin.at(f.id)));
    }
    return through.at(a.compose(origin.at(g.id), f.id));
  });
  ExtendResult out{FinCat(objects, morphisms, identity, table), {}, x, w};
  out.embed.source = a;
  out.embed.target = out.cat;
  for (const std::string& obj : a.objects()) out.embed.ob[obj] = obj;
  for (const Morph& m : a.morphisms()) out.embed.mor[m.id] = m.id;
  return out;
}

FinCat full_subcategory(const FinCat& c, const std::vector<std::string>& objects) {
  std::set<std::string> keep;
  for (const std::string& obj : objects) {
    c.object_index(obj);
    if (!keep.insert(obj).second) fail(errc::bad_input, "duplicate object '" + obj + "'");
  }
  std::vector<std::string> sub_objects;
  for (const std::string& obj : c.objects())
    if (keep.count(obj)) sub_objects.push_back(obj);
  std::vector<Morph> morphisms;
  std::map<std::string, std::string> identity;
  for (const Morph& m : c.morphisms())
    if (keep.count(m.src) && keep.count(m.tgt)) {
      morphisms.push_back(m);
      if (c.is_identity(m.id)) identity[m.src] = m.id;
    }
  auto table = total_table(morphisms, [&](const Morph& g, const Morph& f) {
    return c.compose(g.id, f.id);
  });
  return FinCat(sub_objects, morphisms, identity, table);
}

namespace {

// Shared builder for comma-style categories: objects are (label) pairs of a
// base object and a chosen morphism, morphisms are base morphisms g that
// satisfy `compatible`.
struct PairedObject {
  std::string base;
  std::string name;
};

FinCat paired_category(
    const FinCat& base, const std::vector<PairedObject>& objects,
    const std::function<bool(const PairedObject&, const std::string&, const PairedObject&)>&
        compatible) {
  std::vector<std::string> names;
  std::map<std::string, long> index_of;
  for (const auto& o : objects) {
    if (index_of.count(o.name)) fail(errc::internal, "duplicate comma object '" + o.name + "'");
    index_of[o.name] = static_cast<long>(names.size());
    names.push_back(o.name);
  }
  std::vector<Morph> morphisms;
  std::vector<std::string> base_of;
  std::map<std::string, std::string> identity;
  for (const auto& s : objects)
    for (const auto& t : objects) {
      for (const std::string& g : base.hom(s.base, t.base)) {
        if (!compatible(s, g, t)) continue;
        std::string id = g + "|" + s.name + "|" + t.name;
        morphisms.push_back({id, s.name, t.name});
        base_of.push_back(g);
        if (s.name == t.name && base.is_identity(g)) identity[s.name] = id;
      }
    }
  std::map<std::string, long> row_of;
  for (std::size_t i = 0; i < morphisms.size(); ++i) row_of[morphisms[i].id] = static_cast<long>(i);
  auto table = total_table(morphisms, [&](const Morph& g, const Morph& f) {
    std::string composite = base.compose(base_of[row_of.at(g.id)], base_of[row_of.at(f.id)]);
    return composite + "|" + f.src + "|" + g.tgt;
  });
  return FinCat(names, morphisms, identity, table);
}

}  // namespace

FinCat comma_from(const CatFunctor& f, const std::string& c) {
  f.target.object_index(c);
  std::vector<PairedObject> objects;
  std::map<std::string, std::string> leg;  // comma object -> structure morphism
  for (const std::string& a : f.source.objects())
    for (const std::string& m : f.target.hom(apply_ob(f, a), c)) {
      PairedObject o{a, "(" + a + "|" + m + ")"};
      leg[o.name] = m;
      objects.push_back(o);
    }
  return paired_category(f.source, objects,
                         [&](const PairedObject& s, const std::string& g, const PairedObject& t) {
                           return f.target.compose(leg.at(t.name), apply_mor(f, g)) == leg.at(s.name);
                         });
}

FinCat comma_to(const CatFunctor& f, const std::string& c) {
  f.target.object_index(c);
  std::vector<PairedObject> objects;
  std::map<std::string, std::string> leg;
  for (const std::string& a : f.source.objects())
    for (const std::string& m : f.target.hom(c, apply_ob(f, a))) {
      PairedObject o{a, "(" + a + "|" + m + ")"};
      leg[o.name] = m;
      objects.push_back(o);
    }
  return paired_category(f.source, objects,
                         [&](const PairedObject& s, const std::string& g, const PairedObject& t) {
                           return f.target.compose(apply_mor(f, g), leg.at(s.name)) == leg.at(t.name);
                         });
}

FinCat factor_category(const CatFunctor& u, const std::string& b1, const std::string& b2,
                       const std::string& gamma) {
  const Morph& gm = u.target.morphism(gamma);
  if (gm.src != b1 || gm.tgt != b2)
    fail(errc::bad_morphism, "'" + gamma + "' does not run " + b1 + " -> " + b2);
  std::vector<PairedObject> objects;
  std::map<std::string, std::pair<std::string, std::string>> legs;  // name -> (phi, psi)
  for (const std::string& a : u.source.objects()) {
    const std::string ua = apply_ob(u, a);
    for (const std::string& phi : u.target.hom(b1, ua))
      for (const std::string& psi : u.target.hom(ua, b2)) {
        if (u.target.compose(psi, phi) != gamma) continue;
        PairedObject o{a, "(" + a + "|" + phi + "|" + psi + ")"};
        legs[o.name] = {phi, psi};
        objects.push_back(o);
      }
  }
  return paired_category(
      u.source, objects,
      [&](const PairedObject& s, const std::string& g, const PairedObject& t) {
        const auto& [phi_s, psi_s] = legs.at(s.name);
        const auto& [phi_t, psi_t] = legs.at(t.name);
        const std::string ug = apply_mor(u, g);
        return u.target.compose(ug, phi_s) == phi_t && u.target.compose(psi_t, ug) == psi_s;
      });
}

void check_square(const TwoSidedSquare& square) {
  if (square.p.source != square.q.source)
    fail(errc::bad_square_data, "p and q must share their source category");
  if (square.u.source != square.p.target)
    fail(errc::bad_square_data, "u must start at the target of p");
  if (square.v.source != square.q.target)
    fail(errc::bad_square_data, "v must start at the target of q");
  if (square.u.target != square.v.target)
    fail(errc::bad_square_data, "u and v must share their target category");
  check_functor(square.p);
  check_functor(square.q);
  check_functor(square.u);
  check_functor(square.v);
  const FinCat& d = square.p.source;
  const FinCat& c = square.u.target;
  for (const std::string& obj : d.objects()) {
    auto it = square.alpha.find(obj);
    if (it == square.alpha.end())
      fail(errc::bad_square_data, "alpha misses the component at '" + obj + "'");
    const Morph& comp = c.morphism(it->second);
    if (comp.src != apply_ob(square.u, apply_ob(square.p, obj)) ||
        comp.tgt != apply_ob(square.v, apply_ob(square.q, obj)))
      fail(errc::bad_square_data, "alpha component at '" + obj + "' has wrong endpoints");
  }
  for (const Morph& m : d.morphisms()) {
    const std::string lhs =
        c.compose(square.alpha.at(m.tgt), apply_mor(square.u, apply_mor(square.p, m.id)));
    const std::string rhs =
        c.compose(apply_mor(square.v, apply_mor(square.q, m.id)), square.alpha.at(m.src));
    if (lhs != rhs) fail(errc::bad_square_data, "alpha is not natural at '" + m.id + "'");
  }
}

FinCat two_sided_factor(const TwoSidedSquare& square, const std::string& a, const std::string& b,
                        const std::string& gamma) {
  check_square(square);
  const FinCat& d = square.p.source;
  const FinCat& acat = square.u.source;
  const FinCat& bcat = square.v.source;
  const FinCat& c = square.u.target;
  acat.object_index(a);
  bcat.object_index(b);
  const Morph& gm = c.morphism(gamma);
  if (gm.src != apply_ob(square.u, a) || gm.tgt != apply_ob(square.v, b))
    fail(errc::bad_morphism, "'" + gamma + "' does not run u(" + a + ") -> v(" + b + ")");

  std::vector<PairedObject> objects;
  std::map<std::string, std::pair<std::string, std::string>> legs;  // name -> (phi, psi)
  for (const std::string& dob : d.objects()) {
    const std::string pd = apply_ob(square.p, dob);
    const std::string qd = apply_ob(square.q, dob);
    for (const std::string& phi : acat.hom(a, pd))
      for (const std::string& psi : bcat.hom(qd, b)) {
        const std::string pasted = c.compose(
            apply_mor(square.v, psi),
            c.compose(square.alpha.at(dob), apply_mor(square.u, phi)));
        if (pasted != gamma) continue;
        PairedObject o{dob, "(" + dob + "|" + phi + "|" + psi + ")"};
        legs[o.name] = {phi, psi};
        objects.push_back(o);
      }
  }
  return paired_category(
      d, objects, [&](const PairedObject& s, const std::string& g, const PairedObject& t) {
        const auto& [phi_s, psi_s] = legs.at(s.name);
        const auto& [phi_t, psi_t] = legs.at(t.name);
        return acat.compose(apply_mor(square.p, g), phi_s) == phi_t &&
               bcat.compose(psi_t, apply_mor(square.q, g)) == psi_s;
      });
}

}  // namespace reflekt
