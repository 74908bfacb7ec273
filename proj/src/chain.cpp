#include "reflekt/chain.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "reflekt/error.hpp"

namespace reflekt {

namespace {

using Tuple = std::vector<int>;

std::string tuple_text(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

std::vector<Tuple> all_tuples(long n, int lo, int hi) {
  std::vector<Tuple> out;
  Tuple cur(n, lo);
  while (true) {
    out.push_back(cur);
    long i = n;
    while (i > 0) {
      --i;
      if (++cur[i] <= hi) break;
      cur[i] = lo;
      if (i == 0) return out;
    }
  }
}

// Naming scheme of the glued cube: spoke tuples keep the tree vertex id,
// everything else is the coordinate tuple.
struct CubeNaming {
  long n = 0;
  bool dual = false;
  std::vector<std::string> spokes;

  Tuple spoke_tuple(long k) const {
    Tuple t(n, dual ? 0 : 2);
    t[k] = 1;
    return t;
  }
  Tuple apex_tuple() const { return Tuple(n, dual ? 0 : 2); }
  Tuple b_tuple() const { return Tuple(n, 1); }
  Tuple corner_tuple(long k) const {
    Tuple t(n, dual ? 0 : 2);
    t[k] = dual ? 2 : 0;
    return t;
  }

  std::string name_of(const Tuple& t) const {
    for (long k = 0; k < n; ++k)
      if (t == spoke_tuple(k)) return spokes[k];
    return tuple_text(t);
  }
  std::string up(long j, const Tuple& src) const {
    return "@u" + std::to_string(j + 1) + "_" + name_of(src);
  }
  std::string inv(long j, const Tuple& src) const {
    return "@inv" + std::to_string(j + 1) + "_" + name_of(src);
  }
};

void validate_chain_input(const Quiver& q, const std::string& q0, bool dual) {
  if (!q.has_vertex(q0)) fail(errc::unknown_vertex, "unknown vertex '" + q0 + "'");
  if (!is_oriented_tree(q)) fail(errc::not_a_tree, "the quiver is not an oriented tree");
  VertexClass c = classify_vertex(q, q0);
  if (!dual && c != VertexClass::source)
    fail(errc::not_a_source, "'" + q0 + "' is not a source");
  if (dual && c != VertexClass::sink) fail(errc::not_a_sink, "'" + q0 + "' is not a sink");
  auto clean = [](const std::string& id) {
    return id.find_first_of("@*|(),") == std::string::npos;
  };
  for (const std::string& v : q.vertices()) {
    if (!clean(v)) fail(errc::bad_input, "vertex id '" + v + "' uses a reserved character");
    if (v == "z" || v == q0 + "'")
      fail(errc::bad_input, "vertex id '" + v + "' collides with a glued object name");
  }
  for (const Arrow& a : q.arrows())
    if (!clean(a.id)) fail(errc::bad_input, "arrow id '" + a.id + "' uses a reserved character");
}

long tree_diameter(const Quiver& q) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const Arrow& a : q.arrows()) {
    adj[a.src].push_back(a.tgt);
    adj[a.tgt].push_back(a.src);
  }
  long best = 0;
  for (const std::string& start : q.vertices()) {
    std::map<std::string, long> dist{{start, 0}};
    std::queue<std::string> todo;
    todo.push(start);
    while (!todo.empty()) {
      std::string v = todo.front();
      todo.pop();
      for (const std::string& w : adj[v])
        if (!dist.count(w)) {
          dist[w] = dist[v] + 1;
          best = std::max(best, dist[w]);
          todo.push(w);
        }
    }
  }
  return best;
}

Realization realize_with_schedule(const Presentation& p, long base_bound) {
  long bound = base_bound;
  for (int attempt = 0;; ++attempt) {
    try {
      return realize(p, bound);
    } catch (const error& e) {
      if (e.code() != errc::not_stabilized || attempt == 4) throw;
      bound *= 2;
    }
  }
}

// Object-preserving functor between two realizations of nested
// presentations: each morphism maps to the evaluation of its representative
// word in the larger category.
CatFunctor stage_functor(const Realization& from, const Realization& to) {
  CatFunctor f;
  f.source = from.cat;
  f.target = to.cat;
  for (const std::string& obj : from.cat.objects()) f.ob[obj] = obj;
  for (std::size_t i = 0; i < from.cat.morphisms().size(); ++i) {
    const Morph& m = from.cat.morphisms()[i];
    f.mor[m.id] = to.eval(m.src, from.words[i]);
  }
  check_functor(f);
  return f;
}

// Coordinate movements of each morphism of the 3-chain and of R: +1 is a
// covering edge, -2 the adjoined inverse.
const std::map<std::string, std::vector<int>>& component_steps() {
  static const std::map<std::string, std::vector<int>> steps{
      {"1_0", {}},     {"1_1", {}},       {"1_2", {}},      {"s01", {1}},
      {"s12", {1}},    {"s12*s01", {1, 1}}, {"a", {1}},     {"b", {1}},
      {"ba", {1, 1}},  {"c", {-2}},       {"ac", {-2, 1}},  {"cb", {1, -2}},
      {"t", {1, -2, 1}},
  };
  return steps;
}

Tuple parse_tuple(const std::string& name) {
  Tuple out;
  std::string cur;
  for (std::size_t i = 1; i + 1 <= name.size() - 1; ++i) {
    if (name[i] == ',') {
      out.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += name[i];
    }
  }
  out.push_back(std::stoi(cur));
  return out;
}

std::vector<std::string> split_components(const std::string& name) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 1; i + 1 <= name.size() - 1; ++i) {
    if (name[i] == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += name[i];
    }
  }
  out.push_back(cur);
  return out;
}

// Generator word moving through the glued cube along the given componentwise
// steps, coordinates applied in increasing order.
std::vector<std::string> cube_word(const CubeNaming& names, Tuple cur,
                                   const std::vector<std::vector<int>>& steps) {
  std::vector<std::string> word;
  for (long j = 0; j < names.n; ++j)
    for (int delta : steps[j]) {
      if (delta == 1) {
        word.push_back(names.up(j, cur));
        cur[j] += 1;
      } else {
        word.push_back(names.inv(j, cur));
        cur[j] -= 2;
      }
    }
  return word;
}

struct ChainBuilder {
  Quiver q;
  std::string q0;
  bool dual;
  long n = 0;
  CubeNaming names;
  std::vector<std::string> spoke_arrow;

  Presentation pres;
  std::set<std::string> objects_present;
  std::set<std::pair<Tuple, long>> edges_added;
  long base_bound = 0;

  ChainBuilder(const Quiver& quiver, const std::string& vertex, bool is_dual)
      : q(quiver), q0(vertex), dual(is_dual) {
    validate_chain_input(q, q0, dual);
    std::vector<std::pair<std::string, std::string>> at_q0;  // (neighbour, arrow)
    for (const Arrow& a : q.arrows()) {
      if (!dual && a.src == q0) at_q0.push_back({a.tgt, a.id});
      if (dual && a.tgt == q0) at_q0.push_back({a.src, a.id});
    }
    std::sort(at_q0.begin(), at_q0.end());
    n = static_cast<long>(at_q0.size());
    names.n = n;
    names.dual = dual;
    for (auto& [v, a] : at_q0) {
      names.spokes.push_back(v);
      spoke_arrow.push_back(a);
    }
    base_bound = 2 * tree_diameter(q) + 4;

    pres.objects = q.vertices();
    for (const std::string& obj : pres.objects) objects_present.insert(obj);
    for (const Arrow& a : q.arrows()) pres.generators.push_back({a.id, a.src, a.tgt});
  }

  void add_object(const std::string& name) {
    if (objects_present.insert(name).second) pres.objects.push_back(name);
  }

  void add_edge(const Tuple& y, long j) {
    if (!edges_added.insert({y, j}).second) return;
    Tuple tgt = y;
    tgt[j] += 1;
    pres.generators.push_back({names.up(j, y), names.name_of(y), names.name_of(tgt)});
  }

  void add_square(const Tuple& y, long i, long j) {
    Tuple yi = y, yj = y;
    yi[i] += 1;
    yj[j] += 1;
    pres.relations.push_back({{names.up(i, y), names.up(j, yi)}, {names.up(j, y), names.up(i, yj)}});
  }

  // The path from q0 into the cube: the attaching arrow for valence one,
  // the adjoined cone leg otherwise.
  std::vector<std::string> c0_word() const {
    return n == 1 ? std::vector<std::string>{spoke_arrow[0]} : std::vector<std::string>{"@c0"};
  }

  // Stage 1: apex of the spoke cone (primal: all-2 corner; dual: all-0).
  void build_stage1() {
    add_object(names.name_of(names.apex_tuple()));
    if (!dual) {
      for (long k = 0; k < n; ++k) add_edge(names.spoke_tuple(k), k);
      for (long k = 1; k < n; ++k)
        pres.relations.push_back(
            {{spoke_arrow[0], names.up(0, names.spoke_tuple(0))},
             {spoke_arrow[k], names.up(k, names.spoke_tuple(k))}});
    } else {
      for (long k = 0; k < n; ++k) add_edge(names.apex_tuple(), k);
      for (long k = 1; k < n; ++k)
        pres.relations.push_back({{names.up(0, names.apex_tuple()), spoke_arrow[0]},
                                  {names.up(k, names.apex_tuple()), spoke_arrow[k]}});
    }
  }

  // Stage 2: the full coned half cube, with the leg to/from q0.
  void build_stage2() {
    const int inner = dual ? 0 : 1;  // half-cube coordinate values
    const int outer = dual ? 1 : 2;
    for (const Tuple& y : all_tuples(n, std::min(inner, outer), std::max(inner, outer))) {
      long ones = static_cast<long>(std::count(y.begin(), y.end(), 1));
      if (ones >= 2) add_object(names.name_of(y));
    }
    for (const Tuple& y : all_tuples(n, std::min(inner, outer), std::max(inner, outer)))
      for (long j = 0; j < n; ++j)
        if (y[j] == inner && inner < outer) add_edge(y, j);
    // Dual half cube rises from 0 to 1.
    if (dual)
      for (const Tuple& y : all_tuples(n, 0, 1))
        for (long j = 0; j < n; ++j)
          if (y[j] == 0) add_edge(y, j);
    for (const Tuple& y : all_tuples(n, dual ? 0 : 1, dual ? 1 : 2))
      for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j)
          if (y[i] == (dual ? 0 : 1) && y[j] == (dual ? 0 : 1)) add_square(y, i, j);
    if (n == 1) return;
    if (!dual) {
      pres.generators.push_back({"@c0", q0, names.name_of(names.b_tuple())});
      for (long k = 0; k < n; ++k) {
        std::vector<std::string> leg{"@c0"};
        Tuple cur = names.b_tuple();
        for (long j = 0; j < n; ++j) {
          if (j == k) continue;
          leg.push_back(names.up(j, cur));
          cur[j] += 1;
        }
        pres.relations.push_back({{spoke_arrow[k]}, leg});
      }
    } else {
      pres.generators.push_back({"@c0", names.name_of(names.b_tuple()), q0});
      for (long k = 0; k < n; ++k) {
        std::vector<std::string> leg;
        Tuple cur = names.spoke_tuple(k);
        for (long j = 0; j < n; ++j) {
          if (j == k) continue;
          leg.push_back(names.up(j, cur));
          cur[j] += 1;
        }
        leg.push_back("@c0");
        pres.relations.push_back({{spoke_arrow[k]}, leg});
      }
    }
  }

  // Stage 3: corner objects, one covering edge each.
  void build_stage3() {
    for (long k = 0; k < n; ++k) {
      Tuple corner = names.corner_tuple(k);
      add_object(names.name_of(corner));
      if (!dual)
        add_edge(corner, k);  // corner -> spoke
      else
        add_edge(names.spoke_tuple(k), k);  // spoke -> corner
    }
  }

  // Stage 4: the full coordinate cube with all commuting squares.
  void build_cat1() {
    for (const Tuple& y : all_tuples(n, 0, 2)) add_object(names.name_of(y));
    for (const Tuple& y : all_tuples(n, 0, 2))
      for (long j = 0; j < n; ++j)
        if (y[j] < 2) add_edge(y, j);
    for (const Tuple& y : all_tuples(n, 0, 2))
      for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j)
          if (y[i] < 2 && y[j] < 2) add_square(y, i, j);
  }

  // Stage 5: invert every length-two coordinate composite.
  void build_cat2() {
    for (long k = 0; k < n; ++k)
      for (const Tuple& s : all_tuples(n, 0, 2)) {
        if (s[k] != 2) continue;
        Tuple y = s;
        y[k] = 0;
        Tuple mid = s;
        mid[k] = 1;
        pres.generators.push_back({names.inv(k, s), names.name_of(s), names.name_of(y)});
        pres.relations.push_back(
            {{names.up(k, y), names.up(k, mid), names.inv(k, s)}, {}});
        pres.relations.push_back(
            {{names.inv(k, s), names.up(k, y), names.up(k, mid)}, {}});
      }
  }

  void build_stage_z() {
    add_object("z");
    if (!dual)
      pres.generators.push_back({"@hz", q0, "z"});
    else
      pres.generators.push_back({"@hz", "z", q0});
  }

  void build_cat3(const std::string& qprime) {
    add_object(qprime);
    const std::string bname = names.name_of(names.b_tuple());
    if (!dual) {
      pres.generators.push_back({"@hb", bname, qprime});
      pres.generators.push_back({"@hzp", "z", qprime});
      std::vector<std::string> lhs = c0_word();
      lhs.push_back("@hb");
      pres.relations.push_back({lhs, {"@hz", "@hzp"}});
    } else {
      pres.generators.push_back({"@hb", qprime, bname});
      pres.generators.push_back({"@hzp", qprime, "z"});
      std::vector<std::string> lhs{"@hb"};
      for (const std::string& g : c0_word()) lhs.push_back(g);
      pres.relations.push_back({lhs, {"@hzp", "@hz"}});
    }
  }
};

// Image in cat3 of a reflected spoke arrow: primal chains receive the
// arrow spoke -> q0' through b, dual chains emit q0' -> spoke through b.
std::vector<std::string> reflected_spoke_word(const CubeNaming& names, long k) {
  std::vector<std::string> word;
  if (!names.dual) {
    Tuple cur = names.spoke_tuple(k);
    for (long j = 0; j < names.n; ++j) {
      if (j == k) continue;
      word.push_back(names.inv(j, cur));
      cur[j] -= 2;
      word.push_back(names.up(j, cur));
      cur[j] += 1;
    }
    word.push_back("@hb");
  } else {
    word.push_back("@hb");
    Tuple cur = names.b_tuple();
    for (long j = 0; j < names.n; ++j) {
      if (j == k) continue;
      word.push_back(names.up(j, cur));
      cur[j] += 1;
      word.push_back(names.inv(j, cur));
      cur[j] -= 2;
    }
  }
  return word;
}

ReflectionChain build_chain(const Quiver& q, const std::string& q0, bool dual) {
  ChainBuilder builder(q, q0, dual);
  ReflectionChain out;
  out.quiver = q;
  out.q0 = q0;
  out.dual = dual;
  out.valence = builder.n;
  out.spokes = builder.names.spokes;
  out.spoke_arrow = builder.spoke_arrow;
  out.apex = builder.names.name_of(builder.names.apex_tuple());
  out.b = builder.names.name_of(builder.names.b_tuple());
  out.z = "z";
  out.qprime = q0 + "'";

  const long bound = builder.base_bound;
  out.tree = realize_with_schedule(builder.pres, bound);
  builder.build_stage1();
  out.stage1 = realize_with_schedule(builder.pres, bound);
  builder.build_stage2();
  out.stage2 = realize_with_schedule(builder.pres, bound);
  builder.build_stage3();
  out.stage3 = realize_with_schedule(builder.pres, bound);
  builder.build_cat1();
  out.cat1 = realize_with_schedule(builder.pres, bound);
  builder.build_cat2();
  out.cat2 = realize_with_schedule(builder.pres, bound);
  builder.build_stage_z();
  out.stage_z = realize_with_schedule(builder.pres, bound);
  builder.build_cat3(out.qprime);
  out.cat3 = realize_with_schedule(builder.pres, bound);

  out.u1 = stage_functor(out.tree, out.stage1);
  out.u2 = stage_functor(out.stage1, out.stage2);
  out.u3 = stage_functor(out.stage2, out.stage3);
  out.u4 = stage_functor(out.stage3, out.cat1);
  out.u5 = stage_functor(out.cat1, out.cat2);
  out.u6 = stage_functor(out.cat2, out.stage_z);
  out.u7 = stage_functor(out.stage_z, out.cat3);
  for (const CatFunctor* u : {&out.u1, &out.u2, &out.u3, &out.u4, &out.u6, &out.u7})
    if (!is_full_embedding(*u)) fail(errc::internal, "stage embedding is not full");
  if (out.cat1.cat.objects() != out.cat2.cat.objects())
    fail(errc::internal, "localization changed the object set");

  const long nn = builder.n;
  FinCat three_chain =
      free_category(Quiver({"0", "1", "2"}, {{"s01", "0", "1"}, {"s12", "1", "2"}}));
  out.cube = product_many(std::vector<FinCat>(nn, three_chain));
  out.rn = product_many(std::vector<FinCat>(nn, category_R()));
  FinCat interval = free_category(Quiver({"0", "1"}, {{"s01", "0", "1"}}));
  out.square = product(interval, interval);

  // Componentwise localization of the cube onto R^n.
  out.loc.source = out.cube;
  out.loc.target = out.rn;
  const std::map<std::string, std::string> qmap{{"1_0", "1_0"}, {"1_1", "1_1"},
                                                {"1_2", "1_2"}, {"s01", "a"},
                                                {"s12", "b"},   {"s12*s01", "ba"}};
  for (const std::string& obj : out.cube.objects()) out.loc.ob[obj] = obj;
  for (const Morph& m : out.cube.morphisms()) {
    std::vector<std::string> comps = split_components(m.id);
    std::string image = "(";
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (i) image += ",";
      image += qmap.at(comps[i]);
    }
    out.loc.mor[m.id] = image + ")";
  }
  check_functor(out.loc);

  auto cube_iota = [&](const FinCat& shape, const Realization& target) {
    CatFunctor f;
    f.source = shape;
    f.target = target.cat;
    for (const std::string& obj : shape.objects())
      f.ob[obj] = builder.names.name_of(parse_tuple(obj));
    for (const Morph& m : shape.morphisms()) {
      std::vector<std::vector<int>> steps;
      for (const std::string& comp : split_components(m.id))
        steps.push_back(component_steps().at(comp));
      f.mor[m.id] =
          target.eval(f.ob.at(m.src), cube_word(builder.names, parse_tuple(m.src), steps));
    }
    check_functor(f);
    return f;
  };
  out.iota1 = cube_iota(out.cube, out.cat1);
  out.iota2 = cube_iota(out.rn, out.cat2);
  if (!functor_equal(compose_functor(out.iota2, out.loc), compose_functor(out.u5, out.iota1)))
    fail(errc::internal, "cube localization square does not commute");

  // The commutative square spanning q0, b, z and q0'.
  out.iota3.source = out.square;
  out.iota3.target = out.cat3.cat;
  {
    const std::string corner00 = dual ? out.qprime : q0;
    const std::string corner11 = dual ? q0 : out.qprime;
    out.iota3.ob = {{"(0,0)", corner00}, {"(1,0)", out.b}, {"(0,1)", out.z},
                    {"(1,1)", corner11}};
    std::vector<std::string> c0w = builder.c0_word();
    std::map<std::string, std::vector<std::string>> words;
    if (!dual) {
      words["(s01,1_0)"] = c0w;
      words["(1_0,s01)"] = {"@hz"};
      words["(1_1,s01)"] = {"@hb"};
      words["(s01,1_1)"] = {"@hzp"};
      words["(s01,s01)"] = c0w;
      words["(s01,s01)"].push_back("@hb");
    } else {
      words["(s01,1_0)"] = {"@hb"};
      words["(1_0,s01)"] = {"@hzp"};
      words["(1_1,s01)"] = c0w;
      words["(s01,1_1)"] = {"@hz"};
      words["(s01,s01)"] = {"@hb"};
      for (const std::string& g : c0w) words["(s01,s01)"].push_back(g);
    }
    for (const Morph& m : out.square.morphisms()) {
      auto it = words.find(m.id);
      std::vector<std::string> word = it == words.end() ? std::vector<std::string>{} : it->second;
      out.iota3.mor[m.id] = out.cat3.eval(out.iota3.ob.at(m.src), word);
    }
    check_functor(out.iota3);
  }

  // The reflected tree embeds with q0 replaced by the fresh corner q0'.
  {
    Quiver refl = reflect(q, q0);
    CatFunctor f;
    f.source = free_category(refl);
    f.target = out.cat3.cat;
    for (const std::string& v : refl.vertices()) f.ob[v] = v == q0 ? out.qprime : v;
    std::map<std::string, std::string> arrow_image;
    for (const Arrow& a : refl.arrows()) {
      auto spoke = std::find(builder.spoke_arrow.begin(), builder.spoke_arrow.end(), a.id);
      if (spoke == builder.spoke_arrow.end()) {
        arrow_image[a.id] = out.cat3.eval(a.src, {a.id});
      } else {
        long k = spoke - builder.spoke_arrow.begin();
        std::string start = dual ? out.qprime : builder.names.spokes[k];
        arrow_image[a.id] = out.cat3.eval(start, reflected_spoke_word(builder.names, k));
      }
    }
    for (const Morph& m : f.source.morphisms()) {
      if (f.source.is_identity(m.id)) {
        f.mor[m.id] = out.cat3.cat.identity_of(f.ob.at(m.src));
        continue;
      }
      std::vector<std::string> arrows;
      std::string cur;
      for (char ch : m.id) {
        if (ch == '*') {
          arrows.push_back(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      arrows.push_back(cur);
      std::string acc = out.cat3.cat.identity_of(f.ob.at(m.src));
      for (auto it = arrows.rbegin(); it != arrows.rend(); ++it)
        acc = out.cat3.cat.compose(arrow_image.at(*it), acc);
      f.mor[m.id] = acc;
    }
    check_functor(f);
    out.reflected_embed = f;
  }

  return out;
}

}  // namespace

ReflectionChain build_reflection_chain(const Quiver& q, const std::string& q0) {
  return build_chain(q, q0, false);
}

ReflectionChain build_dual_chain(const Quiver& q, const std::string& q0) {
  return build_chain(q, q0, true);
}

CatFunctor sigma_iso(const ReflectionChain& chain, const ReflectionChain& dual_chain) {
  if (chain.dual || !dual_chain.dual)
    fail(errc::chain_mismatch, "expected a primal chain and a dual chain");
  if (chain.q0 != dual_chain.q0)
    fail(errc::chain_mismatch, "the chains reflect different vertices");
  if (dual_chain.quiver != reflect(chain.quiver, chain.q0))
    fail(errc::chain_mismatch, "the dual chain is not built on the reflected tree");

  const long n = chain.valence;
  CubeNaming primal{n, false, chain.spokes};
  CubeNaming mirror{n, true, dual_chain.spokes};

  CatFunctor sigma;
  sigma.source = chain.cat3.cat;
  sigma.target = dual_chain.cat3.cat;
  for (const std::string& obj : chain.cat3.cat.objects()) {
    if (obj == chain.q0)
      sigma.ob[obj] = dual_chain.qprime;
    else if (obj == chain.qprime)
      sigma.ob[obj] = dual_chain.q0;
    else if (!obj.empty() && obj.front() == '(') {
      Tuple t = parse_tuple(obj);
      for (int& x : t) x = 2 - x;
      sigma.ob[obj] = mirror.name_of(t);
    } else {
      sigma.ob[obj] = obj;  // shared tree part, including the spokes
    }
  }

  // Images of the presentation generators of cat3 as generator words of the
  // dual cat3.
  std::map<std::string, std::vector<std::string>> gen_image;
  for (const Arrow& a : chain.quiver.arrows()) gen_image[a.id] = {a.id};
  for (long k = 0; k < n; ++k)
    gen_image[chain.spoke_arrow[k]] = reflected_spoke_word(mirror, k);
  for (const Tuple& y : all_tuples(n, 0, 2))
    for (long j = 0; j < n; ++j) {
      if (y[j] < 2) {
        Tuple s = y;
        for (int& x : s) x = 2 - x;
        if (s[j] == 2) {
          Tuple down = s;
          down[j] -= 2;
          gen_image[primal.up(j, y)] = {mirror.inv(j, s), mirror.up(j, down)};
        } else {
          Tuple lift = s;
          lift[j] += 1;
          gen_image[primal.up(j, y)] = {mirror.up(j, s), mirror.inv(j, lift)};
        }
      }
      if (y[j] == 2) {
        Tuple flipped = y;
        for (int& x : flipped) x = 2 - x;
        Tuple mid = flipped;
        mid[j] += 1;
        gen_image[primal.inv(j, y)] = {mirror.up(j, flipped), mirror.up(j, mid)};
      }
    }
  if (n > 1) gen_image["@c0"] = {"@hb"};
  gen_image["@hz"] = {"@hzp"};
  gen_image["@hzp"] = {"@hz"};
  gen_image["@hb"] = n == 1 ? std::vector<std::string>{dual_chain.spoke_arrow[0]}
                            : std::vector<std::string>{"@c0"};

  for (std::size_t i = 0; i < chain.cat3.cat.morphisms().size(); ++i) {
    const Morph& m = chain.cat3.cat.morphisms()[i];
    std::vector<std::string> word;
    for (const std::string& g : chain.cat3.words[i])
      for (const std::string& h : gen_image.at(g)) word.push_back(h);
    sigma.mor[m.id] = dual_chain.cat3.eval(sigma.ob.at(m.src), word);
  }
  check_functor(sigma);

  std::set<std::string> ob_values, mor_values;
  for (const auto& [k, v] : sigma.ob) ob_values.insert(v);
  for (const auto& [k, v] : sigma.mor) mor_values.insert(v);
  if (ob_values.size() != dual_chain.cat3.cat.objects().size() ||
      mor_values.size() != dual_chain.cat3.cat.morphisms().size())
    fail(errc::internal, "the chain symmetry is not bijective");
  if (!functor_equal(compose_functor(sigma, chain.iota3), dual_chain.iota3))
    fail(errc::internal, "the chain symmetry does not match the glued squares");
  return sigma;
}

}  // namespace reflekt
