#include "reflekt/presentation.hpp"

#include <algorithm>
#include <set>

#include "reflekt/error.hpp"

namespace reflekt {

void validate_presentation(const Presentation& p) {
  std::set<std::string> objects;
  for (const std::string& obj : p.objects) {
    if (obj.empty()) fail(errc::bad_input, "empty object name");
    if (!objects.insert(obj).second) fail(errc::bad_input, "duplicate object '" + obj + "'");
  }
  std::set<std::string> ids;
  for (const PresArrow& g : p.generators) {
    if (g.id.empty()) fail(errc::bad_input, "empty generator id");
    if (!ids.insert(g.id).second) fail(errc::bad_input, "duplicate generator '" + g.id + "'");
    if (!objects.count(g.src))
      fail(errc::unknown_object, "generator '" + g.id + "' has unknown source '" + g.src + "'");
    if (!objects.count(g.tgt))
      fail(errc::unknown_object, "generator '" + g.id + "' has unknown target '" + g.tgt + "'");
  }
  for (const PresRelation& r : p.relations) {
    if (r.lhs.empty() && r.rhs.empty()) fail(errc::bad_input, "relation between two empty paths");
    // Walk both sides from the common start to check parallelism.
    const std::vector<std::string>& probe = r.lhs.empty() ? r.rhs : r.lhs;
    std::string start;
    for (const PresArrow& g : p.generators)
      if (g.id == probe.front()) start = g.src;
    if (start.empty()) fail(errc::unknown_arrow, "relation uses unknown generator '" + probe.front() + "'");
    const std::string lhs_end = path_target(p, start, r.lhs);
    const std::string rhs_end = path_target(p, start, r.rhs);
    if (lhs_end != rhs_end) fail(errc::bad_input, "relation sides are not parallel");
  }
}

std::string path_target(const Presentation& p, const std::string& start,
                        const std::vector<std::string>& path) {
  std::string at = start;
  for (const std::string& id : path) {
    const PresArrow* gen = nullptr;
    for (const PresArrow& g : p.generators)
      if (g.id == id) gen = &g;
    if (gen == nullptr) fail(errc::unknown_arrow, "unknown generator '" + id + "'");
    if (gen->src != at)
      fail(errc::bad_input, "path applies '" + id + "' at '" + at + "' but it starts at '" + gen->src + "'");
    at = gen->tgt;
  }
  return at;
}

std::string Realization::eval(const std::string& object,
                              const std::vector<std::string>& path) const {
  std::string m = cat.identity_of(object);
  for (const std::string& gen : path) {
    auto it = generator_morphism.find(gen);
    if (it == generator_morphism.end()) fail(errc::unknown_arrow, "unknown generator '" + gen + "'");
    m = cat.compose(it->second, m);
  }
  return m;
}

namespace {

constexpr long kStateLimit = 20000;

// Coset-style enumeration of generator-path classes: states are classes of
// paths out of a fixed source object, transitions append one generator, and
// relations merge parallel walks at every state.
struct Enumeration {
  const Presentation& pres;
  long bound;

  std::vector<long> gen_src, gen_tgt;            // generator endpoints (object indices)
  std::vector<std::vector<long>> applicable;     // object index -> generator indices out of it
  std::map<std::string, long> object_index;

  std::vector<long> src, tgt;                    // per state
  std::vector<std::vector<long>> word;           // representative path, application order
  std::vector<long> parent;
  std::vector<std::vector<long>> delta;          // state x generator
  long live = 0;

  explicit Enumeration(const Presentation& p, long b) : pres(p), bound(b) {
    for (std::size_t i = 0; i < p.objects.size(); ++i)
      object_index[p.objects[i]] = static_cast<long>(i);
    applicable.resize(p.objects.size());
    for (std::size_t g = 0; g < p.generators.size(); ++g) {
      gen_src.push_back(object_index.at(p.generators[g].src));
      gen_tgt.push_back(object_index.at(p.generators[g].tgt));
      applicable[gen_src.back()].push_back(static_cast<long>(g));
    }
    for (std::size_t i = 0; i < p.objects.size(); ++i) make_state(i, i, {});
  }

  long make_state(long s, long t, std::vector<long> w) {
    src.push_back(s);
    tgt.push_back(t);
    word.push_back(std::move(w));
    parent.push_back(static_cast<long>(parent.size()));
    delta.emplace_back(pres.generators.size(), -1);
    if (++live > kStateLimit)
      fail(errc::size_limit, "realization exceeds " + std::to_string(kStateLimit) + " classes");
    return static_cast<long>(parent.size()) - 1;
  }

  long find(long x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  // Merges two classes; the state with the shorter representative word (the
  // earlier-created one on ties) survives, and the transition rows are merged
  // recursively.
  void merge(long a, long b) {
    std::vector<std::pair<long, long>> pending{{a, b}};
    while (!pending.empty()) {
      auto [x, y] = pending.back();
      pending.pop_back();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (word[y].size() < word[x].size() ||
          (word[y].size() == word[x].size() && y < x))
        std::swap(x, y);
      parent[y] = x;
      --live;
      for (std::size_t g = 0; g < pres.generators.size(); ++g) {
        if (delta[y][g] < 0) continue;
        if (delta[x][g] < 0)
          delta[x][g] = delta[y][g];
        else
          pending.push_back({delta[x][g], delta[y][g]});
      }
    }
  }

  // Walks a relation side from a state, defining missing transitions on the
  // way (within the word-length bound); returns -1 when the walk is blocked.
  long scan_fill(long s, const std::vector<long>& path, bool& changed) {
    long cur = find(s);
    for (long g : path) {
      long next = delta[cur][g];
      if (next < 0) {
        if (static_cast<long>(word[cur].size()) >= bound) return -1;
        std::vector<long> w = word[cur];
        w.push_back(g);
        next = make_state(src[cur], gen_tgt[g], std::move(w));
        delta[cur][g] = next;
        changed = true;
      }
      cur = find(next);
    }
    return cur;
  }

  void run() {
    std::map<std::string, long> gen_index;
    for (std::size_t g = 0; g < pres.generators.size(); ++g)
      gen_index[pres.generators[g].id] = static_cast<long>(g);
    // Group relations by the object their paths start at.
    struct Rel {
      std::vector<long> lhs, rhs;
    };
    std::vector<std::vector<Rel>> at_object(pres.objects.size());
    for (const PresRelation& r : pres.relations) {
      Rel rel;
      for (const std::string& id : r.lhs) rel.lhs.push_back(gen_index.at(id));
      for (const std::string& id : r.rhs) rel.rhs.push_back(gen_index.at(id));
      long start = gen_src[rel.lhs.empty() ? rel.rhs.front() : rel.lhs.front()];
      at_object[start].push_back(std::move(rel));
    }

    // Relations are closed eagerly while transitions are being defined, so
    // classes merge long before the word tree is explored in full.
    bool changed = true;
    while (changed) {
      changed = false;
      for (long s = 0; s < static_cast<long>(parent.size()); ++s) {
        if (find(s) != s) continue;
        for (const Rel& r : at_object[tgt[s]]) {
          long lhs = scan_fill(s, r.lhs, changed);
          long rhs = scan_fill(s, r.rhs, changed);
          if (lhs >= 0 && rhs >= 0 && lhs != rhs) {
            merge(lhs, rhs);
            changed = true;
          }
          if (find(s) != s) break;
        }
        if (find(s) != s) continue;
        for (long g : applicable[tgt[s]]) {
          if (delta[s][g] >= 0) continue;
          if (static_cast<long>(word[s].size()) >= bound) continue;
          std::vector<long> w = word[s];
          w.push_back(g);
          delta[s][g] = make_state(src[s], gen_tgt[g], std::move(w));
          changed = true;
        }
      }
    }
    // Completeness certificate: no live state may have a missing transition.
    for (long s = 0; s < static_cast<long>(parent.size()); ++s) {
      if (find(s) != s) continue;
      for (long g : applicable[tgt[s]])
        if (delta[s][g] < 0)
          fail(errc::not_stabilized,
               "bound " + std::to_string(bound) + " did not certify completeness");
    }
  }
};

}  // namespace

Realization realize(const Presentation& p, long bound) {
  if (bound < 1) fail(errc::bad_input, "bound must be positive");
  validate_presentation(p);
  Enumeration tc(p, bound);
  tc.run();

  std::vector<long> reps;
  std::map<long, long> row_of;  // representative state -> morphism index
  for (long s = 0; s < static_cast<long>(tc.parent.size()); ++s)
    if (tc.find(s) == s) {
      row_of[s] = static_cast<long>(reps.size());
      reps.push_back(s);
    }

  auto word_name = [&](long state) {
    if (tc.word[state].empty()) return "1_" + p.objects[tc.src[state]];
    std::string out;
    for (auto it = tc.word[state].rbegin(); it != tc.word[state].rend(); ++it) {
      if (!out.empty()) out += "*";
      out += p.generators[*it].id;
    }
    return out;
  };

  std::vector<Morph> morphisms;
  std::map<std::string, std::string> identity;
  for (long s : reps) {
    morphisms.push_back({word_name(s), p.objects[tc.src[s]], p.objects[tc.tgt[s]]});
    if (tc.word[s].empty()) identity[p.objects[tc.src[s]]] = morphisms.back().id;
  }
  std::vector<std::array<std::string, 3>> table;
  for (long f : reps) {
    for (long g : reps) {
      if (tc.tgt[f] != tc.src[g]) continue;
      long composite = f;
      for (long gen : tc.word[g]) {
        composite = tc.delta[tc.find(composite)][gen];
        if (composite < 0) fail(errc::internal, "certified enumeration has a missing composite");
        composite = tc.find(composite);
      }
      table.push_back({morphisms[row_of.at(g)].id, morphisms[row_of.at(f)].id,
                       morphisms[row_of.at(composite)].id});
    }
  }

  Realization out;
  out.cat = FinCat(p.objects, morphisms, identity, table);
  for (std::size_t g = 0; g < p.generators.size(); ++g) {
    long id_state = tc.find(tc.gen_src[g]);
    long gen_state = tc.delta[id_state][g];
    if (gen_state < 0) fail(errc::internal, "generator has no realized class");
    out.generator_morphism[p.generators[g].id] = morphisms[row_of.at(tc.find(gen_state))].id;
  }
  for (long s : reps) {
    std::vector<std::string> w;
    for (long gen : tc.word[s]) w.push_back(p.generators[gen].id);
    out.words.push_back(w);
  }
  return out;
}

Presentation tautological_presentation(const FinCat& c) {
  Presentation p;
  p.objects = c.objects();
  for (const Morph& m : c.morphisms())
    if (!c.is_identity(m.id)) p.generators.push_back({m.id, m.src, m.tgt});
  for (const Morph& f : c.morphisms()) {
    if (c.is_identity(f.id)) continue;
    for (const Morph& g : c.morphisms()) {
      if (c.is_identity(g.id) || g.src != f.tgt) continue;
      std::string composite = c.compose(g.id, f.id);
      PresRelation r;
      r.lhs = {f.id, g.id};
      if (!c.is_identity(composite)) r.rhs = {composite};
      p.relations.push_back(r);
    }
  }
  return p;
}

FinCat category_R() {
  std::vector<std::string> objects{"0", "1", "2"};
  std::vector<Morph> morphisms{
      {"1_0", "0", "0"}, {"1_1", "1", "1"}, {"1_2", "2", "2"}, {"a", "0", "1"},
      {"b", "1", "2"},   {"ba", "0", "2"}, {"c", "2", "0"},   {"ac", "2", "1"},
      {"cb", "1", "0"},  {"t", "1", "1"},
  };
  std::map<std::string, std::string> identity{{"0", "1_0"}, {"1", "1_1"}, {"2", "1_2"}};
  // Every hom-set is a single morphism except Hom(1,1) = {1_1, t}; a
  // composite through 0 or 2 lands on t.
  std::map<std::pair<std::string, std::string>, std::string> unique{
      {{"0", "0"}, "1_0"}, {{"0", "1"}, "a"},  {{"0", "2"}, "ba"}, {{"1", "0"}, "cb"},
      {{"1", "2"}, "b"},   {{"2", "0"}, "c"},  {{"2", "1"}, "ac"}, {{"2", "2"}, "1_2"},
  };
  std::vector<std::array<std::string, 3>> table;
  for (const Morph& g : morphisms)
    for (const Morph& f : morphisms) {
      if (f.tgt != g.src) continue;
      std::string composite;
      if (f.src == "1" && g.tgt == "1")
        composite = (f.id == "1_1" && g.id == "1_1") ? "1_1" : "t";
      else
        composite = unique.at({f.src, g.tgt});
      table.push_back({g.id, f.id, composite});
    }
  return FinCat(objects, morphisms, identity, table);
}

CatFunctor localization_q() {
  Quiver two({"0", "1", "2"}, {{"s01", "0", "1"}, {"s12", "1", "2"}});
  CatFunctor q;
  q.source = free_category(two);
  q.target = category_R();
  q.ob = {{"0", "0"}, {"1", "1"}, {"2", "2"}};
  q.mor = {{"1_0", "1_0"}, {"1_1", "1_1"}, {"1_2", "1_2"},
           {"s01", "a"},   {"s12", "b"},   {"s12*s01", "ba"}};
  return q;
}

}  // namespace reflekt
