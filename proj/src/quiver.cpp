#include "reflekt/quiver.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "reflekt/error.hpp"

namespace reflekt {

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  std::set<std::string> vs;
  for (const auto& v : vertices_)
    if (!vs.insert(v).second) fail(errc::bad_input, "duplicate vertex '" + v + "'");
  std::set<std::string> as;
  for (const auto& a : arrows_) {
    if (!as.insert(a.id).second) fail(errc::bad_input, "duplicate arrow '" + a.id + "'");
    if (!vs.count(a.src)) fail(errc::unknown_vertex, "arrow '" + a.id + "' source '" + a.src + "'");
    if (!vs.count(a.tgt)) fail(errc::unknown_vertex, "arrow '" + a.id + "' target '" + a.tgt + "'");
  }
}

bool Quiver::has_vertex(const std::string& v) const {
  return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
}

bool Quiver::has_arrow(const std::string& id) const {
  for (const auto& a : arrows_)
    if (a.id == id) return true;
  return false;
}

const Arrow& Quiver::arrow(const std::string& id) const {
  for (const auto& a : arrows_)
    if (a.id == id) return a;
  fail(errc::unknown_arrow, "'" + id + "'");
}

std::vector<const Arrow*> Quiver::arrows_out(const std::string& v) const {
  std::vector<const Arrow*> out;
  for (const auto& a : arrows_)
    if (a.src == v) out.push_back(&a);
  return out;
}

std::vector<const Arrow*> Quiver::arrows_in(const std::string& v) const {
  std::vector<const Arrow*> out;
  for (const auto& a : arrows_)
    if (a.tgt == v) out.push_back(&a);
  return out;
}

bool Quiver::operator==(const Quiver& o) const {
  auto va = vertices_, vb = o.vertices_;
  std::sort(va.begin(), va.end());
  std::sort(vb.begin(), vb.end());
  if (va != vb) return false;
  auto key = [](const Arrow& x, const Arrow& y) { return x.id < y.id; };
  auto aa = arrows_, ab = o.arrows_;
  std::sort(aa.begin(), aa.end(), key);
  std::sort(ab.begin(), ab.end(), key);
  return aa == ab;
}

const char* vertex_class_name(VertexClass c) {
  switch (c) {
    case VertexClass::source: return "source";
    case VertexClass::sink: return "sink";
    case VertexClass::interior: return "interior";
    case VertexClass::isolated: return "isolated";
  }
  return "?";
}

VertexClass classify_vertex(const Quiver& q, const std::string& v) {
  if (!q.has_vertex(v)) fail(errc::unknown_vertex, "'" + v + "'");
  bool any_out = false, any_in = false;
  for (const auto& a : q.arrows()) {
    if (a.src == v) any_out = true;
    if (a.tgt == v) any_in = true;
  }
  if (!any_out && !any_in) return VertexClass::isolated;
  if (!any_in) return VertexClass::source;
  if (!any_out) return VertexClass::sink;
  return VertexClass::interior;
}

Quiver reflect(const Quiver& q, const std::string& v) {
  if (!q.has_vertex(v)) fail(errc::unknown_vertex, "'" + v + "'");
  std::vector<Arrow> arrows = q.arrows();
  for (auto& a : arrows)
    if (a.src == v || a.tgt == v) std::swap(a.src, a.tgt);
  return Quiver(q.vertices(), std::move(arrows));
}

bool is_oriented_tree(const Quiver& q) {
  long n = static_cast<long>(q.vertices().size());
  if (n == 0) return false;
  if (static_cast<long>(q.arrows().size()) != n - 1) return false;
  // connectivity of the underlying undirected graph
  std::set<std::string> seen{q.vertices().front()};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& a : q.arrows()) {
      bool s = seen.count(a.src), t = seen.count(a.tgt);
      if (s != t) {
        seen.insert(s ? a.tgt : a.src);
        grew = true;
      }
    }
  }
  return static_cast<long>(seen.size()) == n;
}

bool is_acyclic(const Quiver& q) {
  std::map<std::string, long> indeg;
  for (const auto& v : q.vertices()) indeg[v] = 0;
  for (const auto& a : q.arrows()) ++indeg[a.tgt];
  std::vector<std::string> ready;
  for (const auto& [v, d] : indeg)
    if (d == 0) ready.push_back(v);
  size_t removed = 0;
  while (!ready.empty()) {
    std::string v = ready.back();
    ready.pop_back();
    ++removed;
    for (const auto& a : q.arrows())
      if (a.src == v && --indeg[a.tgt] == 0) ready.push_back(a.tgt);
  }
  return removed == q.vertices().size();
}

bool same_underlying_graph(const Quiver& a, const Quiver& b) {
  auto va = a.vertices(), vb = b.vertices();
  std::sort(va.begin(), va.end());
  std::sort(vb.begin(), vb.end());
  if (va != vb) return false;
  if (a.arrows().size() != b.arrows().size()) return false;
  for (const auto& ar : a.arrows()) {
    if (!b.has_arrow(ar.id)) return false;
    const Arrow& br = b.arrow(ar.id);
    std::pair<std::string, std::string> ea = std::minmax(ar.src, ar.tgt);
    std::pair<std::string, std::string> eb = std::minmax(br.src, br.tgt);
    if (ea != eb) return false;
  }
  return true;
}

Quiver apply_plan(const Quiver& q, const std::vector<ReflectionStep>& plan) {
  Quiver cur = q;
  for (const auto& step : plan) {
    VertexClass c = classify_vertex(cur, step.vertex);
    VertexClass want =
        step.kind == ReflectionStep::kind_t::source ? VertexClass::source : VertexClass::sink;
    if (c != want)
      fail(errc::bad_input, "step at '" + step.vertex + "' declared " +
                                vertex_class_name(want) + " but vertex is " + vertex_class_name(c));
    cur = reflect(cur, step.vertex);
  }
  return cur;
}

std::vector<ReflectionStep> plan_reorientation(const Quiver& q, const Quiver& target) {
  if (!is_oriented_tree(q) || !is_oriented_tree(target))
    fail(errc::not_a_tree, "reorientation planning needs oriented trees");
  if (!same_underlying_graph(q, target))
    fail(errc::graph_mismatch, "quivers do not share an underlying graph");

  Quiver cur = q;
  std::vector<ReflectionStep> plan;

  // Flips the single arrow `aid`, leaving every other arrow's orientation
  // unchanged, by working at the endpoint away from `banned`: first reorient
  // that endpoint's other arrows so it becomes a sink (resp. source), reflect
  // there, then recursively restore the arrows the reflection disturbed.  The
  // recursion always moves strictly away from the top-level arrow, so it
  // terminates on a tree.
  std::function<void(const std::string&, const std::string&)> flip_arrow =
      [&](const std::string& aid, const std::string& banned) {
        const Arrow a = cur.arrow(aid);
        const std::string w = (a.src == banned) ? a.tgt : a.src;
        const bool into_w = (a.tgt == w);
        std::vector<std::pair<std::string, bool>> others;  // (arrow id, pointed into w?)
        for (const auto& f : cur.arrows())
          if (f.id != aid && (f.src == w || f.tgt == w)) others.emplace_back(f.id, f.tgt == w);
        for (const auto& [fid, into] : others)
          if (into != into_w) flip_arrow(fid, w);
        plan.push_back({w, into_w ? ReflectionStep::kind_t::sink : ReflectionStep::kind_t::source});
        cur = reflect(cur, w);
        for (const auto& [fid, into] : others)
          if (into == into_w) flip_arrow(fid, w);
      };

  for (const auto& a : q.arrows())
    if (cur.arrow(a.id).src != target.arrow(a.id).src) flip_arrow(a.id, cur.arrow(a.id).src);

  if (cur != target) fail(errc::internal, "reorientation replay did not reach the target");
  return plan;
}

std::map<std::string, std::vector<std::vector<std::string>>> enumerate_paths(
    const Quiver& q, const std::string& v) {
  if (!q.has_vertex(v)) fail(errc::unknown_vertex, "'" + v + "'");
  if (!is_acyclic(q)) fail(errc::cyclic_quiver, "path enumeration needs an acyclic quiver");
  std::map<std::string, std::vector<std::vector<std::string>>> out;
  std::vector<std::string> prefix;
  std::function<void(const std::string&)> walk = [&](const std::string& at) {
    out[at].push_back(prefix);
    auto outs = q.arrows_out(at);
    std::sort(outs.begin(), outs.end(),
              [](const Arrow* x, const Arrow* y) { return x->id < y->id; });
    for (const Arrow* a : outs) {
      prefix.push_back(a->id);
      walk(a->tgt);
      prefix.pop_back();
    }
  };
  walk(v);
  return out;
}

std::map<std::string, std::map<std::string, long>> path_count_matrix(const Quiver& q) {
  std::map<std::string, std::map<std::string, long>> m;
  for (const auto& u : q.vertices()) {
    auto paths = enumerate_paths(q, u);
    for (const auto& v : q.vertices()) {
      auto it = paths.find(v);
      m[u][v] = it == paths.end() ? 0 : static_cast<long>(it->second.size());
    }
  }
  return m;
}

long total_path_count(const Quiver& q) {
  long total = 0;
  for (const auto& [u, row] : path_count_matrix(q))
    for (const auto& [v, c] : row) total += c;
  return total;
}

}  // namespace reflekt
