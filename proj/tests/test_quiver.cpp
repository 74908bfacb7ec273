#include "reflekt/quiver.hpp"

#include <map>
#include <queue>
#include <random>
#include <set>

#include "doctest.h"
#include "reflekt/error.hpp"

using namespace reflekt;

namespace {

Quiver a2() { return Quiver({"1", "2"}, {{"a", "1", "2"}}); }
Quiver a3_path() { return Quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}); }

// Orientation of a quiver as a bitmask relative to a fixed arrow order.
unsigned orientation_mask(const Quiver& ref, const Quiver& q) {
  unsigned m = 0;
  for (size_t i = 0; i < ref.arrows().size(); ++i)
    if (q.arrow(ref.arrows()[i].id).src != ref.arrows()[i].src) m |= 1u << i;
  return m;
}

// Independent reachability oracle: breadth-first search over all orientations
// of the tree, moving by reflections at vertices that are currently sources or
// sinks. Returns the set of reachable orientation masks.
std::set<unsigned> reachable_orientations(const Quiver& q) {
  std::set<unsigned> seen{orientation_mask(q, q)};
  std::queue<Quiver> todo;
  todo.push(q);
  while (!todo.empty()) {
    Quiver cur = todo.front();
    todo.pop();
    for (const auto& v : cur.vertices()) {
      VertexClass c = classify_vertex(cur, v);
      if (c != VertexClass::source && c != VertexClass::sink) continue;
      Quiver next = reflect(cur, v);
      unsigned m = orientation_mask(q, next);
      if (seen.insert(m).second) todo.push(next);
    }
  }
  return seen;
}

Quiver random_tree(std::mt19937& rng, int n) {
  std::vector<std::string> vs;
  std::vector<Arrow> as;
  for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    int j = parent(rng);
    std::string u = "v" + std::to_string(j), w = "v" + std::to_string(i);
    if (rng() % 2) std::swap(u, w);
    as.push_back({"e" + std::to_string(i), u, w});
  }
  return Quiver(vs, as);
}

Quiver random_reorientation(std::mt19937& rng, const Quiver& q) {
  std::vector<Arrow> as = q.arrows();
  for (auto& a : as)
    if (rng() % 2) std::swap(a.src, a.tgt);
  return Quiver(q.vertices(), as);
}

}  // namespace

TEST_CASE("construction validates identifiers") {
  CHECK_THROWS_AS(Quiver({"1", "1"}, {}), error);
  CHECK_THROWS_AS(Quiver({"1"}, {{"a", "1", "2"}}), error);
  CHECK_THROWS_AS(Quiver({"1", "2"}, {{"a", "1", "2"}, {"a", "2", "1"}}), error);
}

TEST_CASE("classify_vertex") {
  CHECK(classify_vertex(a2(), "1") == VertexClass::source);
  CHECK(classify_vertex(a2(), "2") == VertexClass::sink);
  Quiver q({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "3", "2"}});
  CHECK(classify_vertex(q, "2") == VertexClass::sink);
  Quiver iso({"1", "2", "3"}, {{"a", "1", "2"}});
  CHECK(classify_vertex(iso, "3") == VertexClass::isolated);
  CHECK(classify_vertex(a3_path(), "2") == VertexClass::interior);
  CHECK_THROWS_AS(classify_vertex(a2(), "9"), error);
}

TEST_CASE("reflect") {
  Quiver r = reflect(a2(), "1");
  CHECK(r.arrow("a").src == "2");
  CHECK(r.arrow("a").tgt == "1");
  CHECK(reflect(r, "1") == a2());

  Quiver p = reflect(a3_path(), "3");
  CHECK(p.arrow("a").src == "1");
  CHECK(p.arrow("b").src == "3");

  Quiver star({"q0", "q1", "q2"}, {{"a", "q0", "q1"}, {"b", "q0", "q2"}});
  Quiver rs = reflect(star, "q0");
  CHECK(rs.arrow("a").src == "q1");
  CHECK(rs.arrow("b").src == "q2");

  Quiver loop({"1"}, {{"l", "1", "1"}});
  CHECK(reflect(loop, "1") == loop);

  std::mt19937 rng(31);
  for (int t = 0; t < 20; ++t) {
    Quiver q = random_tree(rng, 2 + t % 6);
    for (const auto& v : q.vertices()) CHECK(reflect(reflect(q, v), v) == q);
    for (const auto& v : q.vertices()) CHECK(same_underlying_graph(q, reflect(q, v)));
  }
}

TEST_CASE("is_oriented_tree") {
  CHECK(is_oriented_tree(a3_path()));
  CHECK_FALSE(is_oriented_tree(Quiver({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}})));
  CHECK_FALSE(is_oriented_tree(Quiver({"1", "2"}, {})));
  CHECK(is_oriented_tree(Quiver({"1"}, {})));
  CHECK_FALSE(is_oriented_tree(Quiver({"1"}, {{"l", "1", "1"}})));
}

TEST_CASE("is_acyclic") {
  CHECK(is_acyclic(a3_path()));
  CHECK_FALSE(is_acyclic(Quiver({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}})));
  CHECK_FALSE(is_acyclic(Quiver({"1"}, {{"l", "1", "1"}})));
  CHECK(is_acyclic(Quiver({"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}})));
}

TEST_CASE("apply_plan validates step kinds") {
  std::vector<ReflectionStep> good{{"1", ReflectionStep::kind_t::source}};
  CHECK(apply_plan(a2(), good) == reflect(a2(), "1"));
  std::vector<ReflectionStep> bad{{"1", ReflectionStep::kind_t::sink}};
  CHECK_THROWS_AS(apply_plan(a2(), bad), error);
  std::vector<ReflectionStep> interior{{"2", ReflectionStep::kind_t::source}};
  CHECK_THROWS_AS(apply_plan(a3_path(), interior), error);
}

TEST_CASE("plan_reorientation basic examples") {
  Quiver q = a2();
  Quiver t({"1", "2"}, {{"a", "2", "1"}});
  auto plan = plan_reorientation(q, t);
  CHECK(plan.size() == 1);
  CHECK(apply_plan(q, plan) == t);

  CHECK(plan_reorientation(a3_path(), a3_path()).empty());

  CHECK_THROWS_AS(plan_reorientation(a3_path(), a2()), error);
  Quiver cyc({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}});
  CHECK_THROWS_AS(plan_reorientation(cyc, cyc), error);
  Quiver other({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "1", "3"}});
  CHECK_THROWS_AS(plan_reorientation(a3_path(), other), error);
}

TEST_CASE("plan_reorientation flips an interior edge") {
  Quiver q({"a", "b", "c", "d"}, {{"x", "a", "b"}, {"y", "b", "c"}, {"z", "c", "d"}});
  Quiver t({"a", "b", "c", "d"}, {{"x", "a", "b"}, {"y", "c", "b"}, {"z", "c", "d"}});
  auto plan = plan_reorientation(q, t);
  CHECK(apply_plan(q, plan) == t);
}

TEST_CASE("plan_reorientation against the orientation-space oracle") {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 30; ++trial) {
    Quiver q = random_tree(rng, 2 + trial % 8);
    Quiver t = random_reorientation(rng, q);
    auto reachable = reachable_orientations(q);
    REQUIRE(reachable.count(orientation_mask(q, t)));
    auto plan = plan_reorientation(q, t);
    CHECK(apply_plan(q, plan) == t);
  }
}

TEST_CASE("path enumeration") {
  auto paths = enumerate_paths(a3_path(), "1");
  CHECK(paths["1"] == std::vector<std::vector<std::string>>{{}});
  CHECK(paths["2"] == std::vector<std::vector<std::string>>{{"a"}});
  CHECK(paths["3"] == std::vector<std::vector<std::string>>{{"a", "b"}});

  Quiver star({"q0", "q1", "q2"}, {{"a", "q0", "q1"}, {"b", "q0", "q2"}});
  auto sp = enumerate_paths(star, "q0");
  CHECK(sp["q0"].size() == 1);
  CHECK(sp["q1"].size() == 1);
  CHECK(sp["q2"].size() == 1);

  CHECK(total_path_count(a3_path()) == 6);
  auto m = path_count_matrix(a3_path());
  CHECK(m["1"]["3"] == 1);
  CHECK(m["3"]["1"] == 0);

  // parallel arrows double the path count
  Quiver par({"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}});
  CHECK(enumerate_paths(par, "1")["2"].size() == 2);

  Quiver cyc({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}});
  CHECK_THROWS_AS(enumerate_paths(cyc, "1"), error);
}
