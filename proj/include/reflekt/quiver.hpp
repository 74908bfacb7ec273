#pragma once

#include <map>
#include <string>
#include <vector>

namespace reflekt {

struct Arrow {
  std::string id;
  std::string src;
  std::string tgt;

  bool operator==(const Arrow& o) const { return id == o.id && src == o.src && tgt == o.tgt; }
};

// Finite directed multigraph with identified vertices and arrows. Loops and
// parallel arrows are representable; tree-specific operations reject them.
class Quiver {
 public:
  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  bool has_vertex(const std::string& v) const;
  bool has_arrow(const std::string& id) const;
  const Arrow& arrow(const std::string& id) const;  // UnknownArrow

  std::vector<const Arrow*> arrows_out(const std::string& v) const;
  std::vector<const Arrow*> arrows_in(const std::string& v) const;

  bool operator==(const Quiver& o) const;
  bool operator!=(const Quiver& o) const { return !(*this == o); }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

enum class VertexClass { source, sink, interior, isolated };
const char* vertex_class_name(VertexClass c);

VertexClass classify_vertex(const Quiver& q, const std::string& v);  // UnknownVertex

// Swaps source and target of every arrow adjacent to v; a loop at v maps to
// itself. Involution: reflect(reflect(q, v), v) == q.
Quiver reflect(const Quiver& q, const std::string& v);  // UnknownVertex

bool is_oriented_tree(const Quiver& q);
bool is_acyclic(const Quiver& q);

// True when both quivers have the same vertex set and, arrow id by arrow id,
// the same unordered endpoint pair.
bool same_underlying_graph(const Quiver& a, const Quiver& b);

struct ReflectionStep {
  enum class kind_t { source, sink };
  std::string vertex;
  kind_t kind;

  bool operator==(const ReflectionStep& o) const { return vertex == o.vertex && kind == o.kind; }
};

// Applies the steps in order, checking at each step that the vertex really is
// a source/sink as announced.  BadInput on a kind mismatch.
Quiver apply_plan(const Quiver& q, const std::vector<ReflectionStep>& plan);

// Produces a sequence of admissible source/sink reflections turning q into
// target; both must be oriented trees on the same underlying graph.
std::vector<ReflectionStep> plan_reorientation(const Quiver& q, const Quiver& target);

// All directed paths starting at v, keyed by their endpoint, each path a
// source-to-target arrow-id sequence, lexicographically ordered per endpoint.
// The empty path at v is included.  CyclicQuiver when paths do not terminate.
std::map<std::string, std::vector<std::vector<std::string>>> enumerate_paths(const Quiver& q,
                                                                             const std::string& v);

// Path counts between all vertex pairs: result[u][v] = number of directed
// paths u to v, trivial paths included.
std::map<std::string, std::map<std::string, long>> path_count_matrix(const Quiver& q);

long total_path_count(const Quiver& q);

}  // namespace reflekt
