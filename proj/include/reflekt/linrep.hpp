#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reflekt/exact_matrix.hpp"
#include "reflekt/quiver.hpp"

namespace reflekt {

// A vector space per vertex, a linear map per arrow; maps[a] has shape
// dims[t(a)] x dims[s(a)].
struct Representation {
  Quiver quiver;
  FieldSpec field;
  std::map<std::string, long> dims;
  std::map<std::string, ExactMatrix> maps;

  bool operator==(const Representation& o) const;
  bool operator!=(const Representation& o) const { return !(*this == o); }
};

// Fills in zero maps for missing arrows and validates all shapes.
Representation make_representation(Quiver quiver, FieldSpec field,
                                   std::map<std::string, long> dims,
                                   std::map<std::string, ExactMatrix> maps);
Representation zero_representation(const Quiver& q, FieldSpec field);
void validate_representation(const Representation& m);

struct RepMorphism {
  Representation source;
  Representation target;
  std::map<std::string, ExactMatrix> components;
};

// Checks shapes and the intertwining equations component by component.
void validate_morphism(const RepMorphism& f);
RepMorphism identity_morphism(const Representation& m);
RepMorphism compose(const RepMorphism& g, const RepMorphism& f);
bool morphism_equal(const RepMorphism& f, const RepMorphism& g);

// Flattened coordinates of a morphism's components in the hom-space unknown
// order (vertices sorted, entries row-major); the inverse reassembles them.
ExactMatrix morphism_to_vector(const RepMorphism& f);
RepMorphism vector_from_coords(const Representation& m, const Representation& n,
                               const ExactMatrix& column);

// Basis of Hom(M, N), deterministic given the vertex and arrow order.
std::vector<RepMorphism> hom_basis(const Representation& m, const Representation& n);

struct KernelResult {
  Representation rep;
  RepMorphism map;  // inclusion rep -> source
};
struct CokernelResult {
  Representation rep;
  RepMorphism map;  // projection target -> rep
};
KernelResult kernel(const RepMorphism& f);
CokernelResult cokernel(const RepMorphism& f);

struct DirectSumResult {
  Representation rep;
  std::vector<RepMorphism> inclusions;
  std::vector<RepMorphism> projections;
};
DirectSumResult direct_sum(const std::vector<Representation>& parts, const Quiver& q,
                           FieldSpec field);

// Indecomposable projective at v: dims count directed paths from v, arrow maps
// concatenate paths; path bases are ordered lexicographically by arrow ids.
Representation projective(const Quiver& q, const std::string& v, FieldSpec field);

// The morphism P_w -> P_v induced by a path p : v ~> w (prefixing with p).
RepMorphism path_morphism(const Quiver& q, const std::string& v, const std::string& w,
                          const std::vector<std::string>& path, FieldSpec field);

// Reflection functor at a source: replaces M at q0 by the cokernel of the
// canonical map into the sum over outgoing arrows; lives on reflect(Q, q0).
Representation reflect_minus(const Representation& m, const std::string& q0);

// Dual reflection functor at a sink, via the kernel of the canonical map from
// the sum over incoming arrows.
Representation reflect_plus(const Representation& n, const std::string& q0);

struct AdjunctionReport {
  long dim_lhs = 0;  // dim Hom(s- M, N)
  long dim_rhs = 0;  // dim Hom(M, s+ N)
  ExactMatrix iso;   // change of basis witnessing the natural bijection
  bool ok = false;
};
AdjunctionReport check_adjunction(const Representation& m, const Representation& n,
                                  const std::string& q0);

struct AprReport {
  std::vector<std::string> order;  // row/column labels of the matrices below
  std::vector<std::vector<long>> hom_matrix;   // dim Hom(T_u, T_v)
  std::vector<std::vector<long>> path_matrix;  // paths u ~> v in the input quiver
  long dim_end = 0;
  long paths_original = 0;
  long paths_reflected = 0;
  bool ok = false;
};
AprReport apr_tilting_check(const Quiver& q, const std::string& q0, FieldSpec field);

long euler_form(const Quiver& q, const std::map<std::string, long>& d,
                const std::map<std::string, long>& e);
std::map<std::string, long> reflect_dim_vector(const Quiver& q, const std::string& q0,
                                               const std::map<std::string, long>& d);

struct EulerReport {
  long pairs_checked = 0;
  bool ok = false;
  std::string detail;  // first failing pair, when any
};
EulerReport euler_reflection_check(const Quiver& q, const std::string& q0,
                                   const std::vector<std::map<std::string, long>>& samples);

// Searches for an invertible morphism M -> N among basis elements and seeded
// small random combinations.
std::optional<RepMorphism> iso_search(const Representation& m, const Representation& n,
                                      unsigned seed = 1, int attempts = 64);

}  // namespace reflekt
