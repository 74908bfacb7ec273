#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "reflekt/quiver.hpp"

namespace reflekt {

// A morphism record in a finite category.
struct Morph {
  std::string id;
  std::string src;
  std::string tgt;

  bool operator==(const Morph& other) const {
    return id == other.id && src == other.src && tgt == other.tgt;
  }
  bool operator!=(const Morph& other) const { return !(*this == other); }
};

// A finite category given by an explicit, total composition table.
//
// Construction validates structural well-formedness (unique identifiers,
// known endpoints, one identity per object, a table entry for exactly the
// composable pairs).  The heavier identity-law and associativity audit is
// exhaustive and lives in check().
class FinCat {
 public:
  FinCat() = default;
  FinCat(std::vector<std::string> objects, std::vector<Morph> morphisms,
         std::map<std::string, std::string> identity,
         std::vector<std::array<std::string, 3>> compose_table);

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Morph>& morphisms() const { return morphisms_; }

  bool has_object(const std::string& name) const;
  bool has_morphism(const std::string& name) const;
  long object_index(const std::string& name) const;
  long morphism_index(const std::string& name) const;
  const Morph& morphism(const std::string& name) const;
  const std::string& identity_of(const std::string& object) const;
  bool is_identity(const std::string& name) const;

  // True when compose(g, f) is defined, i.e. tgt(f) == src(g).
  bool composable(const std::string& g, const std::string& f) const;
  // g after f.  Fails with BadMorphism when the pair is not composable.
  std::string compose(const std::string& g, const std::string& f) const;
  long compose_index(long g, long f) const;

  // Morphisms a -> b in construction order.
  std::vector<std::string> hom(const std::string& a, const std::string& b) const;
  long hom_count(const std::string& a, const std::string& b) const;

  // Exhaustive identity-law and associativity audit.
  void check() const;

  // Structural equality, insensitive to storage order.
  bool operator==(const FinCat& other) const;
  bool operator!=(const FinCat& other) const { return !(*this == other); }

 private:
  std::vector<std::string> objects_;
  std::vector<Morph> morphisms_;
  std::map<std::string, long> object_index_;
  std::map<std::string, long> morphism_index_;
  std::vector<long> identity_;  // object index -> morphism index
  std::unordered_map<std::uint64_t, long> compose_;

  static std::uint64_t pair_key(long g, long f) {
    return (static_cast<std::uint64_t>(g) << 32) | static_cast<std::uint64_t>(f);
  }
};

// A functor between finite categories, stored as explicit object and
// morphism maps.
struct CatFunctor {
  FinCat source;
  FinCat target;
  std::map<std::string, std::string> ob;
  std::map<std::string, std::string> mor;
};

// Exhaustive functoriality audit: totality of both maps, endpoint
// preservation, identities, and all binary compositions.
void check_functor(const CatFunctor& f);

std::string apply_ob(const CatFunctor& f, const std::string& object);
std::string apply_mor(const CatFunctor& f, const std::string& morphism);

CatFunctor identity_functor(const FinCat& c);
// g after f; the categories must agree on the interface.
CatFunctor compose_functor(const CatFunctor& g, const CatFunctor& f);
bool functor_equal(const CatFunctor& f, const CatFunctor& g);
// Injective on objects and bijective on every hom-set.
bool is_full_embedding(const CatFunctor& f);

// Paths of an acyclic quiver under concatenation.  The empty path at v is
// named "1_v"; a path [a1, a2, ...] (a1 traversed first) is named
// "...*a2*a1".
FinCat free_category(const Quiver& q);

// Product category; objects and morphisms are named by component tuples
// "(x,y,...)".
FinCat product(const FinCat& c, const FinCat& d);
FinCat product_many(const std::vector<FinCat>& factors);

struct ConeResult {
  FinCat cat;
  CatFunctor include;  // the base category inside the (co)cone
};

// Adjoin a new initial object "-inf" with exactly one morphism "!x" to
// every object x.
ConeResult cone(const FinCat& c);
// Adjoin a new terminal object "+inf" with exactly one morphism "x!" from
// every object x.
ConeResult cocone(const FinCat& c);

FinCat opposite(const FinCat& c);

enum class extend_dir { to_target, to_source };

struct ExtendResult {
  FinCat cat;
  CatFunctor embed;  // full embedding of the original category
  std::string added_object;
  std::string added_arrow;
};

// Freely attach one new object to `attach` by a single arrow.  For
// to_target the arrow runs new -> attach and the new morphisms are the
// composites m∘w with m out of attach; to_source is dual.
ExtendResult one_point_extend(const FinCat& a, const std::string& attach,
                              extend_dir dir);

FinCat full_subcategory(const FinCat& c, const std::vector<std::string>& objects);

// Slice-style comma categories of a functor against a target object.
// comma_from(f, c) = (f/c) has objects (a|m) with m: f(a) -> c;
// comma_to(f, c) = (c/f) has objects (a|m) with m: c -> f(a).
// Morphisms are named "<g>|<source object>|<target object>".
FinCat comma_from(const CatFunctor& f, const std::string& c);
FinCat comma_to(const CatFunctor& f, const std::string& c);

// The category of factorizations of gamma: b1 -> b2 through u: objects
// (a|phi|psi) with phi: b1 -> u(a), psi: u(a) -> b2, psi∘phi = gamma;
// morphisms are the u-compatible morphisms of the source category.
FinCat factor_category(const CatFunctor& u, const std::string& b1,
                       const std::string& b2, const std::string& gamma);

// A square of functors p: D->A, q: D->B, u: A->C, v: B->C together with a
// natural transformation alpha: u∘p => v∘q (one target-category morphism
// per object of D).
struct TwoSidedSquare {
  CatFunctor p;
  CatFunctor q;
  CatFunctor u;
  CatFunctor v;
  std::map<std::string, std::string> alpha;
};

// Validates endpoints and naturality of alpha.
void check_square(const TwoSidedSquare& square);

// The two-sided factorization category (a/D/b)_gamma: objects (d|phi|psi)
// with phi: a -> p(d), psi: q(d) -> b and v(psi)∘alpha_d∘u(phi) = gamma;
// morphisms are the D-morphisms compatible with both triangles.
FinCat two_sided_factor(const TwoSidedSquare& square, const std::string& a,
                        const std::string& b, const std::string& gamma);

}  // namespace reflekt
