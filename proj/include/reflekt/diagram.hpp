#pragma once

#include <map>
#include <string>
#include <vector>

#include "reflekt/chain.hpp"
#include "reflekt/exact_matrix.hpp"
#include "reflekt/fincat.hpp"
#include "reflekt/linrep.hpp"
#include "reflekt/presentation.hpp"

namespace reflekt {

// A functor from a finite category into vector spaces: a space per object,
// a matrix per morphism; maps[m] has shape dims[tgt(m)] x dims[src(m)],
// identities carry identity matrices, and composition is respected.
struct VectDiagram {
  FinCat base;
  FieldSpec field;
  std::map<std::string, long> dims;
  std::map<std::string, ExactMatrix> maps;

  bool operator==(const VectDiagram& o) const;
  bool operator!=(const VectDiagram& o) const { return !(*this == o); }
};

// Fills in identity matrices for missing identities and zero matrices for
// the remaining missing morphisms, then validates the whole table.
VectDiagram make_diagram(FinCat base, FieldSpec field, std::map<std::string, long> dims,
                         std::map<std::string, ExactMatrix> maps);
VectDiagram zero_diagram(const FinCat& base, FieldSpec field);
// Exhaustive audit: shapes, identity matrices, and every binary composite.
void validate_diagram(const VectDiagram& x);

struct DiagramMorphism {
  VectDiagram source;
  VectDiagram target;
  std::map<std::string, ExactMatrix> components;
};

// Checks shapes and the naturality square of every morphism of the base.
void validate_diagram_morphism(const DiagramMorphism& f);
// Basis of the natural transformations X => Y, deterministic given the
// object and morphism order of the base.
std::vector<DiagramMorphism> diagram_hom_basis(const VectDiagram& x, const VectDiagram& y);

// The diagram on a realized free category whose generator matrices come
// from the representation; morphism matrices are word products.
VectDiagram representation_diagram(const Representation& m, const Realization& base);
// Reads a representation back off a diagram over the free category of q;
// arrows are looked up as one-step paths.
Representation diagram_representation(const VectDiagram& x, const Quiver& q);

// Pulls x back along u; requires x.base == u.target.
VectDiagram restrict_diagram(const VectDiagram& x, const CatFunctor& u);

enum class kan_side { left, right };

struct KanResult {
  VectDiagram diagram;  // the extension, on u.target
  // Comparison matrix per source object a: for the left extension the unit
  // X_a -> (Lan X)(u(a)), for the right extension the counit
  // (Ran X)(u(a)) -> X_a.
  std::map<std::string, ExactMatrix> comparison;
};

// Pointwise Kan extension along u.  Each value is presented by the two-term
// (co)equalizer over the comma category at the target object: the left
// extension is the cokernel of the difference map over comma morphisms,
// the right extension its kernel mirror.  When u is a full embedding the
// comparison matrices are checked invertible.
KanResult kan_extend(const VectDiagram& x, const CatFunctor& u, kan_side side);

enum class exactness_kind {
  cocartesian_square,
  cartesian_square,
  strongly_bicartesian_cube,
  biproduct_conditions,
  cofiber_square,
};

struct ExactnessReport {
  bool ok = false;
  std::string detail;  // first failing condition, when any
};

// Checks the named exactness property; the base must have the matching
// shape (the commutative square, a power of the interval, or a power of
// the 3-chain).
ExactnessReport exactness_check(const VectDiagram& x, exactness_kind kind);

// The biproduct diagram on [2]^n induced by placing the k-th input space
// at the tuple with a 1 in coordinate k and 2 elsewhere: built by the
// four-stage extension chain through the half cube and audited against
// biproduct_conditions before returning.
VectDiagram biproduct_cube(const std::vector<long>& inputs, FieldSpec field);

// Transports a diagram on the glued category across the localization that
// inverts every length-two coordinate composite.  Refuses inputs whose
// length-two matrices are singular; the result is validated and restricts
// back to the input on the nose.
VectDiagram invert_cube(const VectDiagram& x, const ReflectionChain& chain);

// One step of the staged reflection, as recorded in an optional trace:
// the diagram dimensions after the step plus a short remark (audit
// verdicts and the like).
struct PipelineStage {
  std::string stage;
  std::map<std::string, long> dims;
  std::string note;
};

// The reflection functor at a source computed by the staged extension
// chain: realize the representation, extend through the cube, invert,
// extend through the cofiber square, and read off the reflected tree.
// The intermediate cube and square are audited; a failed audit raises
// AuditFailed.  When `trace` is given, one record per stage is appended.
Representation pipeline_reflect(const Representation& m, const std::string& q0,
                                std::vector<PipelineStage>* trace = nullptr);

}  // namespace reflekt
