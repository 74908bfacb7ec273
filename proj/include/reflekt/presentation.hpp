#pragma once

#include <map>
#include <string>
#include <vector>

#include "reflekt/fincat.hpp"

namespace reflekt {

struct PresArrow {
  std::string id;
  std::string src;
  std::string tgt;
};

// A pair of parallel generator paths, stored in application order (the
// first entry is applied first).  An empty path is the identity.
struct PresRelation {
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;
};

// A finite category presentation: generating arrows plus path relations.
struct Presentation {
  std::vector<std::string> objects;
  std::vector<PresArrow> generators;
  std::vector<PresRelation> relations;
};

void validate_presentation(const Presentation& p);

// Walks a generator path from `start`, returning the end object.
std::string path_target(const Presentation& p, const std::string& start,
                        const std::vector<std::string>& path);

// A realized presentation.  `words` holds, per category morphism, a
// representative generator word in application order; `generator_morphism`
// maps each generator to the morphism holding its class.
struct Realization {
  FinCat cat;
  std::map<std::string, std::string> generator_morphism;
  std::vector<std::vector<std::string>> words;

  // Evaluates a generator path starting at `object` to a morphism name.
  std::string eval(const std::string& object, const std::vector<std::string>& path) const;
};

// Enumerates the congruence classes of generator paths of length <= bound
// and certifies completeness (every composite of representatives again has
// a representative).  Identity classes are named "1_<object>", other
// classes by their representative word "gk*...*g2*g1" (g1 applied first).
Realization realize(const Presentation& p, long bound);

// All morphisms as generators, all composition facts as relations.
Presentation tautological_presentation(const FinCat& c);

// The category obtained from [2] = 0 -> 1 -> 2 by freely inverting the
// composite 0 -> 2, with its ten canonically named morphisms.
FinCat category_R();

// The localization [2] -> R sending the generating arrows to a and b.
CatFunctor localization_q();

}  // namespace reflekt
