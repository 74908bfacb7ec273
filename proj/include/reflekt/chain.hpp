#pragma once

#include <string>
#include <vector>

#include "reflekt/fincat.hpp"
#include "reflekt/presentation.hpp"
#include "reflekt/quiver.hpp"

namespace reflekt {

// The staged gluing that replaces a source (dual: a sink) q0 of an oriented
// tree by the invertible-cube configuration.  Stages:
//
//   tree -u1-> stage1 -u2-> stage2 -u3-> stage3 -u4-> cat1
//        -u5-> cat2 -u6-> stage_z -u7-> cat3
//
// stage1 adds the cube apex over the spoke vertices, stage2 the rest of the
// half cube reached by the coning, stage3 the corner objects, cat1 the full
// coordinate cube, cat2 inverts every length-two coordinate composite,
// stage_z adds the free cofiber object z, and cat3 closes the square with
// the fresh corner object q0'.
//
// Cube objects are named by coordinate tuples "(i1,...,in)"; objects
// identified with tree vertices keep the vertex identifier.  Synthetic
// generators are prefixed with '@': "@u<j>_<src>" raises cube coordinate j,
// "@inv<j>_<src>" is an adjoined inverse, "@c0", "@hz", "@hb", "@hzp" are
// the square legs.
struct ReflectionChain {
  Quiver quiver;
  std::string q0;
  bool dual = false;  // false: q0 is a source; true: q0 is a sink
  long valence = 0;
  std::vector<std::string> spokes;       // neighbours of q0, sorted by id
  std::vector<std::string> spoke_arrow;  // arrow ids at q0, aligned with spokes

  Realization tree;     // free category of the input tree
  Realization stage1;
  Realization stage2;
  Realization stage3;
  Realization cat1;
  Realization cat2;
  Realization stage_z;
  Realization cat3;

  CatFunctor u1, u2, u3, u4, u5, u6, u7;
  CatFunctor iota1;  // cube -> cat1
  CatFunctor iota2;  // rn -> cat2
  CatFunctor iota3;  // square -> cat3
  CatFunctor loc;    // cube -> rn, componentwise localization
  CatFunctor reflected_embed;  // free category of the reflected tree -> cat3

  FinCat cube;    // [2]^n as an n-fold product of 3-chains
  FinCat rn;      // R^n
  FinCat square;  // the commutative square [1]x[1]

  std::string apex;    // all-2 corner (primal) / all-0 corner (dual)
  std::string b;       // the all-1 cube object
  std::string z;       // cofiber object
  std::string qprime;  // fresh square corner
};

// Builds the chain at a source q0 of the oriented tree q.  The realization
// bound starts at 2*diameter+4 and doubles up to four times.
ReflectionChain build_reflection_chain(const Quiver& q, const std::string& q0);

// The mirrored construction at a sink q0.
ReflectionChain build_dual_chain(const Quiver& q, const std::string& q0);

// The isomorphism cat3 -> cat3' between the chain at (q, q0) and the dual
// chain at (reflect(q, q0), q0): identity on the shared tree, coordinate
// flip x -> 2-x on the cube, and the square corners swapped.
CatFunctor sigma_iso(const ReflectionChain& chain, const ReflectionChain& dual_chain);

}  // namespace reflekt
