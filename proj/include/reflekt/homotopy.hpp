#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reflekt/fincat.hpp"

namespace reflekt {

// Face-explicit semi-simplicial complex.  A d-simplex is a chain of d
// composable non-identity morphisms; a 0-simplex is a single object.  Two
// distinct simplices may share a vertex set (parallel morphisms), so faces
// are stored explicitly instead of being recovered from vertices.
struct SimplicialComplexData {
  // simplices[0][s] is a singleton {object}; simplices[d][s] for d >= 1 is
  // the chain of morphism names in application order.
  std::vector<std::vector<std::vector<std::string>>> simplices;
  // faces[d][s][i] indexes the i-th facet in simplices[d-1]: dropping the
  // front vertex for i = 0, composing at the i-th interior vertex for
  // 0 < i < d, dropping the back vertex for i = d.
  std::vector<std::vector<std::vector<long>>> faces;
};

// True when every endomorphism and every isomorphism is an identity, which
// is exactly the condition for the nerve to be finite.
bool is_loopfree(const FinCat& c);

SimplicialComplexData nerve(const FinCat& c);

// Structural audit: facet counts, index ranges, and the simplicial
// identities face_i(face_j(s)) = face_{j-1}(face_i(s)) for i < j.
void check_complex(const SimplicialComplexData& k);

struct HomologyGroup {
  long degree = 0;
  long betti = 0;
  std::vector<long> torsion;  // invariant factors > 1, each dividing the next
};

// Reduced integral homology in degrees 0..dim, via Smith normal form of the
// boundary matrices (degree 0 is reduced by the augmentation).
std::vector<HomologyGroup> reduced_homology(const SimplicialComplexData& k);

// One elementary collapse: `face` is free (its only remaining coface is
// `coface`) and both are removed.
struct CollapseStep {
  long dim = 0;     // dimension of the free face
  long face = 0;    // index into simplices[dim]
  long coface = 0;  // index into simplices[dim + 1]

  bool operator==(const CollapseStep& o) const {
    return dim == o.dim && face == o.face && coface == o.coface;
  }
  bool operator!=(const CollapseStep& o) const { return !(*this == o); }
};

enum class contractibility_verdict { contractible, not_contractible, unknown };

struct ContractibilityResult {
  contractibility_verdict verdict = contractibility_verdict::unknown;
  std::vector<CollapseStep> certificate;  // contractible: replayable collapses
  std::string witness;                    // not_contractible: the obstruction
  long witness_degree = -1;               // homology degree of the witness
  std::string diagnostics;                // unknown: state of the pi1 attempt
};

// Decides weak contractibility where possible: connectivity and homology
// witnesses refute, a greedy collapse sequence (with seeded shuffled
// restarts) certifies, and anything else is Unknown with the simplified
// edge-path fundamental-group presentation attached.
ContractibilityResult contractibility(const SimplicialComplexData& k,
                                      std::uint64_t seed = 0, long restarts = 32);

// True when the recorded steps are valid elementary collapses of k ending
// at a single vertex.
bool replay_collapse(const SimplicialComplexData& k,
                     const std::vector<CollapseStep>& certificate);

enum class check_verdict { yes, no, unknown };

struct FactorCase {
  std::string a;      // source endpoint of gamma, or the A-corner object
  std::string b;      // target endpoint of gamma, or the B-corner object
  std::string gamma;
  ContractibilityResult result;
};

struct CheckResult {
  check_verdict verdict = check_verdict::unknown;
  std::vector<FactorCase> cases;
};

// The factorization-category criterion: u is a homotopical epimorphism iff
// every category of factorizations of a target morphism through u has a
// weakly contractible nerve.
CheckResult is_homotopical_epimorphism(const CatFunctor& u, std::uint64_t seed = 0,
                                       long restarts = 32);

struct ExactnessFilter {
  std::optional<std::string> a;
  std::optional<std::string> b;
  std::optional<std::string> gamma;
};

// The two-sided criterion for a square: homotopy exactness holds iff every
// two-sided factorization category over (a, b, gamma) has a weakly
// contractible nerve; the filter restricts which triples are examined.
CheckResult is_homotopy_exact(const TwoSidedSquare& square,
                              const ExactnessFilter& filter = {},
                              std::uint64_t seed = 0, long restarts = 32);

}  // namespace reflekt
