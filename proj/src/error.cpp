#include "reflekt/error.hpp"

namespace reflekt {

const char* errc_name(errc c) {
  switch (c) {
    case errc::unknown_vertex: return "UnknownVertex";
    case errc::unknown_arrow: return "UnknownArrow";
    case errc::unknown_object: return "UnknownObject";
    case errc::unknown_morphism: return "UnknownMorphism";
    case errc::bad_input: return "BadInput";
    case errc::bad_field: return "BadField";
    case errc::mismatch: return "Mismatch";
    case errc::graph_mismatch: return "GraphMismatch";
    case errc::not_a_tree: return "NotATree";
    case errc::cyclic_quiver: return "CyclicQuiver";
    case errc::not_a_source: return "NotASource";
    case errc::not_a_sink: return "NotASink";
    case errc::not_stabilized: return "NotStabilized";
    case errc::size_limit: return "SizeLimit";
    case errc::bad_morphism: return "BadMorphism";
    case errc::bad_square_data: return "BadSquareData";
    case errc::chain_mismatch: return "ChainMismatch";
    case errc::not_loopfree: return "NotLoopfree";
    case errc::base_mismatch: return "BaseMismatch";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::not_invertible: return "NotInvertible";
    case errc::audit_failed: return "AuditFailed";
    case errc::internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace reflekt
