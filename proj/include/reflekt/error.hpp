#pragma once

#include <stdexcept>
#include <string>

namespace reflekt {

enum class errc {
  unknown_vertex,
  unknown_arrow,
  unknown_object,
  unknown_morphism,
  bad_input,
  bad_field,
  mismatch,
  graph_mismatch,
  not_a_tree,
  cyclic_quiver,
  not_a_source,
  not_a_sink,
  not_stabilized,
  size_limit,
  bad_morphism,
  bad_square_data,
  chain_mismatch,
  not_loopfree,
  base_mismatch,
  shape_mismatch,
  not_invertible,
  audit_failed,
  internal,
};

const char* errc_name(errc c);

// Single exception type for all domain errors; `code` carries the condition,
// `what()` the human-readable detail.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& detail) { throw error(code, detail); }

}  // namespace reflekt
