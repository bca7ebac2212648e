#pragma once

#include <stdexcept>
#include <string>

namespace flca {

// One code per violated contract; carried by every flca::Error.
enum class Errc {
  multiple_roots,
  no_root,
  cycle_detected,
  parent_out_of_range,
  empty_set,
  empty_mark_set,
  invalid_vertex,
  invalid_budget,
  scratch_dirty,
  instance_too_large,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace flca
