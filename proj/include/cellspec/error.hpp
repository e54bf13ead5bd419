#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cellspec {

enum class Errc {
  relation_not_reflexive,
  relation_not_transitive,
  index_out_of_range,
  empty_poset,
  bad_arity,
  empty_set,
  size_overflow,
  no_top_element,
  set_not_in_fposet,
  not_an_antichain,
  not_surjective,
  precondition_unmet,
  no_nonempty_open,
  invalid_space,
  cap_exceeded,
  parse_error,
};

/// CamelCase name used in diagnostics and CLI output, e.g. "RelationNotTransitive".
std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cellspec
