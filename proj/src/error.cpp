#include "cellspec/error.hpp"

namespace cellspec {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::relation_not_reflexive: return "RelationNotReflexive";
    case Errc::relation_not_transitive: return "RelationNotTransitive";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::empty_poset: return "EmptyPoset";
    case Errc::bad_arity: return "BadArity";
    case Errc::empty_set: return "EmptySet";
    case Errc::size_overflow: return "SizeOverflow";
    case Errc::no_top_element: return "NoTopElement";
    case Errc::set_not_in_fposet: return "SetNotInFPoset";
    case Errc::not_an_antichain: return "NotAnAntichain";
    case Errc::not_surjective: return "NotSurjective";
    case Errc::precondition_unmet: return "PreconditionUnmet";
    case Errc::no_nonempty_open: return "NoNonemptyOpen";
    case Errc::invalid_space: return "InvalidSpace";
    case Errc::cap_exceeded: return "CapExceeded";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace cellspec
