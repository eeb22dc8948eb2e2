#pragma once

#include <stdexcept>
#include <string>

namespace girylab {

enum class Errc {
  duplicate_index,
  negative_weight,
  mass_not_one,
  norm_not_one,
  unsupported_set_shape,
  enumeration_cap_exceeded,
  partial_map,
  partial_family,
  partial_sequence,
  tail_unsupported,
  divergence_undecidable,
  unknown_space,
  unknown_algebra,
  out_of_carrier,
  not_affine,
  not_permutation,
  bound_exceeded,
  index_out_of_range,
  empty_part,
  not_a_partition,
  unknown_point,
  broken_chain,
  overflow,
  division_by_zero,
  parse_error,
  unknown_suite,
  bad_config,
};

const char* errc_name(Errc c) noexcept;

/// Domain error carrying one of the codes above. Checkers never throw on a
/// failed law; errors are reserved for malformed inputs and resource limits.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(detail.empty() ? std::string(errc_name(code))
                                          : std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& detail = "") {
  throw Error(code, detail);
}

inline const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::duplicate_index: return "DuplicateIndex";
    case Errc::negative_weight: return "NegativeWeight";
    case Errc::mass_not_one: return "MassNotOne";
    case Errc::norm_not_one: return "NormNotOne";
    case Errc::unsupported_set_shape: return "UnsupportedSetShape";
    case Errc::enumeration_cap_exceeded: return "EnumerationCapExceeded";
    case Errc::partial_map: return "PartialMap";
    case Errc::partial_family: return "PartialFamily";
    case Errc::partial_sequence: return "PartialSequence";
    case Errc::tail_unsupported: return "TailUnsupported";
    case Errc::divergence_undecidable: return "DivergenceUndecidable";
    case Errc::unknown_space: return "UnknownSpace";
    case Errc::unknown_algebra: return "UnknownAlgebra";
    case Errc::out_of_carrier: return "OutOfCarrier";
    case Errc::not_affine: return "NotAffine";
    case Errc::not_permutation: return "NotPermutation";
    case Errc::bound_exceeded: return "BoundExceeded";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::empty_part: return "EmptyPart";
    case Errc::not_a_partition: return "NotAPartition";
    case Errc::unknown_point: return "UnknownPoint";
    case Errc::broken_chain: return "BrokenChain";
    case Errc::overflow: return "Overflow";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::parse_error: return "ParseError";
    case Errc::unknown_suite: return "UnknownSuite";
    case Errc::bad_config: return "BadConfig";
  }
  return "Error";
}

}  // namespace girylab
