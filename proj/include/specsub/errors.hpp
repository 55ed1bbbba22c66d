#pragma once

#include <stdexcept>
#include <string>

namespace specsub {

enum class errc {
  self_loop,
  duplicate_edge,
  disconnected,
  vertex_out_of_range,
  invalid_params,
  invalid_k,
  size_cap_exceeded,
  multiplicity_underflow,
  domain_error,
  convergence_failure,
  numerical_rank_failure,
  ref_mismatch,
  degenerate_eigenvalue,
  singular_system,
  zero_multiplicity,
  rounding_ambiguity,
  unsupported_k,
  length_mismatch,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::self_loop: return "SelfLoop";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::disconnected: return "Disconnected";
    case errc::vertex_out_of_range: return "VertexOutOfRange";
    case errc::invalid_params: return "InvalidParams";
    case errc::invalid_k: return "InvalidK";
    case errc::size_cap_exceeded: return "SizeCapExceeded";
    case errc::multiplicity_underflow: return "MultiplicityUnderflow";
    case errc::domain_error: return "DomainError";
    case errc::convergence_failure: return "ConvergenceFailure";
    case errc::numerical_rank_failure: return "NumericalRankFailure";
    case errc::ref_mismatch: return "RefMismatch";
    case errc::degenerate_eigenvalue: return "DegenerateEigenvalue";
    case errc::singular_system: return "SingularSystem";
    case errc::zero_multiplicity: return "ZeroMultiplicityError";
    case errc::rounding_ambiguity: return "RoundingAmbiguity";
    case errc::unsupported_k: return "UnsupportedK";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace specsub
