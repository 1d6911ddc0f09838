#pragma once

#include <stdexcept>
#include <string>

namespace mbpoly {

enum class Errc {
  singular,
  ill_conditioned,
  not_spd,
  no_convergence,
  out_of_range,
  singular_coefficient,
  overflow,
  singular_iterate,
  degenerate_zeros,
  singular_weight,
  not_converged,
  singular_step,
  invalid_config,
};

/// Library-wide exception: a numerical error class plus a human-readable message.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::singular: return "Singular";
    case Errc::ill_conditioned: return "IllConditioned";
    case Errc::not_spd: return "NotSPD";
    case Errc::no_convergence: return "NoConvergence";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::singular_coefficient: return "SingularCoefficient";
    case Errc::overflow: return "Overflow";
    case Errc::singular_iterate: return "SingularIterate";
    case Errc::degenerate_zeros: return "DegenerateZeros";
    case Errc::singular_weight: return "SingularWeight";
    case Errc::not_converged: return "NotConverged";
    case Errc::singular_step: return "SingularStep";
    case Errc::invalid_config: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace mbpoly
