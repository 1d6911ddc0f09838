#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "mbpoly/coefficients.hpp"

namespace mbpoly {

/// Resolved experiment configuration: family plus its scaling.
struct RunConfig {
  CoefficientFamily family;
  ScalingSequence scaling;
  nlohmann::json resolved() const;  // full config echo for report embedding

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);

private:
  RunConfig(CoefficientFamily f, ScalingSequence s)
      : family(std::move(f)), scaling(std::move(s)) {}
  std::string family_json_;
  std::string scaling_json_;
};

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);
/// Fixed 17-significant-digit form (quadrature CSV columns).
std::string format_double17(double x);

/// "a+bi" / "a-bi" / "a" parser; both parts must be finite.
Complex parse_complex(const std::string& s);
std::string format_complex(Complex z);

/// Deterministic PRNG for property draws (splitmix64, seed 0xC0FFEE).
class PropertyRng {
public:
  explicit PropertyRng(std::uint64_t seed = 0xC0FFEE) : state_(seed) {}
  std::uint64_t next_u64();
  double uniform(double lo, double hi);

private:
  std::uint64_t state_;
};

}  // namespace mbpoly
