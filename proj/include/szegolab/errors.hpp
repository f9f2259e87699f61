#pragma once

#include <stdexcept>
#include <string>

namespace szegolab {

enum class errc {
  non_convergent,
  evaluation_failure,
  unsupported_params,
  structure_violation,
  threshold_not_found,
  truncation_failure,
  divergence_risk,
  table_underflow,
  log_convexity_violation,
  cache_corrupt,
  config_error,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

inline const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::non_convergent: return "NonConvergent";
    case errc::evaluation_failure: return "EvaluationFailure";
    case errc::unsupported_params: return "UnsupportedParams";
    case errc::structure_violation: return "StructureViolation";
    case errc::threshold_not_found: return "ThresholdNotFound";
    case errc::truncation_failure: return "TruncationFailure";
    case errc::divergence_risk: return "DivergenceRisk";
    case errc::table_underflow: return "TableUnderflow";
    case errc::log_convexity_violation: return "LogConvexityViolation";
    case errc::cache_corrupt: return "CacheCorrupt";
    case errc::config_error: return "ConfigError";
  }
  return "UnknownError";
}

}  // namespace szegolab
