#ifndef OVALLAB_ERRORS_HPP
#define OVALLAB_ERRORS_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace ovallab {

enum class errc {
  invalid_input,
  contract_violation,
  resolution_error,
  numerical_failure,
  positivity_violation,
  projection_failure,
  sampling_failure,
  insufficient_bound_states,
  domain_error,
  node_error,
  flat_map_error,
  unsupported_coupling,
  degeneracy_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_input: return "invalid_input";
    case errc::contract_violation: return "contract_violation";
    case errc::resolution_error: return "resolution_error";
    case errc::numerical_failure: return "numerical_failure";
    case errc::positivity_violation: return "positivity_violation";
    case errc::projection_failure: return "projection_failure";
    case errc::sampling_failure: return "sampling_failure";
    case errc::insufficient_bound_states: return "insufficient_bound_states";
    case errc::domain_error: return "domain_error";
    case errc::node_error: return "node_error";
    case errc::flat_map_error: return "flat_map_error";
    case errc::unsupported_coupling: return "unsupported_coupling";
    case errc::degeneracy_error: return "degeneracy_error";
  }
  return "unknown";
}

/// Structured failure carrying an error class and, where meaningful, the
/// coordinate (s or x) at which the condition was detected.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Error(errc code, const std::string& message, double location)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message +
                           " (at " + std::to_string(location) + ")"),
        code_(code),
        location_(location) {}

  errc code() const noexcept { return code_; }
  std::optional<double> location() const noexcept { return location_; }

 private:
  errc code_;
  std::optional<double> location_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) { throw Error(code, message); }

[[noreturn]] inline void fail_at(errc code, const std::string& message, double location) {
  throw Error(code, message, location);
}

}  // namespace ovallab

#endif
