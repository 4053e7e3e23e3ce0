#ifndef SKIPFREE_ERRORS_HPP
#define SKIPFREE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace skipfree {

enum class errc {
  // input / validation
  negative_mass,
  mass_not_one,
  duplicate_support_point,
  invalid_parameter,
  domain_error,
  unsupported_support,
  monotone_walk,
  non_positive_drift,
  invalid_config,
  window_too_small,
  // numerical
  root_not_bracketed,
  inconsistent_rho,
  ambiguous_root,
  degenerate_excursion,
  out_of_range,
  deterministic_offspring,
  singular_system,
  chain_mismatch,
  invariant_violation,
};

const char* errc_name(errc code);

// True for errors caused by bad input (CLI exit code 2); the rest are
// numerical failures (exit code 3).
bool is_input_error(errc code);

class walk_error : public std::runtime_error {
 public:
  walk_error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

}  // namespace skipfree

#endif
