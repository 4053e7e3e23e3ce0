#include "skipfree/errors.hpp"

namespace skipfree {

const char* errc_name(errc code) {
  switch (code) {
    case errc::negative_mass: return "NegativeMass";
    case errc::mass_not_one: return "MassNotOne";
    case errc::duplicate_support_point: return "DuplicateSupportPoint";
    case errc::invalid_parameter: return "InvalidParameter";
    case errc::domain_error: return "DomainError";
    case errc::unsupported_support: return "UnsupportedSupport";
    case errc::monotone_walk: return "MonotoneWalk";
    case errc::non_positive_drift: return "NonPositiveDrift";
    case errc::invalid_config: return "InvalidConfig";
    case errc::window_too_small: return "WindowTooSmall";
    case errc::root_not_bracketed: return "RootNotBracketed";
    case errc::inconsistent_rho: return "InconsistentRho";
    case errc::ambiguous_root: return "AmbiguousRoot";
    case errc::degenerate_excursion: return "DegenerateExcursion";
    case errc::out_of_range: return "OutOfRange";
    case errc::deterministic_offspring: return "Deterministic";
    case errc::singular_system: return "SingularSystem";
    case errc::chain_mismatch: return "ChainMismatch";
    case errc::invariant_violation: return "InvariantViolation";
  }
  return "UnknownError";
}

bool is_input_error(errc code) {
  switch (code) {
    case errc::negative_mass:
    case errc::mass_not_one:
    case errc::duplicate_support_point:
    case errc::invalid_parameter:
    case errc::domain_error:
    case errc::unsupported_support:
    case errc::monotone_walk:
    case errc::non_positive_drift:
    case errc::invalid_config:
    case errc::window_too_small:
      return true;
    default:
      return false;
  }
}

}  // namespace skipfree
