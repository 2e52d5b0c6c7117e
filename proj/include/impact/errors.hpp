#pragma once

#include <stdexcept>
#include <string>

namespace impact {

/// Error codes for every failure mode the library can report. Measures that
/// are mathematically "not defined" raise undefined_measure instead of
/// returning a sentinel number.
enum class errc {
    empty_input,
    negative_value,
    non_monotone_abscissae,
    non_decreasing_ordinates,
    out_of_domain,
    domain_mismatch,
    non_zero_tail,
    not_larger,
    result_not_decreasing,
    undefined_measure,
    zero_total,
    zero_mean,
    bad_exponent,
    inadmissible_parameter,
    mixed_psi_directions,
    bad_interval,
    identical_functions,
    not_dominated,
    not_dominated_pair,
    not_strictly_decreasing,
    construction_failed,
    bad_window,
    delta_too_large,
    bad_delta,
    digit_out_of_range,
    bad_index,
    inapplicable_axiom,
    inapplicable_measure,
    parse_error,
    empty_dataset,
    io_error,
    internal
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::empty_input: return "EmptyInput";
        case errc::negative_value: return "NegativeValue";
        case errc::non_monotone_abscissae: return "NonMonotoneAbscissae";
        case errc::non_decreasing_ordinates: return "NonDecreasingOrdinates";
        case errc::out_of_domain: return "OutOfDomain";
        case errc::domain_mismatch: return "DomainMismatch";
        case errc::non_zero_tail: return "NonZeroTail";
        case errc::not_larger: return "NotLarger";
        case errc::result_not_decreasing: return "ResultNotDecreasing";
        case errc::undefined_measure: return "Undefined";
        case errc::zero_total: return "ZeroTotal";
        case errc::zero_mean: return "ZeroMean";
        case errc::bad_exponent: return "BadExponent";
        case errc::inadmissible_parameter: return "InadmissibleParameter";
        case errc::mixed_psi_directions: return "MixedPsiDirections";
        case errc::bad_interval: return "BadInterval";
        case errc::identical_functions: return "IdenticalFunctions";
        case errc::not_dominated: return "NotDominated";
        case errc::not_dominated_pair: return "NotDominatedPair";
        case errc::not_strictly_decreasing: return "NotStrictlyDecreasing";
        case errc::construction_failed: return "ConstructionFailed";
        case errc::bad_window: return "BadWindow";
        case errc::delta_too_large: return "DeltaTooLarge";
        case errc::bad_delta: return "BadDelta";
        case errc::digit_out_of_range: return "DigitOutOfRange";
        case errc::bad_index: return "BadIndex";
        case errc::inapplicable_axiom: return "InapplicableAxiom";
        case errc::inapplicable_measure: return "InapplicableMeasure";
        case errc::parse_error: return "ParseError";
        case errc::empty_dataset: return "EmptyDataset";
        case errc::io_error: return "IoError";
        case errc::internal: return "Internal";
    }
    return "Unknown";
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

inline void require(bool ok, errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

}  // namespace impact
