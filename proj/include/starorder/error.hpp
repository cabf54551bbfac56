#pragma once

#include <stdexcept>
#include <string>

namespace starorder {

// Every recoverable failure in the library throws Error with one of these
// codes. The C API and the CLI map them onto their numeric contracts.
enum class Errc {
    arity_mismatch,
    mode_mismatch,
    not_hermitian,
    index_out_of_range,
    not_symmetric,
    no_convergence,
    not_psd,
    dimension_mismatch,
    rank_deficient,
    is_member,
    not_in_dual_cone,
    desk_scale_exceeded,
    space_mismatch,
    not_positive,
    not_hermitian_functional,
    degree_exceeded,
    missing_moment,
    not_state,
    degree_headroom_missing,
    not_flat,
    degenerate_spectrum,
    odd_degree,
    not_absorbed,
    not_decreasing,
    invalid_value,
    parse_error,
};

inline const char* errc_name(Errc code) {
    switch (code) {
        case Errc::arity_mismatch: return "ArityMismatch";
        case Errc::mode_mismatch: return "ModeMismatch";
        case Errc::not_hermitian: return "NotHermitian";
        case Errc::index_out_of_range: return "IndexOutOfRange";
        case Errc::not_symmetric: return "NotSymmetric";
        case Errc::no_convergence: return "NoConvergence";
        case Errc::not_psd: return "NotPsd";
        case Errc::dimension_mismatch: return "DimensionMismatch";
        case Errc::rank_deficient: return "RankDeficient";
        case Errc::is_member: return "IsMember";
        case Errc::not_in_dual_cone: return "NotInDualCone";
        case Errc::desk_scale_exceeded: return "DeskScaleExceeded";
        case Errc::space_mismatch: return "SpaceMismatch";
        case Errc::not_positive: return "NotPositive";
        case Errc::not_hermitian_functional: return "NotHermitianFunctional";
        case Errc::degree_exceeded: return "DegreeExceeded";
        case Errc::missing_moment: return "MissingMoment";
        case Errc::not_state: return "NotState";
        case Errc::degree_headroom_missing: return "DegreeHeadroomMissing";
        case Errc::not_flat: return "NotFlat";
        case Errc::degenerate_spectrum: return "DegenerateSpectrum";
        case Errc::odd_degree: return "OddDegree";
        case Errc::not_absorbed: return "NotAbsorbed";
        case Errc::not_decreasing: return "NotDecreasing";
        case Errc::invalid_value: return "InvalidValue";
        case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace starorder
