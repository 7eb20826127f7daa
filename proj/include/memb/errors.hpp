#pragma once

#include <stdexcept>
#include <string>

namespace memb {

enum class errc {
    singular_matrix,
    degenerate_span,
    same_class,
    no_stable_lattice,
    window_unstable,
    tiling_failure,
    overlap_violation,
    indeterminate_cr,
    witness_invalid,
    not_convex,
    missing_stable,
    trivial_quotient,
    not_implemented,
    rank_deficient,
    parse_error,
    bad_input,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::singular_matrix: return "SingularMatrix";
        case errc::degenerate_span: return "DegenerateSpan";
        case errc::same_class: return "SameClass";
        case errc::no_stable_lattice: return "NoStableLattice";
        case errc::window_unstable: return "WindowUnstable";
        case errc::tiling_failure: return "TilingFailure";
        case errc::overlap_violation: return "OverlapViolation";
        case errc::indeterminate_cr: return "IndeterminateCR";
        case errc::witness_invalid: return "WitnessInvalid";
        case errc::not_convex: return "NotConvex";
        case errc::missing_stable: return "MissingStable";
        case errc::trivial_quotient: return "TrivialQuotient";
        case errc::not_implemented: return "NotImplemented";
        case errc::rank_deficient: return "RankDeficient";
        case errc::parse_error: return "ParseError";
        case errc::bad_input: return "BadInput";
    }
    return "Unknown";
}

struct error : std::runtime_error {
    errc code;
    error(errc c, const std::string& msg)
        : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

} // namespace memb
