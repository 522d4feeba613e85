#pragma once

// Shared numeric aliases, the tolerance ladder, and the error type used by
// runtime self-checks.  Every module reports a violated numerical identity
// through ToleranceBreach so callers can tell "bad input" (std::invalid_argument,
// std::domain_error, std::out_of_range) apart from "an identity that must hold
// failed at runtime".

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cmvkit {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Three-level tolerance ladder:
//   algebraic  - identities that hold to rounding error (matrix products,
//                recursions, closed-form entries),
//   quadrature - comparisons limited by numerical integration,
//   oracle     - comparisons that stack several quadrature-limited stages.
// The environment variable CMVKIT_TOL=X rescales the ladder to
// (X, 1e3*X, 1e4*X); set_tolerances overrides it programmatically.
struct Tolerances {
    double algebraic = 1e-13;
    double quadrature = 1e-10;
    double oracle = 1e-9;
};

namespace detail {
inline Tolerances& mutable_tolerances() {
    static Tolerances tols = [] {
        Tolerances t;
        if (const char* env = std::getenv("CMVKIT_TOL")) {
            char* end = nullptr;
            const double x = std::strtod(env, &end);
            if (end != env && x > 0.0) {
                t.algebraic = x;
                t.quadrature = x * 1e3;
                t.oracle = x * 1e4;
            }
        }
        return t;
    }();
    return tols;
}
}  // namespace detail

inline const Tolerances& tolerances() { return detail::mutable_tolerances(); }

inline void set_tolerances(const Tolerances& t) { detail::mutable_tolerances() = t; }

// Thrown when a runtime self-check finds a numerical identity out of
// tolerance.  The identity is named so the failure is actionable.
class ToleranceBreach : public std::runtime_error {
public:
    ToleranceBreach(const std::string& identity, double residual, double tolerance)
        : std::runtime_error(format_message(identity, residual, tolerance)),
          identity_(identity),
          residual_(residual),
          tolerance_(tolerance) {}

    const std::string& identity() const { return identity_; }
    double residual() const { return residual_; }
    double tolerance() const { return tolerance_; }

private:
    static std::string format_message(const std::string& identity, double residual,
                                      double tolerance) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), ": residual %.6e exceeds tolerance %.6e",
                      residual, tolerance);
        return "tolerance breach in " + identity + buf;
    }

    std::string identity_;
    double residual_;
    double tolerance_;
};

}  // namespace cmvkit
