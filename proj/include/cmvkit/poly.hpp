#pragma once

// Dense complex polynomials in one variable.  Coefficients are stored
// lowest-degree first; exact trailing zeros are trimmed so degree() is
// well defined without any tolerance-dependent surprises.

#include <vector>

#include "cmvkit/common.hpp"

namespace cmvkit {

class ComplexPoly {
public:
    ComplexPoly() = default;  // the zero polynomial
    explicit ComplexPoly(std::vector<cplx> coeffs);

    static ComplexPoly constant(cplx c);
    static ComplexPoly monomial(int degree, cplx c = cplx(1.0, 0.0));

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    // Coefficient of z^j; zero outside the stored range.
    cplx coeff(int j) const;
    const std::vector<cplx>& coeffs() const { return coeffs_; }

    cplx eval(cplx z) const;  // Horner

    ComplexPoly times_z() const;

    // Divides by z.  The constant term must vanish to within const_tol;
    // otherwise the polynomial is not divisible and a ToleranceBreach
    // (naming the caller-supplied identity) is thrown.
    ComplexPoly divided_by_z(double const_tol, const char* identity = "polynomial division by z") const;

    ComplexPoly& operator+=(const ComplexPoly& rhs);
    ComplexPoly& operator-=(const ComplexPoly& rhs);
    ComplexPoly& operator*=(cplx s);
    ComplexPoly& operator/=(cplx s);

    friend ComplexPoly operator+(ComplexPoly lhs, const ComplexPoly& rhs) { return lhs += rhs; }
    friend ComplexPoly operator-(ComplexPoly lhs, const ComplexPoly& rhs) { return lhs -= rhs; }
    friend ComplexPoly operator*(ComplexPoly lhs, cplx s) { return lhs *= s; }
    friend ComplexPoly operator*(cplx s, ComplexPoly rhs) { return rhs *= s; }
    friend ComplexPoly operator/(ComplexPoly lhs, cplx s) { return lhs /= s; }

private:
    void trim();

    std::vector<cplx> coeffs_;
};

}  // namespace cmvkit
