#include "cmvkit/poly.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace cmvkit {

ComplexPoly::ComplexPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

ComplexPoly ComplexPoly::constant(cplx c) { return ComplexPoly({c}); }

ComplexPoly ComplexPoly::monomial(int degree, cplx c) {
    if (degree < 0) throw std::invalid_argument("monomial degree must be nonnegative");
    std::vector<cplx> coeffs(static_cast<std::size_t>(degree) + 1, cplx(0.0, 0.0));
    coeffs.back() = c;
    return ComplexPoly(std::move(coeffs));
}

cplx ComplexPoly::coeff(int j) const {
    if (j < 0 || j >= static_cast<int>(coeffs_.size())) return cplx(0.0, 0.0);
    return coeffs_[static_cast<std::size_t>(j)];
}

cplx ComplexPoly::eval(cplx z) const {
    cplx acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

ComplexPoly ComplexPoly::times_z() const {
    if (is_zero()) return {};
    std::vector<cplx> shifted(coeffs_.size() + 1, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < coeffs_.size(); ++j) shifted[j + 1] = coeffs_[j];
    return ComplexPoly(std::move(shifted));
}

ComplexPoly ComplexPoly::divided_by_z(double const_tol, const char* identity) const {
    if (is_zero()) return {};
    const double constant_term = std::abs(coeffs_.front());
    if (constant_term > const_tol) throw ToleranceBreach(identity, constant_term, const_tol);
    std::vector<cplx> shifted(coeffs_.begin() + 1, coeffs_.end());
    return ComplexPoly(std::move(shifted));
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), cplx(0.0, 0.0));
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) coeffs_[j] += rhs.coeffs_[j];
    trim();
    return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), cplx(0.0, 0.0));
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) coeffs_[j] -= rhs.coeffs_[j];
    trim();
    return *this;
}

ComplexPoly& ComplexPoly::operator*=(cplx s) {
    for (auto& c : coeffs_) c *= s;
    trim();  // s == 0 collapses to the zero polynomial
    return *this;
}

ComplexPoly& ComplexPoly::operator/=(cplx s) {
    if (s == cplx(0.0, 0.0)) throw std::invalid_argument("division of polynomial by zero scalar");
    for (auto& c : coeffs_) c /= s;
    trim();
    return *this;
}

void ComplexPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == cplx(0.0, 0.0)) coeffs_.pop_back();
}

}  // namespace cmvkit
