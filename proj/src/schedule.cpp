#include "cmvkit/schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace cmvkit {

namespace {

constexpr double kAlphaSlack = 1e-12;   // |alpha| may exceed 1 by rounding only
constexpr double kZetaSlack = 1e-14;    // |zeta| must be 1 to rounding
constexpr double kSplitSlack = 1e-12;   // |alpha| = 1 detection for splits

std::string index_message(const char* what, int n) {
    return std::string(what) + " at index " + std::to_string(n);
}

}  // namespace

cplx rho_from_alpha(cplx alpha, cplx zeta) {
    const double a2 = std::norm(alpha);
    if (a2 > 1.0 + kAlphaSlack)
        throw std::domain_error("alpha outside the closed unit disk");
    const double mod = std::sqrt(std::max(0.0, 1.0 - a2));
    return mod * zeta;
}

CoefficientSchedule::CoefficientSchedule(int lo, std::vector<cplx> alpha,
                                         std::vector<cplx> zeta)
    : lo_(lo), alpha_(std::move(alpha)), zeta_(std::move(zeta)) {
    if (zeta_.empty()) zeta_.assign(alpha_.size(), cplx(1.0, 0.0));
    validate();
}

CoefficientSchedule CoefficientSchedule::half_lattice(std::vector<cplx> alpha,
                                                      std::vector<cplx> zeta) {
    CoefficientSchedule s(0, std::move(alpha), std::move(zeta));
    s.half_lattice_ = true;
    return s;
}

void CoefficientSchedule::validate() const {
    if (alpha_.empty()) throw std::invalid_argument("schedule must contain at least one coefficient");
    if (zeta_.size() != alpha_.size())
        throw std::invalid_argument("alpha and zeta sequences must have equal length");
    for (std::size_t j = 0; j < alpha_.size(); ++j) {
        if (std::norm(alpha_[j]) > 1.0 + kAlphaSlack)
            throw std::invalid_argument(index_message("alpha outside the closed unit disk", lo_ + static_cast<int>(j)));
        if (std::abs(std::abs(zeta_[j]) - 1.0) > kZetaSlack)
            throw std::invalid_argument(index_message("zeta is not unimodular", lo_ + static_cast<int>(j)));
    }
}

cplx CoefficientSchedule::alpha(int n) const {
    if (!contains(n)) throw std::out_of_range(index_message("alpha requested outside schedule window", n));
    return alpha_[static_cast<std::size_t>(n - lo_)];
}

cplx CoefficientSchedule::zeta(int n) const {
    if (!contains(n)) throw std::out_of_range(index_message("zeta requested outside schedule window", n));
    return zeta_[static_cast<std::size_t>(n - lo_)];
}

cplx CoefficientSchedule::rho(int n) const { return rho_from_alpha(alpha(n), zeta(n)); }

cplx CoefficientSchedule::alpha_ext(int n) const {
    if (contains(n)) return alpha(n);
    if (half_lattice_ && n < 0) return cplx(-1.0, 0.0);
    throw std::out_of_range(index_message("alpha requested outside schedule window", n));
}

cplx CoefficientSchedule::zeta_ext(int n) const {
    if (contains(n)) return zeta(n);
    if (half_lattice_ && n < 0) return cplx(1.0, 0.0);
    throw std::out_of_range(index_message("zeta requested outside schedule window", n));
}

cplx CoefficientSchedule::rho_ext(int n) const {
    if (contains(n)) return rho(n);
    if (half_lattice_ && n < 0) return cplx(0.0, 0.0);
    throw std::out_of_range(index_message("rho requested outside schedule window", n));
}

bool CoefficientSchedule::is_split_index(int n) const {
    return std::abs(std::abs(alpha_ext(n)) - 1.0) <= kSplitSlack;
}

CoefficientSchedule CoefficientSchedule::with_alpha(int n, cplx value) const {
    if (!contains(n)) throw std::out_of_range(index_message("with_alpha outside schedule window", n));
    CoefficientSchedule copy(*this);
    copy.alpha_[static_cast<std::size_t>(n - lo_)] = value;
    copy.validate();
    return copy;
}

CoefficientSchedule CoefficientSchedule::stripped() const {
    CoefficientSchedule copy(*this);
    copy.zeta_.assign(copy.alpha_.size(), cplx(1.0, 0.0));
    return copy;
}

CoefficientSchedule CoefficientSchedule::flipped() const {
    CoefficientSchedule copy(*this);
    for (auto& a : copy.alpha_) a = -a;
    return copy;
}

CoefficientSchedule CoefficientSchedule::shifted(int new_lo) const {
    CoefficientSchedule copy(*this);
    copy.lo_ = new_lo;
    copy.half_lattice_ = half_lattice_ && new_lo == 0;
    return copy;
}

}  // namespace cmvkit
