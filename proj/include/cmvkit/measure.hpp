#pragma once

// Probability measures on the unit circle and their trigonometric moments.
//
// Builtin measures:
//   lebesgue      dmu = dtheta/(2*pi)
//   geronimus_mu  dmu = (1 - cos(theta)) dtheta/(2*pi)
//   geronimus_nu  dnu = (1/2) dtheta/(2*pi) + (1/2) delta_{z=1}
// plus user densities sampled on a theta-grid and measures defined only
// through their recursion coefficients.  Densities are taken against the
// normalized Lebesgue measure dtheta/(2*pi), so the constant density 1 is
// the Lebesgue case.
//
// Moments use the convention m_k = integral of xi^k dmu(xi); the Gram matrix
// of the monomials is the Hermitian Toeplitz matrix H_{jk} = m_{k-j}
// (inner products conjugate-linear in the first slot).

#include <functional>
#include <string>
#include <vector>

#include "cmvkit/common.hpp"
#include "cmvkit/schedule.hpp"

namespace cmvkit {

enum class MeasureKind { lebesgue, geronimus_mu, geronimus_nu, density_grid, coefficient_defined };

class Moments {
public:
    // m[k] holds the order-k moment for k = 0..max_order.  m_0 must equal 1
    // (probability measure) to within 1e-10.
    explicit Moments(std::vector<cplx> m);

    int max_order() const { return static_cast<int>(m_.size()) - 1; }

    // Negative orders return the exact conjugate of the positive order.
    cplx at(int k) const;

private:
    std::vector<cplx> m_;
};

class MeasureSpec {
public:
    static MeasureSpec builtin(const std::string& name);
    // Density w(theta) against dtheta/(2*pi), sampled on a strictly
    // increasing grid in [0, 2*pi); integration wraps periodically.
    static MeasureSpec density(std::vector<double> theta, std::vector<double> values);
    // Measure known only through its recursion coefficients; integration by
    // quadrature is unavailable but moments follow from the monic recursion.
    static MeasureSpec from_coefficients(CoefficientSchedule schedule);

    MeasureKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

    // Integral of f over the unit circle.  nodes = 0 picks a default (512 for
    // builtins); density grids integrate on their own grid.  Throws
    // std::domain_error for coefficient-defined measures.
    cplx integrate(const std::function<cplx(cplx)>& f, int nodes = 0) const;

    bool has_quadrature() const { return kind_ != MeasureKind::coefficient_defined; }

    // Closed-form recursion coefficients where known: builtins and
    // coefficient-defined measures.  Throws std::domain_error otherwise.
    std::vector<cplx> closed_form_coefficients(int count) const;

    const CoefficientSchedule* coefficient_schedule() const;

private:
    MeasureSpec() = default;

    MeasureKind kind_ = MeasureKind::lebesgue;
    std::string name_;
    std::vector<double> theta_;
    std::vector<double> values_;
    std::vector<CoefficientSchedule> schedule_;  // empty or one element
};

// Moments m_0..m_max_order.  Quadrature-backed measures require
// nodes >= 4 * max_order (nodes = 0 picks max(512, 8 * max_order));
// coefficient-defined measures use the monic recursion and ignore nodes.
Moments moments(const MeasureSpec& measure, int max_order, int nodes = 0);

// Recursion coefficients alpha_0..alpha_{count-1} recovered from moments by
// solving the Toeplitz systems for the monic orthogonal polynomials and
// reading alpha_n = -conj(Phi_{n+1}(0)).  Throws std::domain_error if the
// moment matrix is not positive definite or a recovered coefficient leaves
// the open unit disk.
std::vector<cplx> verblunsky_from_measure(const MeasureSpec& measure, int count, int nodes = 0);

}  // namespace cmvkit
