#include "cmvkit/measure.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace cmvkit {

namespace {

constexpr int kDefaultNodes = 512;

cplx unit_point(double theta) { return cplx(std::cos(theta), std::sin(theta)); }

// Monic orthogonal polynomials of a coefficient-defined measure satisfy
// Phi_{n+1}(z) = z Phi_n(z) - conj(alpha_n) Phi_n^*(z) with Phi_0 = 1, where
// Phi_n^* is the conjugate-reflected polynomial.  Orthogonality of Phi_{n+1}
// to the constant yields m_{n+1} = -sum_{j<=n} c_j m_j for the lower-order
// coefficients c_j of Phi_{n+1}.
std::vector<cplx> moments_from_coefficients(const CoefficientSchedule& s, int max_order) {
    if (max_order >= s.size())
        throw std::invalid_argument("coefficient schedule too short for requested moment order");
    std::vector<cplx> m(static_cast<std::size_t>(max_order) + 1, cplx(0.0, 0.0));
    m[0] = cplx(1.0, 0.0);

    std::vector<cplx> phi{cplx(1.0, 0.0)};  // coefficients of Phi_n, degree n
    for (int n = 0; n < max_order; ++n) {
        const cplx a = s.alpha(s.lo() + n);
        std::vector<cplx> next(phi.size() + 1, cplx(0.0, 0.0));
        for (std::size_t j = 0; j < phi.size(); ++j) {
            next[j + 1] += phi[j];                                     // z * Phi_n
            next[j] -= std::conj(a) * std::conj(phi[phi.size() - 1 - j]);  // -conj(a) * Phi_n^*
        }
        phi = std::move(next);
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j + 1 < phi.size(); ++j) acc += phi[j] * m[j];
        m[static_cast<std::size_t>(n) + 1] = -acc;
    }
    return m;
}

}  // namespace

Moments::Moments(std::vector<cplx> m) : m_(std::move(m)) {
    if (m_.empty()) throw std::invalid_argument("moment sequence must contain m_0");
    if (std::abs(m_[0] - cplx(1.0, 0.0)) > 1e-10)
        throw std::invalid_argument("moment of order zero must equal 1 (probability measure)");
}

cplx Moments::at(int k) const {
    const int a = k < 0 ? -k : k;
    if (a > max_order()) throw std::out_of_range("moment order beyond stored range");
    const cplx v = m_[static_cast<std::size_t>(a)];
    return k < 0 ? std::conj(v) : v;
}

MeasureSpec MeasureSpec::builtin(const std::string& name) {
    MeasureSpec m;
    m.name_ = name;
    if (name == "lebesgue") {
        m.kind_ = MeasureKind::lebesgue;
    } else if (name == "geronimus_mu") {
        m.kind_ = MeasureKind::geronimus_mu;
    } else if (name == "geronimus_nu") {
        m.kind_ = MeasureKind::geronimus_nu;
    } else {
        throw std::invalid_argument("unknown builtin measure: " + name);
    }
    return m;
}

MeasureSpec MeasureSpec::density(std::vector<double> theta, std::vector<double> values) {
    if (theta.size() != values.size())
        throw std::invalid_argument("density grid and values must have equal length");
    if (theta.size() < 2) throw std::invalid_argument("density grid needs at least two points");
    for (std::size_t j = 0; j < theta.size(); ++j) {
        if (theta[j] < 0.0 || theta[j] >= 2.0 * pi)
            throw std::invalid_argument("density grid points must lie in [0, 2*pi)");
        if (j > 0 && theta[j] <= theta[j - 1])
            throw std::invalid_argument("density grid must be strictly increasing");
    }
    MeasureSpec m;
    m.kind_ = MeasureKind::density_grid;
    m.name_ = "density_grid";
    m.theta_ = std::move(theta);
    m.values_ = std::move(values);
    return m;
}

MeasureSpec MeasureSpec::from_coefficients(CoefficientSchedule schedule) {
    MeasureSpec m;
    m.kind_ = MeasureKind::coefficient_defined;
    m.name_ = "coefficient_defined";
    m.schedule_.push_back(std::move(schedule));
    return m;
}

const CoefficientSchedule* MeasureSpec::coefficient_schedule() const {
    return schedule_.empty() ? nullptr : &schedule_.front();
}

cplx MeasureSpec::integrate(const std::function<cplx(cplx)>& f, int nodes) const {
    switch (kind_) {
        case MeasureKind::lebesgue:
        case MeasureKind::geronimus_mu: {
            const int n = nodes > 0 ? nodes : kDefaultNodes;
            cplx acc(0.0, 0.0);
            for (int j = 0; j < n; ++j) {
                const double theta = 2.0 * pi * j / n;
                cplx term = f(unit_point(theta));
                if (kind_ == MeasureKind::geronimus_mu) term *= 1.0 - std::cos(theta);
                acc += term;
            }
            return acc / static_cast<double>(n);
        }
        case MeasureKind::geronimus_nu: {
            // Half normalized Lebesgue plus half a point mass at z = 1; the
            // point mass is exact, never sampled.
            const int n = nodes > 0 ? nodes : kDefaultNodes;
            cplx acc(0.0, 0.0);
            for (int j = 0; j < n; ++j) acc += f(unit_point(2.0 * pi * j / n));
            return 0.5 * acc / static_cast<double>(n) + 0.5 * f(cplx(1.0, 0.0));
        }
        case MeasureKind::density_grid: {
            // Periodic trapezoid rule on the stored grid.
            const std::size_t n = theta_.size();
            cplx acc(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t k = (j + 1) % n;
                const double width =
                    (k == 0 ? theta_[0] + 2.0 * pi : theta_[k]) - theta_[j];
                const cplx left = f(unit_point(theta_[j])) * values_[j];
                const cplx right = f(unit_point(k == 0 ? theta_[0] : theta_[k])) * values_[k];
                acc += 0.5 * width * (left + right);
            }
            return acc / (2.0 * pi);
        }
        case MeasureKind::coefficient_defined:
            throw std::domain_error("coefficient-defined measure has no quadrature rule");
    }
    throw std::logic_error("unreachable measure kind");
}

std::vector<cplx> MeasureSpec::closed_form_coefficients(int count) const {
    if (count < 0) throw std::invalid_argument("coefficient count must be nonnegative");
    std::vector<cplx> alpha(static_cast<std::size_t>(count));
    switch (kind_) {
        case MeasureKind::lebesgue:
            for (auto& a : alpha) a = cplx(0.0, 0.0);
            return alpha;
        case MeasureKind::geronimus_mu:
            for (int n = 0; n < count; ++n) alpha[static_cast<std::size_t>(n)] = cplx(-1.0 / (n + 2), 0.0);
            return alpha;
        case MeasureKind::geronimus_nu:
            for (int n = 0; n < count; ++n) alpha[static_cast<std::size_t>(n)] = cplx(1.0 / (n + 2), 0.0);
            return alpha;
        case MeasureKind::coefficient_defined: {
            const CoefficientSchedule& s = schedule_.front();
            if (count > s.size())
                throw std::out_of_range("coefficient schedule shorter than requested count");
            for (int n = 0; n < count; ++n) alpha[static_cast<std::size_t>(n)] = s.alpha(s.lo() + n);
            return alpha;
        }
        case MeasureKind::density_grid:
            throw std::domain_error("density-grid measure has no closed-form coefficients");
    }
    throw std::logic_error("unreachable measure kind");
}

Moments moments(const MeasureSpec& measure, int max_order, int nodes) {
    if (max_order < 0) throw std::invalid_argument("moment order must be nonnegative");
    if (measure.kind() == MeasureKind::coefficient_defined)
        return Moments(moments_from_coefficients(*measure.coefficient_schedule(), max_order));

    int n = nodes;
    if (n == 0) n = std::max(kDefaultNodes, 8 * max_order);
    if (n < 4 * max_order)
        throw std::invalid_argument("quadrature needs at least 4 nodes per moment order");

    std::vector<cplx> m(static_cast<std::size_t>(max_order) + 1);
    for (int k = 0; k <= max_order; ++k) {
        m[static_cast<std::size_t>(k)] =
            measure.integrate([k](cplx xi) { return std::pow(xi, k); }, n);
    }
    return Moments(std::move(m));
}

std::vector<cplx> verblunsky_from_measure(const MeasureSpec& measure, int count, int nodes) {
    if (count <= 0) throw std::invalid_argument("coefficient count must be positive");
    const Moments m = moments(measure, count, nodes);

    std::vector<cplx> alpha;
    alpha.reserve(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        // Monic Phi_{n+1} = z^{n+1} - sum_j a_j z^j with H a = b, where
        // H_{jk} = m_{k-j} is the Gram matrix of 1..z^n and b_j = m_{n+1-j}.
        const int dim = n + 1;
        Eigen::MatrixXcd H(dim, dim);
        Eigen::VectorXcd b(dim);
        for (int j = 0; j < dim; ++j) {
            for (int k = 0; k < dim; ++k) H(j, k) = m.at(k - j);
            b(j) = m.at(n + 1 - j);
        }
        Eigen::LLT<Eigen::MatrixXcd> llt(H);
        if (llt.info() != Eigen::Success)
            throw std::domain_error("moment matrix not positive definite (measure too degenerate)");
        const Eigen::VectorXcd a = llt.solve(b);
        const cplx alpha_n = std::conj(a(0));  // -conj(Phi_{n+1}(0)) with Phi_{n+1}(0) = -a_0
        if (std::abs(alpha_n) >= 1.0)
            throw std::domain_error("recovered coefficient leaves the open unit disk at index " +
                                    std::to_string(n));
        alpha.push_back(alpha_n);
    }
    return alpha;
}

}  // namespace cmvkit
