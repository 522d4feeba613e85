#include "cmvkit/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cmvkit/opuc.hpp"
#include "cmvkit/poly.hpp"

namespace cmvkit {

namespace {

void check_disk(cplx z) {
    if (std::abs(z) >= 1.0) throw std::invalid_argument("needs |z| < 1");
}

// Node count for circle quadrature of kernels with a pole at xi = z: the
// trapezoid error decays like |z|^nodes, so push it below double precision
// and add headroom for the polynomial factor's degree.
int kernel_nodes(double absz, int degree) {
    int n = 512;
    if (absz > 1e-3) {
        const double needed = -38.0 / std::log(absz);
        if (needed > n) n = static_cast<int>(needed) + 1;
    }
    n += 8 * degree + 64;
    return std::min(n, 262144);
}

// Series truncation order for moment-based evaluation: remainder ~ |z|^order.
int series_order(double absz) {
    if (absz < 1e-3) return 64;
    const double needed = -40.0 / std::log(absz);
    return std::clamp(static_cast<int>(needed) + 1, 64, 4096);
}

cplx kernel(cplx xi, cplx z) { return (xi + z) / (xi - z); }

// integral of phi(xi) (xi + z)/(xi - z) dmu via the moment expansion
// (xi + z)/(xi - z) = 1 + 2 sum_{k >= 1} z^k xi^{-k} on |xi| = 1 > |z|.
cplx kernel_pairing_from_moments(const Moments& mom, const ComplexPoly& phi, cplx z, int order) {
    auto weighted = [&](int shift) {
        cplx acc = 0.0;
        for (int j = 0; j <= phi.degree(); ++j) acc += phi.coeff(j) * mom.at(j - shift);
        return acc;
    };
    cplx out = weighted(0);
    cplx zk = 1.0;
    for (int k = 1; k <= order; ++k) {
        zk *= z;
        out += 2.0 * zk * weighted(k);
    }
    return out;
}

}  // namespace

cplx caratheodory(const MeasureSpec& measure, cplx z) {
    check_disk(z);
    if (measure.kind() == MeasureKind::coefficient_defined) {
        const int order = series_order(std::abs(z));
        const Moments mom = moments(measure, order);
        cplx out = 1.0;
        cplx zk = 1.0;
        for (int k = 1; k <= order; ++k) {
            zk *= z;
            out += 2.0 * std::conj(mom.at(k)) * zk;
        }
        return out;
    }
    const int nodes = kernel_nodes(std::abs(z), 0);
    return measure.integrate([&](cplx xi) { return kernel(xi, z); }, nodes);
}

SecondKindValue second_kind_integral(const MeasureSpec& measure, const CoefficientSchedule& s,
                                     int n, cplx z, bool rotated, IntegralForm form) {
    check_disk(z);
    const SzegoVariant variant = rotated ? SzegoVariant::rotated : SzegoVariant::standard;
    const std::vector<PolyPair> seq = opuc_sequence(s, n, variant);
    const ComplexPoly& phi = seq.back().p;
    const ComplexPoly& phi_star = seq.back().p_star;
    const cplx phi_z = phi.eval(z);
    const cplx phi_star_z = phi_star.eval(z);

    if (measure.kind() == MeasureKind::coefficient_defined) {
        const int order = series_order(std::abs(z));
        const Moments mom = moments(measure, std::max(order, n));
        const cplx f = caratheodory(measure, z);
        const cplx phi_pairing = kernel_pairing_from_moments(mom, phi, z, order);
        const cplx star_pairing = kernel_pairing_from_moments(mom, phi_star, z, order);
        return SecondKindValue{phi_pairing - f * phi_z, f * phi_star_z - star_pairing};
    }

    const int nodes = kernel_nodes(std::abs(z), n);
    if (form == IntegralForm::raw) {
        const cplx psi = measure.integrate(
            [&](cplx xi) { return (phi.eval(xi) - phi_z) * kernel(xi, z); }, nodes);
        const cplx psi_star = measure.integrate(
            [&](cplx xi) { return (phi_star_z - phi_star.eval(xi)) * kernel(xi, z); }, nodes);
        return SecondKindValue{psi, psi_star};
    }
    const cplx f = caratheodory(measure, z);
    const cplx phi_pairing =
        measure.integrate([&](cplx xi) { return phi.eval(xi) * kernel(xi, z); }, nodes);
    const cplx star_pairing =
        measure.integrate([&](cplx xi) { return phi_star.eval(xi) * kernel(xi, z); }, nodes);
    return SecondKindValue{phi_pairing - f * phi_z, f * phi_star_z - star_pairing};
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::square_summable: return "square_summable";
        case Verdict::divergent: return "divergent";
        case Verdict::inconclusive: return "inconclusive";
    }
    throw std::invalid_argument("unknown verdict");
}

WeylSample weyl_residual(const CoefficientSchedule& s, cplx z, cplx r, int N,
                         VerdictThresholds thresholds) {
    check_disk(z);
    if (N < 0 || N > 1024) throw std::invalid_argument("weyl classification needs 0 <= N <= 1024");

    WeylSample out;
    out.z = z;
    out.r = r;
    out.partial_sums.reserve(static_cast<std::size_t>(N) + 1);

    std::vector<double> increments;
    increments.reserve(static_cast<std::size_t>(N) + 1);

    // Advance the rotated first- and second-kind pairs in lockstep.
    cplx phi = 1.0, phi_star = 1.0, psi = 1.0, psi_star = 1.0;
    double running = 0.0;
    for (int n = 0; n <= N; ++n) {
        const cplx u = psi + r * phi;
        const cplx v = -psi_star + r * phi_star;
        const double d = std::norm(u) + std::norm(v);
        increments.push_back(d);
        running += d;
        out.partial_sums.push_back(running);
        if (n == N) break;

        const cplx alpha = s.alpha(s.lo() + n);
        const cplx rho = s.rho(s.lo() + n);
        if (std::abs(rho) == 0.0)
            throw std::domain_error("singular recursion coefficient (|alpha| = 1)");
        const cplx d_rot = std::conj(rho);
        const cplx phi_next = (z * phi - std::conj(alpha) * phi_star) / d_rot;
        const cplx phi_star_next = (phi_star - alpha * z * phi) / d_rot;
        const cplx psi_next = (z * psi + std::conj(alpha) * psi_star) / d_rot;
        const cplx psi_star_next = (psi_star + alpha * z * psi) / d_rot;
        phi = phi_next;
        phi_star = phi_star_next;
        psi = psi_next;
        psi_star = psi_star_next;
    }

    const int quarter = std::max(1, N / 4);
    if (N >= 8) {
        bool tail_small = true;
        for (int n = N - quarter + 1; n <= N; ++n)
            if (increments[static_cast<std::size_t>(n)] >
                thresholds.tail_increment_factor * (1.0 - std::abs(z)))
                tail_small = false;
        if (tail_small) {
            out.verdict = Verdict::square_summable;
            return out;
        }
        std::vector<double> head(increments.begin(), increments.begin() + quarter);
        std::nth_element(head.begin(), head.begin() + quarter / 2, head.end());
        const double median = head[static_cast<std::size_t>(quarter / 2)];
        // Divergent series keep flat increments: the final increment fails to
        // decay below the early median by the required ratio.
        if (increments.back() > median / thresholds.decay_ratio) {
            out.verdict = Verdict::divergent;
            return out;
        }
    }
    out.verdict = Verdict::inconclusive;
    return out;
}

RotationReport rotation_invariance_check(const CoefficientSchedule& s, cplx z, cplx r, int N) {
    const WeylSample rotated = weyl_residual(s, z, r, N);
    const WeylSample standard = weyl_residual(s.stripped(), z, r, N);
    RotationReport out;
    out.rotated_sums = rotated.partial_sums;
    out.standard_sums = standard.partial_sums;
    for (std::size_t i = 0; i < out.rotated_sums.size(); ++i)
        out.max_abs_diff =
            std::max(out.max_abs_diff, std::abs(out.rotated_sums[i] - out.standard_sums[i]));
    out.pass = out.max_abs_diff <= 1e-13;
    return out;
}

}  // namespace cmvkit
