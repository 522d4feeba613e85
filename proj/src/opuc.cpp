#include "cmvkit/opuc.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cmvkit {

namespace {

bool is_second_kind(SzegoVariant v) {
    return v == SzegoVariant::second_kind || v == SzegoVariant::rotated_second_kind;
}

bool is_rotated(SzegoVariant v) {
    return v == SzegoVariant::rotated || v == SzegoVariant::rotated_second_kind;
}

// The rotated recursion divides by conj(rho); the standard one by |rho|.
cplx step_divisor(cplx alpha, cplx zeta, SzegoVariant v) {
    const double rho_sq = 1.0 - std::norm(alpha);
    if (rho_sq <= 0.0)
        throw std::domain_error("singular recursion coefficient (|alpha| = 1)");
    const double mod = std::sqrt(rho_sq);
    return is_rotated(v) ? cplx(mod, 0.0) * std::conj(zeta) : cplx(mod, 0.0);
}

cplx zeta_prefix(const CoefficientSchedule& s, int n) {
    cplx prod(1.0, 0.0);
    for (int j = 0; j < n; ++j) prod *= s.zeta(s.lo() + j);
    return prod;
}

}  // namespace

ComplexPoly reverse(const ComplexPoly& p, int n) {
    if (n < 0) throw std::invalid_argument("reversal degree must be nonnegative");
    if (p.degree() > n) throw std::invalid_argument("polynomial degree exceeds reversal degree");
    std::vector<cplx> coeffs(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) coeffs[static_cast<std::size_t>(j)] = std::conj(p.coeff(n - j));
    return ComplexPoly(std::move(coeffs));
}

ComplexPoly rotated_reverse(const ComplexPoly& p, int n, const CoefficientSchedule& s) {
    const cplx prefix = zeta_prefix(s, n);
    return (prefix * prefix) * reverse(p, n);
}

PolyPair szego_forward(const PolyPair& at_n, cplx alpha, cplx zeta, SzegoVariant variant) {
    const cplx a = is_second_kind(variant) ? -alpha : alpha;
    const cplx d = step_divisor(alpha, zeta, variant);
    PolyPair next;
    next.n = at_n.n + 1;
    next.p = (at_n.p.times_z() - std::conj(a) * at_n.p_star) / d;
    next.p_star = (at_n.p_star - a * at_n.p.times_z()) / d;
    return next;
}

PolyPair szego_backward(const PolyPair& at_n_plus_1, cplx alpha, cplx zeta, SzegoVariant variant) {
    const cplx a = is_second_kind(variant) ? -alpha : alpha;
    const double rho_sq = 1.0 - std::norm(alpha);
    if (rho_sq <= 0.0)
        throw std::domain_error("singular recursion coefficient (|alpha| = 1)");
    const cplx d = step_divisor(alpha, zeta, variant);
    // Inverting the forward step gives z*phi_n = d*(phi' + conj(a) phi*')/rho^2
    // and phi_n^* = d*(phi*' + a phi')/rho^2; the z*phi_n numerator must then
    // lose its constant term exactly.
    const ComplexPoly z_p = (d / rho_sq) * (at_n_plus_1.p + std::conj(a) * at_n_plus_1.p_star);
    PolyPair prev;
    prev.n = at_n_plus_1.n - 1;
    prev.p = z_p.divided_by_z(1e-12, "backward recursion constant term");
    prev.p_star = (d / rho_sq) * (at_n_plus_1.p_star + a * at_n_plus_1.p);
    return prev;
}

std::vector<PolyPair> opuc_sequence(const CoefficientSchedule& s, int count, SzegoVariant variant) {
    if (count < 0) throw std::invalid_argument("sequence length must be nonnegative");
    if (count > s.size())
        throw std::invalid_argument("schedule too short for requested sequence length");
    std::vector<PolyPair> pairs;
    pairs.reserve(static_cast<std::size_t>(count) + 1);
    pairs.push_back({ComplexPoly::constant(cplx(1.0, 0.0)), ComplexPoly::constant(cplx(1.0, 0.0)), 0});
    for (int j = 0; j < count; ++j) {
        const int idx = s.lo() + j;
        pairs.push_back(szego_forward(pairs.back(), s.alpha(idx), s.zeta(idx), variant));
    }
    return pairs;
}

std::vector<PolyPair> second_kind_sequence(const CoefficientSchedule& s, int count, bool rotated) {
    return opuc_sequence(s, count,
                         rotated ? SzegoVariant::rotated_second_kind : SzegoVariant::second_kind);
}

double monic_norm(const CoefficientSchedule& s, int n) {
    if (n < 0 || n > s.size()) throw std::invalid_argument("monic norm index outside schedule");
    double norm = 1.0;
    for (int j = 0; j < n; ++j)
        norm *= std::sqrt(std::max(0.0, 1.0 - std::norm(s.alpha(s.lo() + j))));
    return norm;
}

KernelPair cd_kernel(const CoefficientSchedule& s, int n, cplx xi, cplx z, KernelVariant variant) {
    if (n < 0) throw std::invalid_argument("kernel order must be nonnegative");
    const cplx denom = cplx(1.0, 0.0) - std::conj(xi) * z;
    if (std::abs(denom) <= 1e-14)
        throw std::domain_error("kernel evaluation point has conj(xi)*z = 1");

    const bool rotated = variant == KernelVariant::rotated || variant == KernelVariant::rotated_mixed;
    const bool mixed = variant == KernelVariant::mixed || variant == KernelVariant::rotated_mixed;

    const auto first = opuc_sequence(
        s, n + 1, rotated ? SzegoVariant::rotated : SzegoVariant::standard);
    const auto second =
        mixed ? second_kind_sequence(s, n + 1, rotated) : first;

    KernelPair out{cplx(0.0, 0.0), cplx(0.0, 0.0)};
    for (int k = 0; k <= n; ++k) {
        const auto& f = first[static_cast<std::size_t>(k)];
        const auto& g = second[static_cast<std::size_t>(k)];
        out.sum_form += std::conj(f.p.eval(xi)) * g.p.eval(z);
    }

    const auto& ftop = first[static_cast<std::size_t>(n) + 1];
    const auto& gtop = second[static_cast<std::size_t>(n) + 1];
    if (mixed) {
        out.closed_form = (cplx(2.0, 0.0) - std::conj(ftop.p_star.eval(xi)) * gtop.p_star.eval(z) -
                           std::conj(ftop.p.eval(xi)) * gtop.p.eval(z)) /
                          denom;
    } else {
        out.closed_form = (std::conj(ftop.p_star.eval(xi)) * gtop.p_star.eval(z) -
                           std::conj(ftop.p.eval(xi)) * gtop.p.eval(z)) /
                          denom;
    }
    return out;
}

PairingSample pairing_identity(const CoefficientSchedule& s, int n, cplx z, bool rotated) {
    const auto phi = opuc_sequence(s, n, rotated ? SzegoVariant::rotated : SzegoVariant::standard);
    const auto psi = second_kind_sequence(s, n, rotated);
    const auto& f = phi[static_cast<std::size_t>(n)];
    const auto& g = psi[static_cast<std::size_t>(n)];

    PairingSample out;
    out.lhs = g.p_star.eval(z) * f.p.eval(z) + f.p_star.eval(z) * g.p.eval(z);
    out.rhs = 2.0 * std::pow(z, n);
    if (rotated) {
        const cplx prefix = zeta_prefix(s, n);
        out.rhs *= prefix * prefix;
    }
    return out;
}

std::vector<ComplexPoly> gram_schmidt_oracle(const Moments& m, int count) {
    if (count < 0) throw std::invalid_argument("oracle length must be nonnegative");
    if (count > m.max_order())
        throw std::invalid_argument("moment order too low for requested oracle length");

    // <p, q> = sum_{j,l} conj(p_j) q_l m_{l-j}; conjugate-linear in the first slot.
    const auto inner = [&m](const std::vector<cplx>& p, const std::vector<cplx>& q) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < p.size(); ++j)
            for (std::size_t l = 0; l < q.size(); ++l)
                acc += std::conj(p[j]) * q[l] * m.at(static_cast<int>(l) - static_cast<int>(j));
        return acc;
    };

    std::vector<std::vector<cplx>> basis;
    for (int n = 0; n <= count; ++n) {
        std::vector<cplx> v(static_cast<std::size_t>(n) + 1, cplx(0.0, 0.0));
        v.back() = cplx(1.0, 0.0);  // z^n
        for (const auto& prev : basis) {
            const cplx c = inner(prev, v);
            for (std::size_t j = 0; j < prev.size(); ++j) v[j] -= c * prev[j];
        }
        const double norm_sq = inner(v, v).real();
        if (!(norm_sq > 0.0))
            throw std::domain_error("Gram-Schmidt breakdown: moment matrix not positive definite");
        const double norm = std::sqrt(norm_sq);
        for (auto& c : v) c /= norm;  // leading coefficient 1/norm > 0
        basis.push_back(std::move(v));
    }

    std::vector<ComplexPoly> out;
    out.reserve(basis.size());
    for (auto& v : basis) out.emplace_back(std::move(v));
    return out;
}

std::vector<ValuePair> opuc_values(const CoefficientSchedule& s, int count, cplx z,
                                   SzegoVariant variant) {
    if (count < 0) throw std::invalid_argument("sequence length must be nonnegative");
    if (count > s.size())
        throw std::invalid_argument("schedule too short for requested sequence length");
    std::vector<ValuePair> values;
    values.reserve(static_cast<std::size_t>(count) + 1);
    values.push_back({cplx(1.0, 0.0), cplx(1.0, 0.0)});
    for (int j = 0; j < count; ++j) {
        const int idx = s.lo() + j;
        const cplx alpha = s.alpha(idx);
        const cplx a = is_second_kind(variant) ? -alpha : alpha;
        const cplx d = step_divisor(alpha, s.zeta(idx), variant);
        const ValuePair& cur = values.back();
        values.push_back({(z * cur.v - std::conj(a) * cur.v_star) / d,
                          (cur.v_star - a * z * cur.v) / d});
    }
    return values;
}

}  // namespace cmvkit
