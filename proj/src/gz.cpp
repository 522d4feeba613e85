#include "cmvkit/gz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cmvkit {

namespace {

void check_z(cplx z) {
    const double mag = std::abs(z);
    if (mag == 0.0) throw std::invalid_argument("transfer matrix needs z != 0");
    if (mag < 1e-6 || mag > 1e6)
        throw std::invalid_argument("transfer matrix needs |z| in [1e-6, 1e6]");
}

void check_pair(cplx alpha, cplx rho, int n) {
    if (std::abs(rho) == 0.0)
        throw std::domain_error("transfer matrix singular at index " + std::to_string(n) +
                                " (|alpha| = 1)");
    if (std::abs(std::norm(alpha) + std::norm(rho) - 1.0) > 1e-12)
        throw std::invalid_argument("coefficient pair violates |alpha|^2 + |rho|^2 = 1");
}

bool even_index(int n) { return ((n % 2) + 2) % 2 == 0; }

}  // namespace

Transfer2x2 gz_transfer(cplx alpha, cplx rho, int n, cplx z) {
    check_z(z);
    check_pair(alpha, rho, n);
    Transfer2x2 t;
    t.n = n;
    t.z = z;
    if (even_index(n)) {
        t.a = -std::conj(alpha) / rho;
        t.b = z / rho;
        t.c = 1.0 / (z * rho);
        t.d = -alpha / rho;
    } else {
        t.a = -alpha / rho;
        t.b = 1.0 / rho;
        t.c = 1.0 / rho;
        t.d = -std::conj(alpha) / rho;
    }
    return t;
}

Transfer2x2 gz_transfer(const CoefficientSchedule& s, int n, cplx z) {
    return gz_transfer(s.alpha(n), s.rho(n), n, z);
}

Transfer2x2 gz_transfer_inv(cplx alpha, cplx rho, int n, cplx z) {
    check_z(z);
    check_pair(alpha, rho, n);
    const cplx cr = std::conj(rho);
    Transfer2x2 t;
    t.n = n;
    t.z = z;
    if (even_index(n)) {
        t.a = alpha / cr;
        t.b = z / cr;
        t.c = 1.0 / (z * cr);
        t.d = std::conj(alpha) / cr;
    } else {
        t.a = std::conj(alpha) / cr;
        t.b = 1.0 / cr;
        t.c = 1.0 / cr;
        t.d = alpha / cr;
    }
    return t;
}

Transfer2x2 gz_transfer_inv(const CoefficientSchedule& s, int n, cplx z) {
    return gz_transfer_inv(s.alpha(n), s.rho(n), n, z);
}

std::vector<GZState> propagate(const CoefficientSchedule& s, GZState init, int lo, int hi, cplx z,
                               Direction direction) {
    if (lo > hi) throw std::invalid_argument("propagation range is empty");
    check_z(z);
    const int count = hi - lo + 1;
    std::vector<GZState> out(static_cast<std::size_t>(count));

    if (direction == Direction::rightward) {
        if (init.n != lo)
            throw std::invalid_argument("rightward propagation must start at the range bottom");
        out[0] = init;
        for (int n = lo; n < hi; ++n)
            out[static_cast<std::size_t>(n - lo + 1)] =
                gz_transfer(s, n + 1, z).apply(out[static_cast<std::size_t>(n - lo)]);
        return out;
    }

    if (init.n != hi)
        throw std::invalid_argument("leftward propagation must start at the range top");
    out[static_cast<std::size_t>(count - 1)] = init;
    for (int n = hi; n > lo; --n) {
        const Transfer2x2 t = gz_transfer_inv(s, n, z);
        const GZState& cur = out[static_cast<std::size_t>(n - lo)];
        out[static_cast<std::size_t>(n - lo - 1)] =
            GZState{t.a * cur.f + t.b * cur.g, t.c * cur.f + t.d * cur.g, n - 1};
    }
    return out;
}

const char* seed_family_name(SeedFamily f) {
    switch (f) {
        case SeedFamily::f_plus: return "f+";
        case SeedFamily::p_plus: return "p+";
        case SeedFamily::f_minus: return "f-";
        case SeedFamily::p_minus: return "p-";
    }
    throw std::invalid_argument("unknown seed family");
}

GZState half_lattice_seeds(int K, SeedFamily family, cplx z) {
    check_z(z);
    if (even_index(K)) {
        switch (family) {
            case SeedFamily::f_plus: return GZState{z, 1.0, K};
            case SeedFamily::p_plus: return GZState{z, -1.0, K};
            case SeedFamily::f_minus: return GZState{1.0, -1.0, K};
            case SeedFamily::p_minus: return GZState{1.0, 1.0, K};
        }
    } else {
        switch (family) {
            case SeedFamily::f_plus: return GZState{1.0, 1.0, K};
            case SeedFamily::p_plus: return GZState{-1.0, 1.0, K};
            case SeedFamily::f_minus: return GZState{-z, 1.0, K};
            case SeedFamily::p_minus: return GZState{z, 1.0, K};
        }
    }
    throw std::invalid_argument("unknown seed family");
}

NeighborTable neighbor_table(const CoefficientSchedule& s, int K, cplx z) {
    NeighborTable out;
    out.K = K;
    const Transfer2x2 up = gz_transfer(s, K + 1, z);
    const Transfer2x2 down = gz_transfer_inv(s, K, z);
    for (SeedFamily fam : {SeedFamily::f_plus, SeedFamily::p_plus, SeedFamily::f_minus,
                           SeedFamily::p_minus}) {
        const GZState seed = half_lattice_seeds(K, fam, z);
        const int i = seed_family_index(fam);
        out.at_next[static_cast<std::size_t>(i)] = up.apply(seed);
        GZState prev{down.a * seed.f + down.b * seed.g, down.c * seed.f + down.d * seed.g, K - 1};
        out.at_prev[static_cast<std::size_t>(i)] = prev;
    }
    return out;
}

cplx PairSequence::f_at(int n) const {
    if (n < lo || n > hi()) throw std::out_of_range("pair sequence index out of range");
    return f[static_cast<std::size_t>(n - lo)];
}

cplx PairSequence::g_at(int n) const {
    if (n < lo || n > hi()) throw std::out_of_range("pair sequence index out of range");
    return g[static_cast<std::size_t>(n - lo)];
}

PairSequence to_pair_sequence(const std::vector<GZState>& states) {
    if (states.empty()) throw std::invalid_argument("empty state sequence");
    PairSequence out;
    out.lo = states.front().n;
    out.f.reserve(states.size());
    out.g.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].n != out.lo + static_cast<int>(i))
            throw std::invalid_argument("state sequence indices are not contiguous");
        out.f.push_back(states[i].f);
        out.g.push_back(states[i].g);
    }
    return out;
}

EquivalenceReport verify_equivalence(const CoefficientSchedule& s, const PairSequence& seq, cplx z,
                                     int window_lo, int window_hi, double tolerance) {
    check_z(z);
    if (window_lo > window_hi) throw std::invalid_argument("equivalence window is empty");
    if (seq.lo > window_lo - 1 || seq.hi() < window_hi + 1)
        throw std::invalid_argument(
            "equivalence window too small: sequence must cover one buffer index each side");

    EquivalenceReport report;
    report.window_lo = window_lo;
    report.window_hi = window_hi;
    report.tolerance = tolerance;

    double block = 0.0;
    for (int n = window_lo; n <= window_hi; ++n) {
        const cplx an = s.alpha(n);
        const cplx rn = s.rho(n);
        const cplx an1 = s.alpha(n + 1);
        const cplx rn1 = s.rho(n + 1);
        cplx m_row, l_row;
        if (even_index(n)) {
            m_row = std::conj(rn) * seq.f_at(n - 1) - an * seq.f_at(n) - z * seq.g_at(n);
            l_row = std::conj(an1) * seq.g_at(n) + rn1 * seq.g_at(n + 1) - seq.f_at(n);
        } else {
            m_row = std::conj(an1) * seq.f_at(n) + rn1 * seq.f_at(n + 1) - z * seq.g_at(n);
            l_row = std::conj(rn) * seq.g_at(n - 1) - an * seq.g_at(n) - seq.f_at(n);
        }
        block = std::max(block, std::max(std::abs(m_row), std::abs(l_row)));
    }

    double recursion = 0.0;
    for (int n = window_lo - 1; n <= window_hi; ++n) {
        const Transfer2x2 t = gz_transfer(s, n + 1, z);
        const cplx f_next = t.a * seq.f_at(n) + t.b * seq.g_at(n);
        const cplx g_next = t.c * seq.f_at(n) + t.d * seq.g_at(n);
        recursion = std::max(recursion, std::max(std::abs(f_next - seq.f_at(n + 1)),
                                                 std::abs(g_next - seq.g_at(n + 1))));
    }

    report.block_residual = block;
    report.recursion_residual = recursion;
    report.block_pass = block <= tolerance;
    report.recursion_pass = recursion <= tolerance;
    return report;
}

}  // namespace cmvkit
