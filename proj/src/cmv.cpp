#include "cmvkit/cmv.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include "cmvkit/opuc.hpp"

namespace cmvkit {

namespace {

int wrap_index(int n, int lo, int width) {
    int m = (n - lo) % width;
    if (m < 0) m += width;
    return lo + m;
}

cplx int_power(cplx z, int e) {
    if (e < 0) return 1.0 / int_power(z, -e);
    cplx acc = 1.0;
    cplx base = z;
    for (; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        base *= base;
    }
    return acc;
}

void check_window(const CoefficientSchedule& s, int lo, int hi, BoundaryMode boundary) {
    if (lo > hi) throw std::invalid_argument("CMV window is empty");
    if (lo < s.lo() || hi > s.hi())
        throw std::invalid_argument("CMV window is not covered by the coefficient schedule");
    if (boundary == BoundaryMode::periodic_closed) {
        const int width = hi - lo + 1;
        if (width < 4 || width % 2 != 0)
            throw std::invalid_argument("periodic CMV window needs even size >= 4");
    }
}

// Coefficient seen by the window build: half_lattice_closed overrides the two
// straddling coefficients with -1, every other mode reads the schedule (with
// the half-lattice extension alpha_{-1} = -1 below index 0).
cplx boundary_alpha(const CoefficientSchedule& s, int lo, int hi, BoundaryMode boundary, int n) {
    if (boundary == BoundaryMode::half_lattice_closed && (n == lo - 1 || n == hi)) return -1.0;
    if (boundary == BoundaryMode::periodic_closed) return s.alpha(wrap_index(n, lo, hi - lo + 1));
    return s.alpha_ext(n);
}

cplx boundary_rho(const CoefficientSchedule& s, int lo, int hi, BoundaryMode boundary, int n) {
    if (boundary == BoundaryMode::periodic_closed) return s.rho(wrap_index(n, lo, hi - lo + 1));
    return s.rho(n);
}

}  // namespace

ThetaBlock theta(cplx alpha, cplx rho) {
    const double defect = std::abs(std::norm(alpha) + std::norm(rho) - 1.0);
    if (defect > 1e-12)
        throw std::invalid_argument("theta block requires |alpha|^2 + |rho|^2 = 1");
    return ThetaBlock{std::conj(alpha), rho, std::conj(rho), -alpha};
}

BandedUnitary::BandedUnitary(int lo, Eigen::MatrixXcd dense, BoundaryMode boundary)
    : lo_(lo), dense_(std::move(dense)), boundary_(boundary) {
    if (dense_.rows() == 0 || dense_.rows() != dense_.cols())
        throw std::invalid_argument("banded unitary needs a nonempty square matrix");
}

cplx BandedUnitary::at(int k, int l) const {
    if (k < lo() || k > hi() || l < lo() || l > hi())
        throw std::out_of_range("banded unitary entry outside window");
    return dense_(k - lo_, l - lo_);
}

double BandedUnitary::unitarity_defect() const {
    const auto n = dense_.rows();
    return (dense_.adjoint() * dense_ - Eigen::MatrixXcd::Identity(n, n)).norm();
}

double BandedUnitary::band_defect() const {
    const int n = size();
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            int dist = std::abs(k - l);
            if (boundary_ == BoundaryMode::periodic_closed) dist = std::min(dist, n - dist);
            if (dist > 2) worst = std::max(worst, std::abs(dense_(k, l)));
        }
    }
    return worst;
}

BandedUnitary build_factor(const CoefficientSchedule& s, int lo, int hi, FactorParity parity,
                           bool rotated, BoundaryMode boundary) {
    if (!rotated) return build_factor(s.stripped(), lo, hi, parity, true, boundary);
    check_window(s, lo, hi, boundary);

    const int width = hi - lo + 1;
    const int wanted = parity == FactorParity::even_blocks ? 0 : 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(width, width);

    auto parity_of = [](int n) { return ((n % 2) + 2) % 2; };

    if (boundary == BoundaryMode::periodic_closed) {
        const int first = parity_of(lo) == wanted ? lo : lo + 1;
        for (int j = first; j <= hi; j += 2) {
            const ThetaBlock t = theta(s.alpha(j), s.rho(j));
            const int row = j - lo;
            const int next = wrap_index(j + 1, lo, width) - lo;
            m(row, row) = t.a;
            m(row, next) = t.b;
            m(next, row) = t.c;
            m(next, next) = t.d;
        }
        return BandedUnitary(lo, std::move(m), boundary);
    }

    const int first = parity_of(lo - 1) == wanted ? lo - 1 : lo;
    for (int j = first; j <= hi; j += 2) {
        if (j == lo - 1) {
            // Straddling block from below: only its bottom-right corner lands
            // in the window.
            m(0, 0) = -boundary_alpha(s, lo, hi, boundary, j);
            continue;
        }
        if (j == hi) {
            // Straddling block from above: only its top-left corner survives.
            m(width - 1, width - 1) = std::conj(boundary_alpha(s, lo, hi, boundary, j));
            continue;
        }
        const ThetaBlock t = theta(s.alpha(j), s.rho(j));
        const int row = j - lo;
        m(row, row) = t.a;
        m(row, row + 1) = t.b;
        m(row + 1, row) = t.c;
        m(row + 1, row + 1) = t.d;
    }
    return BandedUnitary(lo, std::move(m), boundary);
}

cplx cmv_entry_direct(const CoefficientSchedule& s, int lo, int hi, int k, int l, bool alternate,
                      bool rotated, BoundaryMode boundary) {
    if (!rotated)
        return cmv_entry_direct(s.stripped(), lo, hi, k, l, alternate, true, boundary);
    check_window(s, lo, hi, boundary);
    if (k < lo || k > hi || l < lo || l > hi)
        throw std::out_of_range("CMV entry outside window");

    const int width = hi - lo + 1;
    const bool periodic = boundary == BoundaryMode::periodic_closed;
    auto a = [&](int n) { return boundary_alpha(s, lo, hi, boundary, n); };
    auto r = [&](int n) { return boundary_rho(s, lo, hi, boundary, n); };
    auto col = [&](int n) { return periodic ? wrap_index(n, lo, width) : n; };
    // Column offsets delta and entry values in row k; entries whose column
    // falls outside the window vanish from the crop.
    auto cell = [&](int delta, cplx value) -> cplx {
        const int target = k + delta;
        if (!periodic && (target < lo || target > hi)) return 0.0;
        return col(target) == l ? value : 0.0;
    };

    const bool even_row = ((k % 2) + 2) % 2 == 0;
    cplx out = 0.0;
    if (alternate == even_row) {
        // Rows carrying the wide lower band: even rows of the alternate
        // product, odd rows of the plain product.  Both share one formula set.
        if ((periodic || k - 2 >= lo) && col(k - 2) == l)
            out += std::conj(r(k - 2) * r(k - 1));
        if ((periodic || k - 1 >= lo) && col(k - 1) == l) out += -a(k - 2) * std::conj(r(k - 1));
        out += cell(0, -std::conj(a(k)) * a(k - 1));
        if ((periodic || k + 1 <= hi) && col(k + 1) == l) out += -a(k - 1) * r(k);
    } else {
        // Rows carrying the wide upper band.
        if ((periodic || k - 1 >= lo) && col(k - 1) == l)
            out += std::conj(a(k)) * std::conj(r(k - 1));
        out += cell(0, -std::conj(a(k)) * a(k - 1));
        if ((periodic || k + 1 <= hi) && col(k + 1) == l) out += std::conj(a(k + 1)) * r(k);
        if ((periodic || k + 2 <= hi) && col(k + 2) == l) out += r(k) * r(k + 1);
    }
    return out;
}

BandedUnitary build_cmv(const CoefficientSchedule& s, int lo, int hi, bool alternate, bool rotated,
                        BoundaryMode boundary) {
    const BandedUnitary left_factor =
        build_factor(s, lo, hi, alternate ? FactorParity::odd_blocks : FactorParity::even_blocks,
                     rotated, boundary);
    const BandedUnitary right_factor =
        build_factor(s, lo, hi, alternate ? FactorParity::even_blocks : FactorParity::odd_blocks,
                     rotated, boundary);
    BandedUnitary out(lo, left_factor.dense() * right_factor.dense(), boundary);

    // Dual route: every entry of the factor product must agree with the
    // closed-form band entries.
    const Tolerances& tol = tolerances();
    for (int k = lo; k <= hi; ++k) {
        for (int l = lo; l <= hi; ++l) {
            const double diff =
                std::abs(out.at(k, l) - cmv_entry_direct(s, lo, hi, k, l, alternate, rotated,
                                                         boundary));
            if (diff > tol.algebraic)
                throw ToleranceBreach("CMV window product vs closed-form entries", diff,
                                      tol.algebraic);
        }
    }
    if (boundary != BoundaryMode::principal_truncation) {
        const double defect = out.unitarity_defect();
        if (defect > tol.algebraic)
            throw ToleranceBreach("closed CMV window unitarity", defect, tol.algebraic);
    }
    return out;
}

Conjugators conjugators(const CoefficientSchedule& s, int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("conjugator window is empty");
    const int width = hi - lo + 1;
    Conjugators out;
    out.lo = lo;
    out.r.resize(width);
    out.q.resize(width);
    for (int k = lo; k <= hi; ++k) {
        cplx prod = 1.0;
        for (int j = 0; j < k; ++j) prod *= s.zeta(j);
        for (int j = k; j < 0; ++j) prod *= std::conj(s.zeta(j));
        out.r(k - lo) = prod;
        out.q(k - lo) = prod * prod;
    }
    return out;
}

SplitResult split_at(const CoefficientSchedule& s, int K, bool alternate, bool rotated) {
    if (!s.contains(K)) throw std::invalid_argument("split index outside schedule");
    if (!s.is_split_index(K))
        throw std::invalid_argument("split requires a unimodular coefficient at the cut");
    if (K < s.lo() + 1 || K >= s.hi())
        throw std::invalid_argument("split windows would be empty");
    return SplitResult{
        build_cmv(s, s.lo() + 1, K, alternate, rotated, BoundaryMode::principal_truncation),
        build_cmv(s, K + 1, s.hi(), alternate, rotated, BoundaryMode::principal_truncation)};
}

Eigen::VectorXcd apply(const BandedUnitary& u, const Eigen::VectorXcd& v) {
    if (v.size() != u.size())
        throw std::invalid_argument("state length does not match the operator window");
    return u.dense() * v;
}

EvolveResult evolve(const BandedUnitary& u, const Eigen::VectorXcd& v0, int steps,
                    int record_stride) {
    if (steps < 0) throw std::invalid_argument("evolve needs a nonnegative step count");
    if (record_stride < 1) throw std::invalid_argument("record stride must be positive");
    if (v0.size() != u.size())
        throw std::invalid_argument("state length does not match the operator window");

    EvolveResult out;
    out.norms.reserve(static_cast<std::size_t>(steps) + 1);
    auto record = [&](const Eigen::VectorXcd& v) {
        std::vector<double> row(static_cast<std::size_t>(v.size()));
        for (Eigen::Index i = 0; i < v.size(); ++i) row[static_cast<std::size_t>(i)] = std::norm(v(i));
        out.probabilities.push_back(std::move(row));
    };

    Eigen::VectorXcd v = v0;
    out.norms.push_back(v.norm());
    record(v);
    for (int t = 1; t <= steps; ++t) {
        v = u.dense() * v;
        out.norms.push_back(v.norm());
        if (t % record_stride == 0) record(v);
    }
    out.final_state = std::move(v);
    return out;
}

cplx cmv_basis_value(const CoefficientSchedule& s, int k, cplx z, bool alternate, bool rotated) {
    if (k < 0) throw std::invalid_argument("basis index must be nonnegative");
    if (std::abs(z) == 0.0)
        throw std::invalid_argument("basis functions carry negative powers: z must be nonzero");
    const SzegoVariant variant = rotated ? SzegoVariant::rotated : SzegoVariant::standard;
    const ValuePair values = opuc_values(s, k, z, variant).back();
    const int m = k / 2;
    if (k % 2 == 0)
        return int_power(z, -m) * (alternate ? values.v : values.v_star);
    return alternate ? int_power(z, -m - 1) * values.v_star : int_power(z, -m) * values.v;
}

}  // namespace cmvkit
