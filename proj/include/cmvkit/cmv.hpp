#pragma once

// CMV matrices on finite index windows: Theta-block factors, their products,
// closed-form entries, unitary conjugations, splits at unimodular
// coefficients, and time evolution.
//
// Operator conventions (window indices are absolute):
//   - Theta block of coefficient pair (alpha_j, rho_j) occupies rows and
//     columns (j, j+1):  [[conj(alpha_j), rho_j], [conj(rho_j), -alpha_j]].
//   - The L-type factor is the direct sum of even-index blocks, the M-type
//     factor of odd-index blocks.
//   - build_cmv multiplies L*M (alternate = false: the CMV matrix C, or its
//     doubly-infinite window E) or M*L (alternate = true: the alternate
//     matrix).
//   - Cropping a factor to a window keeps the single surviving corner entry
//     of each straddling block: -alpha_{lo-1} at (lo, lo) from below and
//     conj(alpha_{hi}) at (hi, hi) from above.  Cropping commutes with the
//     factor product, so windows of products equal products of cropped
//     factors exactly.
//
// Boundary modes:
//   principal_truncation  straddling blocks keep schedule values (for a
//                         half-lattice schedule the lower boundary value is
//                         alpha_{-1} = -1, reproducing the half-lattice
//                         operator's corner); unitary defect localizes at the
//                         open edges.
//   half_lattice_closed   overrides alpha_{lo-1} and alpha_{hi} with -1,
//                         closing both edges; the result is exactly unitary.
//   periodic_closed       blocks wrap around the (even-sized, >= 4) window;
//                         exactly unitary and cyclically banded.

#include <Eigen/Dense>

#include <vector>

#include "cmvkit/common.hpp"
#include "cmvkit/schedule.hpp"

namespace cmvkit {

enum class BoundaryMode { principal_truncation, half_lattice_closed, periodic_closed };

struct ThetaBlock {
    cplx a, b, c, d;  // [[a, b], [c, d]]
};

// The unitary block [[conj(alpha), rho], [conj(rho), -alpha]].  Requires
// |alpha|^2 + |rho|^2 = 1 to within 1e-12.
ThetaBlock theta(cplx alpha, cplx rho);

class BandedUnitary {
public:
    BandedUnitary(int lo, Eigen::MatrixXcd dense, BoundaryMode boundary);

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dense_.rows()) - 1; }
    int size() const { return static_cast<int>(dense_.rows()); }
    BoundaryMode boundary() const { return boundary_; }

    cplx at(int k, int l) const;  // absolute indices; throws outside window
    const Eigen::MatrixXcd& dense() const { return dense_; }

    double unitarity_defect() const;  // Frobenius norm of U^dagger U - I
    // Largest entry magnitude beyond band distance 2 (cyclic distance for the
    // periodic boundary).
    double band_defect() const;

private:
    int lo_;
    Eigen::MatrixXcd dense_;
    BoundaryMode boundary_;
};

enum class FactorParity { even_blocks, odd_blocks };

// One direct-sum factor on [lo, hi].  rotated = false strips the phases
// first, producing the standard factor with real rho = |rho|.
BandedUnitary build_factor(const CoefficientSchedule& s, int lo, int hi, FactorParity parity,
                           bool rotated, BoundaryMode boundary);

// The window of the CMV operator (or its alternate ordering).  The built
// product is verified entrywise against the closed-form entries at the
// algebraic tolerance; a mismatch throws ToleranceBreach.
BandedUnitary build_cmv(const CoefficientSchedule& s, int lo, int hi, bool alternate, bool rotated,
                        BoundaryMode boundary);

// Closed-form entry of the same operator window: the independent dual route
// to build_cmv's factor product.
cplx cmv_entry_direct(const CoefficientSchedule& s, int lo, int hi, int k, int l, bool alternate,
                      bool rotated, BoundaryMode boundary);

// Diagonal conjugators on the window:
//   r_k       = prod_{0 <= j < k} zeta_j for k > 0, r_0 = 1, and
//               prod_{k <= j < 0} conj(zeta_j) for k < 0;
//   q_k       = r_k^2.
// Conjugation by diag(r) turns the rotated operator into the standard one
// with the same alpha and rho = |rho|; diag(q) implements the
// transpose-to-alternate identity for the rotated matrices.
struct Conjugators {
    int lo = 0;
    Eigen::VectorXcd r;
    Eigen::VectorXcd q;
};

Conjugators conjugators(const CoefficientSchedule& s, int lo, int hi);

// Split at a unimodular coefficient (|alpha_K| = 1, rho_K = 0): the operator
// window [s.lo()+1, s.hi()] decomposes exactly into the direct sum of the two
// principal windows below.  Throws std::invalid_argument if K is not a split
// index or the sub-windows would be empty.
struct SplitResult {
    BandedUnitary left;   // window [s.lo()+1, K]
    BandedUnitary right;  // window [K+1, s.hi()]
};

SplitResult split_at(const CoefficientSchedule& s, int K, bool alternate, bool rotated);

Eigen::VectorXcd apply(const BandedUnitary& u, const Eigen::VectorXcd& v);

// Repeated application of the operator window.  norms[t] is the l2 norm
// after t steps (norms[0] is the initial norm); probability rows are
// recorded every record_stride steps, starting with the initial state.
struct EvolveResult {
    std::vector<double> norms;
    std::vector<std::vector<double>> probabilities;
    Eigen::VectorXcd final_state;
};

EvolveResult evolve(const BandedUnitary& u, const Eigen::VectorXcd& v0, int steps,
                    int record_stride = 1);

// Value of the Laurent basis function chi_k (alternate = false) or
// chi~_k (alternate = true) at z != 0:
//   chi_{2m} = z^{-m} phi*_{2m},   chi_{2m+1}  = z^{-m} phi_{2m+1},
//   chi~_{2m} = z^{-m} phi_{2m},   chi~_{2m+1} = z^{-m-1} phi*_{2m+1},
// with the rotated polynomials when rotated = true.  The operator acts as
// multiplication by z on these families: C^T chi(z) = z chi(z).
cplx cmv_basis_value(const CoefficientSchedule& s, int k, cplx z, bool alternate, bool rotated);

}  // namespace cmvkit
