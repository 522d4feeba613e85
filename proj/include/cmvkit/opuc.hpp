#pragma once

// Orthogonal polynomials on the unit circle and their recursions.
//
// Four recursion variants share one driver:
//   standard             phi' = (z phi - conj(a) phi*) / |rho|
//   rotated              same numerators, divided by conj(rho) instead, which
//                        multiplies phi_n by the cumulative phase of the
//                        zeta's: phi_n^rot = (prod_{j<n} zeta_j) phi_n
//   second_kind          the standard recursion run with the alpha signs
//                        flipped (partner polynomials psi_n)
//   rotated_second_kind  rotated version of the same
//
// The second-kind pairs store (psi_n, psi_n*) verbatim; identities that need
// the sign-flipped combination (-psi*) apply the sign at the use site.

#include <vector>

#include "cmvkit/common.hpp"
#include "cmvkit/measure.hpp"
#include "cmvkit/poly.hpp"
#include "cmvkit/schedule.hpp"

namespace cmvkit {

enum class SzegoVariant { standard, rotated, second_kind, rotated_second_kind };

struct PolyPair {
    ComplexPoly p;       // phi_n (or psi_n)
    ComplexPoly p_star;  // phi_n^* (or psi_n^*)
    int n = 0;           // degree index
};

// Conjugate reflection at degree n: (reverse p)(z) = z^n conj(p(1/conj(z))),
// i.e. coefficient j becomes conj(coefficient n-j).  Requires degree <= n.
ComplexPoly reverse(const ComplexPoly& p, int n);

// Rotated reflection: (prod_{j<n} zeta_j)^2 * reverse(p, n).  It is an
// involution and maps the rotated phi_n to the rotated phi_n^*.
ComplexPoly rotated_reverse(const ComplexPoly& p, int n, const CoefficientSchedule& s);

// One forward/backward recursion step.  alpha is always the measure's own
// coefficient; the second-kind variants apply the sign flip internally.
// Throws std::domain_error when |alpha| = 1 (the step divides by rho).
PolyPair szego_forward(const PolyPair& at_n, cplx alpha, cplx zeta, SzegoVariant variant);
PolyPair szego_backward(const PolyPair& at_n_plus_1, cplx alpha, cplx zeta, SzegoVariant variant);

// Pairs for degrees 0..count, consuming the schedule in window order (the
// step from degree j uses the coefficient at index s.lo() + j).
std::vector<PolyPair> opuc_sequence(const CoefficientSchedule& s, int count, SzegoVariant variant);

// Convenience wrapper: the second-kind family psi_0..psi_count.
std::vector<PolyPair> second_kind_sequence(const CoefficientSchedule& s, int count, bool rotated);

// Norm of the monic polynomial Phi_n: prod_{j<n} sqrt(1 - |alpha_j|^2).
double monic_norm(const CoefficientSchedule& s, int n);

// Christoffel-Darboux kernels.  Both routes are returned so callers can
// compare the summed form against the closed form:
//   standard / rotated:   sum_{k<=n} conj(phi_k(xi)) phi_k(z)
//     = (conj(phi*_{n+1}(xi)) phi*_{n+1}(z) - conj(phi_{n+1}(xi)) phi_{n+1}(z)) / (1 - conj(xi) z)
//   mixed / rotated_mixed: sum_{k<=n} conj(phi_k(xi)) psi_k(z)
//     = (2 - conj(phi*_{n+1}(xi)) psi*_{n+1}(z) - conj(phi_{n+1}(xi)) psi_{n+1}(z)) / (1 - conj(xi) z)
// Throws std::domain_error when 1 - conj(xi) z vanishes (to 1e-14).
enum class KernelVariant { standard, rotated, mixed, rotated_mixed };

struct KernelPair {
    cplx sum_form;
    cplx closed_form;
};

KernelPair cd_kernel(const CoefficientSchedule& s, int n, cplx xi, cplx z, KernelVariant variant);

// Both sides of the pairing identity
//   psi*_n phi_n + phi*_n psi_n = 2 z^n               (standard)
//   psi*_n phi_n + phi*_n psi_n = 2 z^n (prod zeta)^2 (rotated)
struct PairingSample {
    cplx lhs;
    cplx rhs;
};

PairingSample pairing_identity(const CoefficientSchedule& s, int n, cplx z, bool rotated);

// Independent oracle: classical Gram-Schmidt on the monomials under the
// moment Gram matrix, normalized to positive leading coefficient.  Shares no
// code with the Szego recursion; used to cross-check it.
std::vector<ComplexPoly> gram_schmidt_oracle(const Moments& m, int count);

// Scalar recursion values at a fixed z (the O(count) numeric route, distinct
// from evaluating opuc_sequence polynomials).
struct ValuePair {
    cplx v;       // phi_n(z) (or psi_n(z))
    cplx v_star;  // phi_n^*(z) (or psi_n^*(z))
};

std::vector<ValuePair> opuc_values(const CoefficientSchedule& s, int count, cplx z,
                                   SzegoVariant variant);

}  // namespace cmvkit
