#pragma once

// Caratheodory transform of a measure on the circle, integral representations
// of the second-kind polynomials, and the l2 classification of trial Weyl
// combinations u_n = psi_n + r phi_n, v_n = -psi*_n + r phi*_n: the summed
// squares stay bounded exactly when r equals the Caratheodory value F(z).

#include <vector>

#include "cmvkit/common.hpp"
#include "cmvkit/measure.hpp"
#include "cmvkit/schedule.hpp"

namespace cmvkit {

// F(z) = integral of (xi + z)/(xi - z) dmu(xi), |z| < 1.  Quadrature for
// density-backed measures (point masses handled analytically by the measure),
// moment series for coefficient-defined ones.  F(0) = 1 and Re F > 0.
cplx caratheodory(const MeasureSpec& measure, cplx z);

// Which written form of the second-kind integral to evaluate.  The raw form
// integrates the difference quotient directly; the rewritten form integrates
// phi against the kernel and subtracts F(z) phi(z).  They agree identically;
// both give 0 at n = 0, where the recursion instead starts from 1 (the two
// conventions reconcile inside psi_n + F phi_n, which is what the Weyl
// combinations use).
enum class IntegralForm { raw, rewritten };

struct SecondKindValue {
    cplx psi;
    cplx psi_star;
};

// psi_n(z)  = integral of (phi_n(xi) - phi_n(z)) (xi + z)/(xi - z) dmu
// psi*_n(z) = integral of (phi*_n(z) - phi*_n(xi)) (xi + z)/(xi - z) dmu
// with the rotated polynomials when rotated = true.  Requires |z| < 1 and a
// schedule consistent with the measure.
SecondKindValue second_kind_integral(const MeasureSpec& measure, const CoefficientSchedule& s,
                                     int n, cplx z, bool rotated,
                                     IntegralForm form = IntegralForm::raw);

enum class Verdict { square_summable, divergent, inconclusive };

const char* verdict_name(Verdict v);

// Classification thresholds (heuristic, configurable).  square_summable asks
// every increment over the last quarter to drop below
// tail_increment_factor * (1 - |z|); divergent asks the final increment to
// have NOT decayed below the first-quarter median by decay_ratio.
struct VerdictThresholds {
    double tail_increment_factor = 1e-10;
    double decay_ratio = 10.0;
};

struct WeylSample {
    cplx z;
    cplx r;
    std::vector<double> partial_sums;  // entry N holds the sum over n <= N
    Verdict verdict = Verdict::inconclusive;
};

// Partial sums of |psi_n + r phi_n|^2 + |-psi*_n + r phi*_n|^2 for the
// rotated families over n <= N, plus the verdict.  Requires |z| < 1 and
// N <= 1024.
WeylSample weyl_residual(const CoefficientSchedule& s, cplx z, cplx r, int N,
                         VerdictThresholds thresholds = {});

// The rotated partial sums coincide with the phase-stripped (zeta = 1) ones
// exactly: every unimodular prefactor drops inside | . |^2.
struct RotationReport {
    double max_abs_diff = 0.0;
    bool pass = false;
    std::vector<double> rotated_sums;
    std::vector<double> standard_sums;
};

RotationReport rotation_invariance_check(const CoefficientSchedule& s, cplx z, cplx r, int N);

}  // namespace cmvkit
