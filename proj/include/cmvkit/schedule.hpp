#pragma once

// Coefficient schedules: a window [lo, hi] of recursion coefficients
// (alpha_n, zeta_n) with alpha_n in the closed unit disk and zeta_n
// unimodular.  The derived complex coefficient rho_n = sqrt(1-|alpha_n|^2) *
// zeta_n satisfies |alpha_n|^2 + |rho_n|^2 = 1.
//
// Two flavors share the type:
//   - half-lattice schedules (lo == 0, built by the half_lattice factories)
//     extend below the window with the fixed boundary values alpha_{-1} = -1,
//     rho_{-1} = 0 used by half-lattice operator constructions;
//   - full-lattice window schedules throw if an index outside [lo, hi] is
//     requested, including through the *_ext accessors.

#include <vector>

#include "cmvkit/common.hpp"

namespace cmvkit {

// rho = sqrt(1-|alpha|^2) * zeta.  Rejects |alpha| > 1 (beyond rounding).
cplx rho_from_alpha(cplx alpha, cplx zeta);

class CoefficientSchedule {
public:
    // Full-lattice window [lo, lo + alpha.size() - 1].  An empty zeta vector
    // means zeta_n = 1 for every n (a "standard", unrotated schedule).
    CoefficientSchedule(int lo, std::vector<cplx> alpha, std::vector<cplx> zeta = {});

    // Half-lattice schedules on [0, alpha.size() - 1] with the boundary
    // extension alpha_{-1} = -1, rho_{-1} = 0.
    static CoefficientSchedule half_lattice(std::vector<cplx> alpha,
                                            std::vector<cplx> zeta = {});

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(alpha_.size()) - 1; }
    int size() const { return static_cast<int>(alpha_.size()); }
    bool contains(int n) const { return n >= lo() && n <= hi(); }
    bool is_half_lattice() const { return half_lattice_; }

    // Strict accessors: throw std::out_of_range outside the window.
    cplx alpha(int n) const;
    cplx zeta(int n) const;
    cplx rho(int n) const;

    // Extended accessors: half-lattice schedules return the boundary values
    // below the window (alpha = -1, zeta = 1, rho = 0 for every n < 0);
    // full-lattice schedules still throw outside the window.
    cplx alpha_ext(int n) const;
    cplx zeta_ext(int n) const;
    cplx rho_ext(int n) const;

    // |alpha_n| = 1 to within 1e-12, i.e. rho_n = 0 and the operator splits.
    bool is_split_index(int n) const;

    // Copies with one coefficient replaced / all phases removed / all alpha
    // signs flipped (the second-kind schedule) / the window relabeled to
    // start at new_lo (same coefficients, shifted indices).
    CoefficientSchedule with_alpha(int n, cplx value) const;
    CoefficientSchedule stripped() const;
    CoefficientSchedule flipped() const;
    CoefficientSchedule shifted(int new_lo) const;

    const std::vector<cplx>& alphas() const { return alpha_; }
    const std::vector<cplx>& zetas() const { return zeta_; }

private:
    void validate() const;

    int lo_ = 0;
    bool half_lattice_ = false;
    std::vector<cplx> alpha_;
    std::vector<cplx> zeta_;
};

}  // namespace cmvkit
