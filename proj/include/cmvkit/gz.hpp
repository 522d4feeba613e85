#pragma once

// Transfer-matrix form of the CMV eigenvalue problem: 2x2 one-step matrices,
// their inverses, bidirectional propagation, half-lattice boundary seeds,
// the neighbor tables one step either side of a boundary index, and the
// equivalence check between propagated sequences and the block equations of
// the operator pencil.
//
// Conventions:
//   - Step n -> n+1 multiplies by the transfer matrix of index n+1.
//   - Even-index matrices depend on z and 1/z; odd-index matrices are
//     z-independent.
//   - det T_n(z) = -conj(rho_n)/rho_n for every index and z != 0.

#include <array>
#include <vector>

#include "cmvkit/common.hpp"
#include "cmvkit/schedule.hpp"

namespace cmvkit {

struct GZState {
    cplx f;
    cplx g;
    int n = 0;
};

struct Transfer2x2 {
    int n = 0;
    cplx z;
    cplx a, b, c, d;  // [[a, b], [c, d]]

    bool even_parity() const { return ((n % 2) + 2) % 2 == 0; }
    cplx det() const { return a * d - b * c; }
    GZState apply(const GZState& s) const { return GZState{a * s.f + b * s.g, c * s.f + d * s.g, s.n + 1}; }
};

// Transfer matrix of index n:
//   n even: (1/rho_n) [[-conj(alpha_n), z], [1/z, -alpha_n]]
//   n odd:  (1/rho_n) [[-alpha_n, 1], [1, -conj(alpha_n)]]
// Requires z != 0 with |z| in [1e-6, 1e6] and |alpha_n| < 1.
Transfer2x2 gz_transfer(cplx alpha, cplx rho, int n, cplx z);
Transfer2x2 gz_transfer(const CoefficientSchedule& s, int n, cplx z);

// Matrix inverse of gz_transfer (note the conj(rho_n) prefactor):
//   n even: (1/conj(rho_n)) [[alpha_n, z], [1/z, conj(alpha_n)]]
//   n odd:  (1/conj(rho_n)) [[conj(alpha_n), 1], [1, alpha_n]]
Transfer2x2 gz_transfer_inv(cplx alpha, cplx rho, int n, cplx z);
Transfer2x2 gz_transfer_inv(const CoefficientSchedule& s, int n, cplx z);

enum class Direction { rightward, leftward };

// Propagate init across [lo, hi].  Rightward starts at init.n == lo and
// applies gz_transfer(n+1) per step; leftward starts at init.n == hi and
// applies gz_transfer_inv(n+1) per step down.  The result is ordered by
// index, one state per n in [lo, hi].
std::vector<GZState> propagate(const CoefficientSchedule& s, GZState init, int lo, int hi, cplx z,
                               Direction direction);

enum class SeedFamily { f_plus, p_plus, f_minus, p_minus };

constexpr int seed_family_index(SeedFamily f) { return static_cast<int>(f); }
const char* seed_family_name(SeedFamily f);

// Boundary seed at index K (the seed lives at K itself):
//   K even: f+ = (z, 1), p+ = (z, -1), f- = (1, -1), p- = (1, 1)
//   K odd:  f+ = (1, 1), p+ = (-1, 1), f- = (-z, 1), p- = (z, 1)
GZState half_lattice_seeds(int K, SeedFamily family, cplx z);

// The eight states one step either side of the boundary index: each family's
// seed pushed to K+1 with gz_transfer(K+1) and pulled to K-1 with
// gz_transfer_inv(K).  Entries at K-1 carry 1/conj(rho_K) prefactors, entries
// at K+1 carry 1/rho_{K+1}.
struct NeighborTable {
    int K = 0;
    std::array<GZState, 4> at_prev;  // index by seed_family_index, states at K-1
    std::array<GZState, 4> at_next;  // states at K+1
};

NeighborTable neighbor_table(const CoefficientSchedule& s, int K, cplx z);

// A contiguous pair sequence (f_n, g_n), n in [lo, lo + size).
struct PairSequence {
    int lo = 0;
    std::vector<cplx> f;
    std::vector<cplx> g;

    int hi() const { return lo + static_cast<int>(f.size()) - 1; }
    cplx f_at(int n) const;
    cplx g_at(int n) const;
};

PairSequence to_pair_sequence(const std::vector<GZState>& states);

// Entrywise check that a pair sequence solves the spectral problem on the
// window, two independent ways:
//   - block equations: at each interior n the two scalar rows of the
//     factored operator pencil,
//       n odd:  conj(alpha_{n+1}) f_n + rho_{n+1} f_{n+1} = z g_n
//               conj(rho_n) g_{n-1} - alpha_n g_n       = f_n
//       n even: conj(rho_n) f_{n-1} - alpha_n f_n       = z g_n
//               conj(alpha_{n+1}) g_n + rho_{n+1} g_{n+1} = f_n
//   - transfer recursion: (f_{n+1}, g_{n+1}) = T_{n+1} (f_n, g_n).
// The two checks hold or fail together for sequences touching the same
// entries.  Requires the sequence to cover [window_lo - 1, window_hi + 1].
struct EquivalenceReport {
    int window_lo = 0;
    int window_hi = 0;
    double block_residual = 0.0;
    double recursion_residual = 0.0;
    double tolerance = 0.0;
    bool block_pass = false;
    bool recursion_pass = false;
};

EquivalenceReport verify_equivalence(const CoefficientSchedule& s, const PairSequence& seq, cplx z,
                                     int window_lo, int window_hi, double tolerance = 1e-11);

}  // namespace cmvkit
