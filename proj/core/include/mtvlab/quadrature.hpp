#pragma once

#include "mtvlab/value.hpp"

#include <vector>

namespace mtvlab {

// Integrand families on (0,1) around the endpoint-singular factor
// log((1-t)/(1+t)):
//   t^tpow * log^logpow((1-t)/(1+t)) * weight(t)
// weight: none -> 1; inv_one_plus_t2 -> 1/(1+t^2);
//         atan_power -> arctan(t)^a / (1+t^2);
//         pi4_minus_atan_power -> (pi/4 - arctan t)^a / (1+t^2).
enum class KernelWeight { none, inv_one_plus_t2, atan_power, pi4_minus_atan_power };

struct KernelSpec {
    int tpow = 0;
    int logpow = 0;
    KernelWeight weight = KernelWeight::none;
    int weight_power = 0;  // the a in the arctan weights
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // |difference of the last two levels|
    int levels_used = 0;
};

// Tanh-sinh quadrature on (0,1), levels 2..13, halving the step each level
// until two successive levels agree within tol (relative to max(1,|I|)).
// The transform handles the log^k singularity at t -> 1 by construction;
// node positions are evaluated in stable form (1-t and the log-ratio never
// go through cancellation). convergence_error at level 13 without agreement.
QuadratureResult integrate(const KernelSpec& kernel, double tol);

// Log-moment identities tying the integrals to the harmonic tables. Case
// names give (parity of the t power, parity of the log power):
//   ee: int t^{2n-2} log^{2m}   = (2(2m)!/(2n-1)) sum_{j<=m} eta(2m-2j) T_n({1}_{2j})
//   eo: int t^{2n-2} log^{2m-1} = -(2(2m-1)!/(2n-1)) sum_{j<m} eta(2m-1-2j) T_n({1}_{2j})
//                                  - ((2m-1)!/(2n-1)) S_n({1}_{2m-1})
//   oe: int t^{2n-1} log^{2m}   = ((2m)!/n) sum_{j<m} eta(2m-1-2j) T_n({1}_{2j+1})
//                                  + ((2m)!/(2n)) S_n({1}_{2m})
//   oo: int t^{2n-1} log^{2m-1} = -((2m-1)!/n) sum_{j<m} eta(2m-2-2j) T_n({1}_{2j+1})
// eta(0) = 1/2 wherever it occurs.
enum class LogMomentCase { ee, eo, oe, oo };

struct TwoSided {
    ValueWithError lhs;
    ValueWithError rhs;
};

TwoSided log_moment_check(int n, int m, LogMomentCase c, double tol);

// One-dimensional reductions of the nested quantities:
//   W(k+r-1, r)      = (-1)^{k+r-1} 2^r / ((k-1)!(r-1)!)
//                      * int log^{k-1}((1-t)/(1+t)) arctan^{r-1}(t) / (1+t^2) dt
//   Tbar({1}_{r-1},k) = same prefactor with (pi/4 - arctan t)^{r-1}
ValueWithError w_reduced_integral(int k, int r, double tol);
ValueWithError tbar_reduced_integral(int k, int r, double tol);

// Kernel of one simplex variable: log^logpow((1-t)/(1+t)) / (1+t^2).
struct NestedKernel {
    int logpow = 0;
};

// Iterated integral over 0 < t_m < ... < t_1 < 1 of prod f_i(t_i), dim <= 3
// (usage_error beyond). Inner levels run the same tanh-sinh rule affinely
// rescaled to (0, upper) at per-dimension tolerance tol/8.
QuadratureResult nested_integral(const std::vector<NestedKernel>& fs, double tol);

}  // namespace mtvlab
