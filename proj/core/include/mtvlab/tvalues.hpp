#pragma once

#include "mtvlab/rational.hpp"
#include "mtvlab/value.hpp"

namespace mtvlab {

// Binomially weighted sum over all compositions (k_1..k_r) of k:
//   W_m(k,r) = sum binom(k_r + m - 2, m - 1) Tbar(k_1,...,k_{r-1}, k_r + m - 1)
// where Tbar bars the last position. W(k,r) is the m = 1 case. Component
// error estimates add linearly; each component is evaluated at
// tol / (number of compositions). Results are memoized on (m,k,r,tol).
ValueWithError W(int m, int k, int r, double tol);

// The four single-n series forms of W from the harmonic tables, one per
// (depth parity, weight parity) combination:
//   depth 2m,   weight 2p+2m-1:  2(-1)^m   sum_{j<p} eta(2p-2-2j)  S1(2m-1, 2j+1; n)
//   depth 2m,   weight 2p+2m-2:  (-1)^m   [2 sum_{j<p-1} eta(2p-3-2j) S1(2m-1, 2j+1; n) + S2(2m-1, 2p-2; n)]
//   depth 2m-1, weight 2p+2m-2:  (-1)^{m-1}[4 sum_{j<p} eta(2p-1-2j) S1'(2m-2, 2j; n) + 2 S2'(2m-2, 2p-1; n)]
//   depth 2m-1, weight 2p+2m-3:  (-1)^{m-1} 4 sum_{j<p} eta(2p-2-2j) S1'(2m-2, 2j; n)
// with S1(a,b;n) = sum_n T_n({1}_a) T_n({1}_b) (-1)^n / n, the primed forms
// over (2n-1), and S2 mixing in S_n({1}_c); eta(0) = 1/2 throughout. Each
// returns the same quantity as the matching definitional W.
enum class WSeriesForm {
    even_depth_odd_weight,
    even_depth_even_weight,
    odd_depth_even_weight,
    odd_depth_odd_weight,
};

ValueWithError W_series(int p, int m, WSeriesForm form, double tol);

// Exact rational multiple of pi^{2(p-j)}.
struct ZValue {
    int j = 0, p = 0;
    PiMonomial exact;
};

// Chain form: Z(p,p) = 1; otherwise
//   sum_{k=1}^{p-j} (-2)^k sum_{j=i_0<i_1<...<i_k=p} prod eta(2(i_l - i_{l-1}))
// with exact even-eta values, so the result is exact.
ZValue Z_comb(int j, int p);

// Closed form (-1)^{p-j} pi^{2(p-j)} / (2p-2j+1)!.
ZValue Z_closed(int j, int p);

// Tbar({1}_r) = (-1)^r (pi/2)^r / r!, exact.
PiMonomial tbar_ones_exact(int r);

// W(2k+1, 2) = 2^{1-2k} sum_{j=1}^k t_frak(2j+1) eta(2k-2j), eta(0) = 1/2.
// usage_error for k < 1.
ValueWithError w_odd2_closed(int k, double tol);

// sum_{n>=1} (-1)^{n-1} h_n^{(p)} / n^q, accelerated from the h tables.
ValueWithError linear_hsum(int p, int q, double tol);

// Closed form for (1 - (-1)^{p+q}) linear_hsum(p,q); defined only when p+q is
// odd (usage_error otherwise -- the identity degenerates to 0 = 0):
//   -(-1)^p (1+(-1)^q) t_frak(p) eta(q) + (-1)^p binom(p+q-1,p-1) t_frak(p+q)
//   - (-1)^p sum_{k<p} ((-1)^k + 1) binom(p+q-k-2,q-1) tbar(k+1) tbar(p+q-k-1)
//   + 2(-1)^p sum_{j=1}^{[q/2]} binom(p+q-2j-1,p-1) eta(2j) t_frak(p+q-2j)
ValueWithError hsum_closed_rhs(int p, int q);

}  // namespace mtvlab
