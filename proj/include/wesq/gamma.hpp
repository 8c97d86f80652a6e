#pragma once

#include "wesq/fgab.hpp"
#include "wesq/homalg.hpp"

namespace wesq {

// Whitehead's universal quadratic functor on a canonical group A with
// generators e_1..e_m of orders o_1..o_k (finite) and 0 (free).
//
// The labeled generating set of Gamma(A) is
//   gamma_i           order o_i if o_i odd, 2 o_i if even, 0 if o_i = 0
//   beta_ij = [e_i,e_j]  (i < j, lexicographic)   order gcd(o_i, o_j)
// with [e_i, e_i] = 2 gamma_i encoded in evaluation, never stored.
// Coefficients on gamma_i over even o_i live mod 2 o_i, which is well
// defined because (c + o)^2 = c^2 (mod 2o) for even o.
struct GammaBasis {
    FgAbGroup source;
    std::vector<Int> labeled_orders; // gammas first, then brackets
    FgAbGroup group;                 // canonical Gamma(A)
    IntMatrix to_canonical, lift;    // labeled <-> canonical coordinates

    std::size_t gamma_index(std::size_t i) const { return i; }
    std::size_t bracket_index(std::size_t i, std::size_t j) const; // i < j
    std::size_t labeled_count() const { return labeled_orders.size(); }

    // Universal quadratic map and its polar form, in labeled coordinates.
    IntVec eval_labeled(const IntVec& x) const;
    IntVec bracket_labeled(const IntVec& x, const IntVec& y) const;
};

struct GammaResult {
    FgAbGroup group;
    GammaBasis basis;
};

GammaResult gamma_group(const FgAbGroup& a);

// gamma(x) and [x, y] in canonical Gamma(A) coordinates.
IntVec gamma_eval(const GammaBasis& b, const IntVec& x);
IntVec bracket_eval(const GammaBasis& b, const IntVec& x, const IntVec& y);

// Gamma(f) : Gamma(A) -> Gamma(B) on canonical forms.
Hom gamma_hom(const Hom& f);

// Independent verification path: Gamma(A) as the cokernel of the relation
// matrix on symbols {gamma_a : a in A} with relations gamma_{-a} - gamma_a
// and the third cross effect
//   gamma_{a+b+c} - gamma_{a+b} - gamma_{a+c} - gamma_{b+c}
//   + gamma_a + gamma_b + gamma_c
// over all a, b, c. Exponential in |A|; refuses |A| > size_limit.
FgAbGroup gamma_oracle(const FgAbGroup& a, const Int& size_limit = 64);

// P (x) Z/2, the stable Gamma of degrees >= 4.
FgAbGroup gamma_upper(const FgAbGroup& p);

} // namespace wesq
