#pragma once

#include <vector>

#include "wesq/fgab.hpp"

namespace wesq {

// Cellular chain complex of a simply connected model: free groups C_n for
// 2 <= n <= top with C_0 = C_1 = 0, so d_2 is the zero map into nothing.
// Differentials are stored for 3 <= n <= top; d_{top+1} and d_2 are the
// empty maps. d_n . d_{n+1} = 0 is checked at construction.
class ChainComplex {
  public:
    // ranks[i] = rank of C_{i+2}; differentials[i] = d_{i+3}.
    ChainComplex(std::size_t top, std::vector<std::size_t> ranks,
                 std::vector<IntMatrix> differentials);

    std::size_t top() const { return top_; }
    std::size_t rank(std::size_t n) const; // 0 outside [2, top]

    // d_n : C_n -> C_{n-1}, defined for 2 <= n <= top + 1 (empty at the ends).
    const IntMatrix& differential(std::size_t n) const;

    bool operator==(const ChainComplex&) const = default;

  private:
    std::size_t top_;
    std::vector<std::size_t> ranks_;
    std::vector<IntMatrix> diffs_; // index n - 2 holds d_n for n in [2, top+1]
};

// ker d_n / im d_{n+1} with the change-of-basis data needed downstream:
// cycle_basis embeds Z^s as ker d_n inside C_n, boundary_in_cycles gives
// the columns of d_{n+1} in cycle coordinates (the presentation of H_n),
// and to_canonical / lift convert between cycle and canonical coordinates.
struct HomologyData {
    FgAbGroup group;
    IntMatrix cycle_basis;
    IntMatrix boundary_in_cycles;
    IntMatrix to_canonical;
    IntMatrix lift;

    Hom projection_hom() const; // Z^s (cycle coords) -> H_n
};

HomologyData homology(const ChainComplex& c, std::size_t n);

} // namespace wesq
