#pragma once

#include <optional>
#include <vector>

#include "wesq/intmatrix.hpp"

namespace wesq {

// u * m * v = d with u, v unimodular and d diagonal, nonnegative,
// nonzero entries first and d1 | d2 | ... ; rank = number of nonzero
// diagonal entries. Pivoting is minimal absolute value with row-major
// tie-breaking, so results are reproducible byte for byte.
struct SnfResult {
    IntMatrix u, d, v;
    std::size_t rank = 0;
};

SnfResult smith_normal_form(const IntMatrix& m);

// Columns form a basis of the integer kernel lattice {x : m x = 0};
// full column rank, possibly zero columns wide.
IntMatrix kernel_basis(const IntMatrix& m);

// Columns form a basis of the image lattice spanned by the columns of m.
IntMatrix image_basis(const IntMatrix& m);

// Some integer solution of m x = b, or nullopt when none exists.
// Deterministic: the free coordinates of the SNF parametrization are 0.
std::optional<IntVec> solve(const IntMatrix& m, const IntVec& b);

// Invariants of Z^rows / column-span(m): torsion in divisibility order
// with 1-entries dropped.
struct CokernelInvariants {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;
};

CokernelInvariants cokernel_invariants(const IntMatrix& m);

// Exact determinant (fraction-free Bareiss elimination); square input.
Int determinant(const IntMatrix& m);

// Inverse of a unimodular matrix; throws if m is not unimodular.
IntMatrix unimodular_inverse(const IntMatrix& m);

// Incrementally maintains a basis of the lattice spanned by inserted
// columns. Used where relation matrices are far wider than tall.
class ColumnSpanAccumulator {
  public:
    explicit ColumnSpanAccumulator(std::size_t rows);

    void insert(IntVec col);
    // Basis columns, in pivot-row order.
    IntMatrix basis() const;

  private:
    std::size_t rows_;
    std::vector<IntVec> pivot_; // pivot_[i] empty or a column whose first nonzero is at row i
};

} // namespace wesq
