#include "wesq/snf.hpp"

#include <algorithm>

namespace wesq {

namespace {

// Smallest |entry| != 0 in the trailing submatrix, row-major tie-break.
std::optional<std::pair<std::size_t, std::size_t>> min_pivot(const IntMatrix& d, std::size_t t) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs = 0;
    for (std::size_t i = t; i < d.rows(); ++i)
        for (std::size_t j = t; j < d.cols(); ++j) {
            const Int& v = d(i, j);
            if (v == 0) continue;
            Int a = abs(v);
            if (!best || a < best_abs) {
                best = {{i, j}};
                best_abs = a;
                if (best_abs == 1) return best;
            }
        }
    return best;
}

} // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
    SnfResult r;
    r.u = IntMatrix::identity(m.rows());
    r.v = IntMatrix::identity(m.cols());
    r.d = m;
    IntMatrix& d = r.d;

    std::size_t limit = std::min(m.rows(), m.cols());
    std::size_t t = 0;
    while (t < limit) {
        auto piv = min_pivot(d, t);
        if (!piv) break;
        d.swap_rows(t, piv->first);
        r.u.swap_rows(t, piv->first);
        d.swap_cols(t, piv->second);
        r.v.swap_cols(t, piv->second);
        if (d(t, t) < 0) {
            d.negate_row(t);
            r.u.negate_row(t);
        }

        bool clean = true;
        for (std::size_t i = t + 1; i < d.rows(); ++i) {
            Int q = fdiv(d(i, t), d(t, t));
            d.row_submul(i, t, q);
            r.u.row_submul(i, t, q);
            if (d(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < d.cols(); ++j) {
            Int q = fdiv(d(t, j), d(t, t));
            d.col_submul(j, t, q);
            r.v.col_submul(j, t, q);
            if (d(t, j) != 0) clean = false;
        }
        if (!clean) continue; // remainders became new, smaller pivot candidates

        // Divisibility: the pivot must divide the whole trailing submatrix.
        bool fixed = false;
        for (std::size_t i = t + 1; i < d.rows() && !fixed; ++i)
            for (std::size_t j = t + 1; j < d.cols() && !fixed; ++j)
                if (d(i, j) % d(t, t) != 0) {
                    d.row_add(t, i);
                    r.u.row_add(t, i);
                    fixed = true;
                }
        if (fixed) continue;

        ++t;
    }
    r.rank = t;
    return r;
}

IntMatrix kernel_basis(const IntMatrix& m) {
    SnfResult s = smith_normal_form(m);
    return s.v.cols_slice(s.rank, m.cols());
}

IntMatrix image_basis(const IntMatrix& m) {
    // m * v = u^-1 * d, so the first `rank` columns of m * v span the image.
    SnfResult s = smith_normal_form(m);
    return (m * s.v).cols_slice(0, s.rank);
}

std::optional<IntVec> solve(const IntMatrix& m, const IntVec& b) {
    if (b.size() != m.rows()) throw ValidationError("solve: right-hand side length mismatch");
    SnfResult s = smith_normal_form(m);
    IntVec c = s.u.mul_vec(b);
    IntVec y(m.cols());
    for (std::size_t i = 0; i < s.rank; ++i) {
        if (c[i] % s.d(i, i) != 0) return std::nullopt;
        y[i] = c[i] / s.d(i, i);
    }
    for (std::size_t i = s.rank; i < m.rows(); ++i)
        if (c[i] != 0) return std::nullopt;
    return s.v.mul_vec(y);
}

CokernelInvariants cokernel_invariants(const IntMatrix& m) {
    SnfResult s = smith_normal_form(m);
    CokernelInvariants inv;
    inv.free_rank = m.rows() - s.rank;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.d(i, i) >= 2) inv.torsion.push_back(s.d(i, i));
    return inv;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw ValidationError("determinant: matrix not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw ValidationError("unimodular_inverse: matrix not square");
    SnfResult s = smith_normal_form(m);
    if (s.rank != m.rows() || s.d != IntMatrix::identity(m.rows()))
        throw ValidationError("unimodular_inverse: matrix is not unimodular");
    // u * m * v = I  =>  m^-1 = v * u
    return s.v * s.u;
}

ColumnSpanAccumulator::ColumnSpanAccumulator(std::size_t rows) : rows_(rows), pivot_(rows) {}

void ColumnSpanAccumulator::insert(IntVec col) {
    if (col.size() != rows_) throw ValidationError("ColumnSpanAccumulator: column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) {
        if (col[i] == 0) continue;
        if (pivot_[i].empty()) {
            if (col[i] < 0)
                for (auto& v : col) v = -v;
            pivot_[i] = std::move(col);
            return;
        }
        IntVec& p = pivot_[i];
        Xgcd e = xgcd(p[i], col[i]);
        Int pc = p[i] / e.g, cc = col[i] / e.g;
        // [[x, y], [-cc, pc]] has determinant 1: the span is preserved.
        for (std::size_t k = i; k < rows_; ++k) {
            Int np = e.x * p[k] + e.y * col[k];
            Int nc = pc * col[k] - cc * p[k];
            p[k] = np;
            col[k] = nc;
        }
    }
}

IntMatrix ColumnSpanAccumulator::basis() const {
    std::vector<const IntVec*> cols;
    for (const auto& p : pivot_)
        if (!p.empty()) cols.push_back(&p);
    IntMatrix out(rows_, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*cols[j])[i];
    return out;
}

} // namespace wesq
