#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "wesq/errors.hpp"

namespace wesq {

// Arbitrary-precision integer. Smith normal form pivots can blow up
// intermediate entries, so fixed-width arithmetic is not an option.
using Int = boost::multiprecision::cpp_int;

using IntVec = std::vector<Int>;

// gcd(a, b) >= 0 together with x, y such that a*x + b*y = gcd(a, b).
struct Xgcd {
    Int g, x, y;
};
Xgcd xgcd(const Int& a, const Int& b);

// Floor division: fdiv(a, b) = floor(a / b) for b != 0.
Int fdiv(const Int& a, const Int& b);

// a mod b in [0, |b|) for b != 0.
Int emod(const Int& a, const Int& b);

// Dense row-major matrix of Ints. 0 x n and n x 0 matrices are valid and
// show up constantly (resolutions of free groups); every operation in this
// library defines them instead of erroring.
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& other) const = default;

    bool is_zero() const;

    IntVec col(std::size_t j) const;
    IntVec row(std::size_t i) const;
    void set_col(std::size_t j, const IntVec& v);

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntMatrix operator+(const IntMatrix& rhs) const;
    IntMatrix operator-(const IntMatrix& rhs) const;
    IntVec mul_vec(const IntVec& v) const;

    IntMatrix transposed() const;

    // Columns [from, to) as a new matrix.
    IntMatrix cols_slice(std::size_t from, std::size_t to) const;
    // Rows [from, to) as a new matrix.
    IntMatrix rows_slice(std::size_t from, std::size_t to) const;

    static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

    void swap_rows(std::size_t i, std::size_t k);
    void swap_cols(std::size_t j, std::size_t k);
    // row i -= q * row k
    void row_submul(std::size_t i, std::size_t k, const Int& q);
    // col j -= q * col k
    void col_submul(std::size_t j, std::size_t k, const Int& q);
    void negate_row(std::size_t i);
    void row_add(std::size_t i, std::size_t k); // row i += row k

    std::string to_string() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

} // namespace wesq
