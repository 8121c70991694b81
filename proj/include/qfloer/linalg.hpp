#pragma once

// Exact sparse linear algebra over the rationals.
//
// Rank and kernels come from a fraction-free sparse Gauss-Jordan elimination
// with Markowitz pivoting. `dense_rank` is a separate textbook elimination
// kept as an independent cross-check of the sparse path.

#include "qfloer/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace qfloer::linalg {

/// Sparse vector keyed by coordinate index. Zero entries are never stored.
using SparseVector = std::map<std::size_t, Rational>;

void add_scaled(SparseVector& target, const SparseVector& source, const Rational& scale);
SparseVector scaled(const SparseVector& v, const Rational& scale);

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);

    static SparseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const;

    /// Stores `value`; storing zero erases the entry.
    void set(std::size_t row, std::size_t col, const Rational& value);
    void add(std::size_t row, std::size_t col, const Rational& value);
    Rational at(std::size_t row, std::size_t col) const;

    const SparseVector& row(std::size_t r) const { return row_entries_.at(r); }
    SparseVector column(std::size_t c) const;
    /// All columns at once, one pass over the entries.
    std::vector<SparseVector> columns() const;

    SparseVector apply(const SparseVector& x) const;
    SparseMatrix multiply(const SparseMatrix& rhs) const;
    bool is_zero() const { return nonzeros() == 0; }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_entries_ == b.row_entries_;
    }

private:
    void check_index(std::size_t row, std::size_t col) const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVector> row_entries_;
};

struct Pivot {
    std::size_t row;
    std::size_t col;
};

/// Outcome of a full Gauss-Jordan reduction. Each pivot row is normalised to
/// 1 at its pivot column and is zero in every other pivot column.
struct Elimination {
    std::size_t rank = 0;
    std::vector<Pivot> pivots;
    std::vector<SparseVector> reduced_rows;
    std::vector<std::size_t> free_columns;
};

Elimination eliminate(const SparseMatrix& m);

std::size_t rank(const SparseMatrix& m);

/// Null-space basis: one vector per free column, with that column set to 1.
std::vector<SparseVector> kernel_basis(const SparseMatrix& m);

/// Dense row-echelon rank with first-nonzero pivoting.
std::size_t dense_rank(const SparseMatrix& m);

/// Rank of the span of a family of vectors.
std::size_t span_rank(std::span<const SparseVector> vectors);

/// Incrementally built echelon basis of a span. Every inserted vector gets a
/// tag equal to its insertion index (whether or not it was independent), so
/// `express` can write members of the span in terms of the inputs.
class EchelonBasis {
public:
    /// Without tracking, `express` is unavailable but reduction is cheaper.
    explicit EchelonBasis(bool track_combinations = true) : track_(track_combinations) {}

    /// Returns true when `v` enlarged the span.
    bool insert(const SparseVector& v);
    SparseVector reduce(const SparseVector& v) const;
    bool contains(const SparseVector& v) const { return reduce(v).empty(); }
    /// Coefficients over insertion tags, or nullopt when `v` is outside the span.
    std::optional<SparseVector> express(const SparseVector& v) const;
    std::size_t dimension() const { return rows_.size(); }
    std::size_t inserted() const { return inserted_; }

private:
    struct Row {
        SparseVector vec;    // leading entry 1 at the map key
        SparseVector combo;  // vec as a combination of inserted tags
    };
    SparseVector reduce_tracking(const SparseVector& v, SparseVector* combo) const;

    bool track_ = true;
    std::map<std::size_t, Row> rows_;
    std::size_t inserted_ = 0;
};

class QuotientError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Quotient {
    std::size_t dimension = 0;
    std::vector<SparseVector> representatives;
};

/// dim(span(kernel_gens) / span(image_gens)) with representatives picked
/// greedily from `kernel_gens` in order. Throws QuotientError when an image
/// generator lies outside the kernel span.
Quotient quotient_dimension(std::span<const SparseVector> image_gens,
                            std::span<const SparseVector> kernel_gens);

}  // namespace qfloer::linalg
