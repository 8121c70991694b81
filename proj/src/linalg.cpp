#include "qfloer/linalg.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>

namespace qfloer::linalg {

void add_scaled(SparseVector& target, const SparseVector& source, const Rational& scale) {
    if (scale == 0) return;
    for (const auto& [i, v] : source) {
        auto it = target.find(i);
        if (it == target.end()) {
            target.emplace(i, v * scale);
        } else {
            it->second += v * scale;
            if (it->second == 0) target.erase(it);
        }
    }
}

SparseVector scaled(const SparseVector& v, const Rational& scale) {
    SparseVector out;
    if (scale == 0) return out;
    for (const auto& [i, x] : v) out.emplace(i, x * scale);
    return out;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_entries_(rows) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

std::size_t SparseMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : row_entries_) n += r.size();
    return n;
}

void SparseMatrix::check_index(std::size_t row, std::size_t col) const {
    if (row >= rows_ || col >= cols_) {
        throw std::out_of_range("matrix index (" + std::to_string(row) + ", " + std::to_string(col) +
                                ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
}

void SparseMatrix::set(std::size_t row, std::size_t col, const Rational& value) {
    check_index(row, col);
    if (value == 0) {
        row_entries_[row].erase(col);
    } else {
        row_entries_[row][col] = value;
    }
}

void SparseMatrix::add(std::size_t row, std::size_t col, const Rational& value) {
    check_index(row, col);
    if (value == 0) return;
    auto& r = row_entries_[row];
    auto it = r.find(col);
    if (it == r.end()) {
        r.emplace(col, value);
    } else {
        it->second += value;
        if (it->second == 0) r.erase(it);
    }
}

Rational SparseMatrix::at(std::size_t row, std::size_t col) const {
    check_index(row, col);
    const auto& r = row_entries_[row];
    auto it = r.find(col);
    return it == r.end() ? Rational(0) : it->second;
}

SparseVector SparseMatrix::column(std::size_t c) const {
    if (c >= cols_) throw std::out_of_range("matrix column " + std::to_string(c) + " out of range");
    SparseVector out;
    for (std::size_t r = 0; r < rows_; ++r) {
        auto it = row_entries_[r].find(c);
        if (it != row_entries_[r].end()) out.emplace(r, it->second);
    }
    return out;
}

std::vector<SparseVector> SparseMatrix::columns() const {
    std::vector<SparseVector> out(cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (const auto& [c, v] : row_entries_[r]) out[c].emplace(r, v);
    }
    return out;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
    SparseVector out;
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational acc = 0;
        for (const auto& [c, v] : row_entries_[r]) {
            auto it = x.find(c);
            if (it != x.end()) acc += v * it->second;
        }
        if (acc != 0) out.emplace(r, acc);
    }
    return out;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    SparseMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        SparseVector acc;
        for (const auto& [k, v] : row_entries_[r]) add_scaled(acc, rhs.row_entries_[k], v);
        out.row_entries_[r] = std::move(acc);
    }
    return out;
}

namespace {

using IntRow = std::map<std::size_t, Integer>;

void make_primitive(IntRow& row) {
    Integer g = 0;
    for (const auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) return;
    }
    if (g > 1) {
        for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
}

IntRow to_integer_row(const SparseVector& row) {
    Integer lcm = 1;
    for (const auto& [c, v] : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    IntRow out;
    for (const auto& [c, v] : row) {
        Integer scaled_num = v.get_num() * (lcm / v.get_den());
        out.emplace(c, scaled_num);
    }
    make_primitive(out);
    return out;
}

}  // namespace

Elimination eliminate(const SparseMatrix& m) {
    const std::size_t nrows = m.rows();
    const std::size_t ncols = m.cols();

    std::vector<IntRow> rows(nrows);
    std::vector<std::set<std::size_t>> col_rows(ncols);
    std::vector<std::size_t> active_col_count(ncols, 0);
    std::vector<bool> active(nrows, true);

    for (std::size_t r = 0; r < nrows; ++r) {
        rows[r] = to_integer_row(m.row(r));
        for (const auto& [c, v] : rows[r]) {
            col_rows[c].insert(r);
            ++active_col_count[c];
        }
    }

    Elimination result;
    std::vector<std::size_t> pivot_col_of_row(nrows, std::numeric_limits<std::size_t>::max());

    for (;;) {
        // Markowitz: minimise (r_i - 1)(c_j - 1) over active entries; the
        // row-major scan keeps the lowest (row, col) on ties.
        bool found = false;
        std::size_t best_row = 0, best_col = 0;
        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        for (std::size_t r = 0; r < nrows && best_cost > 0; ++r) {
            if (!active[r] || rows[r].empty()) continue;
            const std::size_t rc = rows[r].size() - 1;
            for (const auto& [c, v] : rows[r]) {
                const std::size_t cost = rc * (active_col_count[c] - 1);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_row = r;
                    best_col = c;
                    found = true;
                    if (cost == 0) break;
                }
            }
        }
        if (!found) break;

        const IntRow pivot_row = rows[best_row];
        const Integer pivot_value = pivot_row.at(best_col);

        active[best_row] = false;
        for (const auto& [c, v] : pivot_row) --active_col_count[c];
        pivot_col_of_row[best_row] = best_col;
        result.pivots.push_back({best_row, best_col});

        const std::vector<std::size_t> targets(col_rows[best_col].begin(), col_rows[best_col].end());
        for (std::size_t r : targets) {
            if (r == best_row) continue;
            IntRow& row = rows[r];
            const Integer factor = row.at(best_col);
            for (const auto& [c, v] : row) {
                col_rows[c].erase(r);
                if (active[r]) --active_col_count[c];
            }
            // row <- pivot * row - factor * pivot_row
            for (auto& [c, v] : row) v *= pivot_value;
            for (const auto& [c, v] : pivot_row) {
                auto it = row.find(c);
                if (it == row.end()) {
                    row.emplace(c, -factor * v);
                } else {
                    it->second -= factor * v;
                }
            }
            std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
            make_primitive(row);
            for (const auto& [c, v] : row) {
                col_rows[c].insert(r);
                if (active[r]) ++active_col_count[c];
            }
        }
    }

    result.rank = result.pivots.size();
    std::sort(result.pivots.begin(), result.pivots.end(),
              [](const Pivot& a, const Pivot& b) { return a.col < b.col; });
    std::vector<bool> is_pivot_col(ncols, false);
    for (const auto& p : result.pivots) {
        is_pivot_col[p.col] = true;
        const IntRow& row = rows[p.row];
        const Integer& lead = row.at(p.col);
        SparseVector reduced;
        for (const auto& [c, v] : row) reduced.emplace(c, Rational(v, lead));
        for (auto& [c, v] : reduced) v.canonicalize();
        result.reduced_rows.push_back(std::move(reduced));
    }
    for (std::size_t c = 0; c < ncols; ++c) {
        if (!is_pivot_col[c]) result.free_columns.push_back(c);
    }
    return result;
}

std::size_t rank(const SparseMatrix& m) { return eliminate(m).rank; }

std::vector<SparseVector> kernel_basis(const SparseMatrix& m) {
    const Elimination e = eliminate(m);
    std::vector<SparseVector> basis;
    basis.reserve(e.free_columns.size());
    for (std::size_t f : e.free_columns) {
        SparseVector v;
        v.emplace(f, 1);
        for (std::size_t i = 0; i < e.pivots.size(); ++i) {
            const auto& row = e.reduced_rows[i];
            auto it = row.find(f);
            if (it != row.end()) v.emplace(e.pivots[i].col, -it->second);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t dense_rank(const SparseMatrix& m) {
    const std::size_t nrows = m.rows();
    const std::size_t ncols = m.cols();
    std::vector<std::vector<Rational>> a(nrows, std::vector<Rational>(ncols));
    for (std::size_t r = 0; r < nrows; ++r) {
        for (const auto& [c, v] : m.row(r)) a[r][c] = v;
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < ncols && rank < nrows; ++c) {
        std::size_t p = rank;
        while (p < nrows && a[p][c] == 0) ++p;
        if (p == nrows) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = rank + 1; r < nrows; ++r) {
            if (a[r][c] == 0) continue;
            const Rational f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < ncols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::size_t span_rank(std::span<const SparseVector> vectors) {
    EchelonBasis basis;
    for (const auto& v : vectors) basis.insert(v);
    return basis.dimension();
}

SparseVector EchelonBasis::reduce_tracking(const SparseVector& v, SparseVector* combo) const {
    SparseVector residual = v;
    auto it = residual.begin();
    while (it != residual.end()) {
        auto pivot = rows_.find(it->first);
        if (pivot == rows_.end()) {
            ++it;
            continue;
        }
        const std::size_t key = it->first;
        const Rational coef = it->second;
        add_scaled(residual, pivot->second.vec, -coef);
        if (combo) add_scaled(*combo, pivot->second.combo, coef);
        it = residual.upper_bound(key);
    }
    return residual;
}

SparseVector EchelonBasis::reduce(const SparseVector& v) const {
    return reduce_tracking(v, nullptr);
}

bool EchelonBasis::insert(const SparseVector& v) {
    const std::size_t tag = inserted_++;
    SparseVector used;
    SparseVector residual = reduce_tracking(v, track_ ? &used : nullptr);
    if (residual.empty()) return false;
    const Rational lead = residual.begin()->second;
    const std::size_t key = residual.begin()->first;
    if (!track_) {
        rows_.emplace(key, Row{scaled(residual, 1 / lead), {}});
        return true;
    }
    // residual = v - sum(used_i * row_i), so as a combination of tags it is
    // e_tag - sum(used_i * combo_i); `used` already holds the second sum.
    SparseVector combo = scaled(used, -1);
    combo[tag] += 1;
    std::erase_if(combo, [](const auto& kv) { return kv.second == 0; });
    rows_.emplace(key, Row{scaled(residual, 1 / lead), scaled(combo, 1 / lead)});
    return true;
}

std::optional<SparseVector> EchelonBasis::express(const SparseVector& v) const {
    if (!track_) throw std::logic_error("express needs an EchelonBasis that tracks combinations");
    SparseVector combo;
    SparseVector residual = reduce_tracking(v, &combo);
    if (!residual.empty()) return std::nullopt;
    return combo;
}

Quotient quotient_dimension(std::span<const SparseVector> image_gens,
                            std::span<const SparseVector> kernel_gens) {
    EchelonBasis kernel_span(false);
    for (const auto& k : kernel_gens) kernel_span.insert(k);
    for (std::size_t i = 0; i < image_gens.size(); ++i) {
        if (!kernel_span.contains(image_gens[i])) {
            throw QuotientError("image generator " + std::to_string(i) +
                                " is not in the kernel span (boundary of a boundary is nonzero)");
        }
    }
    EchelonBasis span(false);
    for (const auto& v : image_gens) span.insert(v);
    Quotient q;
    for (const auto& k : kernel_gens) {
        if (span.insert(k)) q.representatives.push_back(k);
    }
    q.dimension = q.representatives.size();
    return q;
}

}  // namespace qfloer::linalg
