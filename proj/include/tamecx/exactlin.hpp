#pragma once

// Dense exact linear algebra over a prime field F_p.
//
// Every elimination in this header uses the same pivot rule: scan columns left
// to right, take the topmost unused row with a nonzero entry. All derived
// choices (kernel bases, complements, solutions) inherit that determinism.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tamecx/error.hpp"

namespace tamecx {

using Residue = std::uint32_t;

/// The prime field F_p. Elements are residues in [0, p).
class Field {
public:
    constexpr Field() = default;

    explicit Field(std::uint32_t p) : p_(p) {
        if (!is_prime(p)) throw PreconditionError("field modulus " + std::to_string(p) + " is not prime");
        if (p >= (1u << 31)) throw PreconditionError("field modulus must be below 2^31");
    }

    static constexpr bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    std::uint32_t modulus() const noexcept { return p_; }

    Residue reduce(std::int64_t v) const noexcept {
        auto r = v % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    Residue add(Residue a, Residue b) const noexcept {
        auto s = static_cast<std::uint64_t>(a) + b;
        return static_cast<Residue>(s >= p_ ? s - p_ : s);
    }
    Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
    }
    Residue inv(Residue a) const {
        if (a == 0) throw Error("division by zero in F_" + std::to_string(p_));
        // a^(p-2)
        std::uint64_t result = 1, base = a, e = p_ - 2;
        while (e > 0) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<Residue>(result);
    }

    /// Signed representative in (-p/2, p/2], used only for display.
    std::int64_t lift(Residue a) const noexcept {
        return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
    }

    friend bool operator==(const Field&, const Field&) = default;

private:
    std::uint32_t p_ = 2;
};

/// Dense row-major matrix over F_p. Value type; all operations return new matrices.
class FieldMatrix {
public:
    FieldMatrix() = default;

    FieldMatrix(Field field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static FieldMatrix zero(Field field, std::size_t rows, std::size_t cols) { return {field, rows, cols}; }

    static FieldMatrix identity(Field field, std::size_t n) {
        FieldMatrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
        return m;
    }

    /// Builds a matrix from integer rows; entries are reduced mod p.
    static FieldMatrix from_rows(Field field, const std::vector<std::vector<std::int64_t>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.front().size();
        FieldMatrix m(field, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            require(rows[i].size() == c, "ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m.data_[i * c + j] = field.reduce(rows[i][j]);
        }
        return m;
    }

    static FieldMatrix from_rows(Field field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
        std::vector<std::vector<std::int64_t>> v;
        for (auto& r : rows) v.emplace_back(r);
        return from_rows(field, v);
    }

    /// Single column vector.
    static FieldMatrix column_vector(Field field, const std::vector<std::int64_t>& entries) {
        FieldMatrix m(field, entries.size(), 1);
        for (std::size_t i = 0; i < entries.size(); ++i) m.data_[i] = field.reduce(entries[i]);
        return m;
    }

    /// Standard basis vectors e_j for j in `indices`, as columns of an n-row matrix.
    static FieldMatrix unit_columns(Field field, std::size_t n, const std::vector<std::size_t>& indices) {
        FieldMatrix m(field, n, indices.size());
        for (std::size_t k = 0; k < indices.size(); ++k) m.set(indices[k], k, 1);
        return m;
    }

    template <class Rng>
    static FieldMatrix random(Field field, std::size_t rows, std::size_t cols, Rng& rng) {
        FieldMatrix m(field, rows, cols);
        std::uniform_int_distribution<std::uint32_t> dist(0, field.modulus() - 1);
        for (auto& x : m.data_) x = dist(rng);
        return m;
    }

    Field field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Residue operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, Residue v) { data_[i * cols_ + j] = v; }

    std::span<const Residue> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    bool is_zero() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
    }

    bool is_identity() const noexcept {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
        return true;
    }

    bool row_is_zero(std::size_t i) const {
        auto r = row(i);
        return std::all_of(r.begin(), r.end(), [](Residue x) { return x == 0; });
    }

    FieldMatrix transpose() const {
        FieldMatrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
        return t;
    }

    FieldMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        require(r0 + nr <= rows_ && c0 + nc <= cols_, "matrix block out of range");
        FieldMatrix b(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0), nc,
                        b.data_.begin() + static_cast<std::ptrdiff_t>(i * nc));
        return b;
    }

    FieldMatrix column(std::size_t j) const { return block(0, j, rows_, 1); }

    FieldMatrix select_columns(const std::vector<std::size_t>& idx) const {
        FieldMatrix m(field_, rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < idx.size(); ++k) m.data_[i * idx.size() + k] = (*this)(i, idx[k]);
        return m;
    }

    FieldMatrix select_rows(const std::vector<std::size_t>& idx) const {
        FieldMatrix m(field_, idx.size(), cols_);
        for (std::size_t k = 0; k < idx.size(); ++k)
            std::copy_n(row(idx[k]).begin(), cols_, m.data_.begin() + static_cast<std::ptrdiff_t>(k * cols_));
        return m;
    }

    /// Writes `b` into this matrix with its top-left corner at (r0, c0).
    void paste(std::size_t r0, std::size_t c0, const FieldMatrix& b) {
        require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "matrix paste out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            std::copy_n(b.row(i).begin(), b.cols_, data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0));
    }

    FieldMatrix operator-() const {
        FieldMatrix m = *this;
        for (auto& x : m.data_) x = field_.neg(x);
        return m;
    }

    FieldMatrix& operator+=(const FieldMatrix& b) {
        check_same_shape(b);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.add(data_[k], b.data_[k]);
        return *this;
    }
    FieldMatrix& operator-=(const FieldMatrix& b) {
        check_same_shape(b);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.sub(data_[k], b.data_[k]);
        return *this;
    }
    friend FieldMatrix operator+(FieldMatrix a, const FieldMatrix& b) { return a += b; }
    friend FieldMatrix operator-(FieldMatrix a, const FieldMatrix& b) { return a -= b; }

    FieldMatrix scaled(Residue c) const {
        FieldMatrix m = *this;
        for (auto& x : m.data_) x = field_.mul(x, c);
        return m;
    }

    friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
        require(a.field_ == b.field_, "matrix fields differ");
        require(a.cols_ == b.rows_, "matrix product dimension mismatch: " + a.shape() + " * " + b.shape());
        FieldMatrix c(a.field_, a.rows_, b.cols_);
        const std::uint64_t p = a.field_.modulus();
        std::vector<std::uint64_t> acc(b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const std::uint64_t aik = a.data_[i * a.cols_ + k];
                if (aik == 0) continue;
                const Residue* brow = b.data_.data() + k * b.cols_;
                for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + aik * brow[j]) % p;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) c.data_[i * b.cols_ + j] = static_cast<Residue>(acc[j]);
        }
        return c;
    }

    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    friend std::ostream& operator<<(std::ostream& os, const FieldMatrix& m) {
        os << "[" << m.shape() << " over F_" << m.field_.modulus() << "]";
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << "\n ";
            for (std::size_t j = 0; j < m.cols_; ++j) os << ' ' << m(i, j);
        }
        return os;
    }

private:
    void check_same_shape(const FieldMatrix& b) const {
        require(field_ == b.field_, "matrix fields differ");
        require(rows_ == b.rows_ && cols_ == b.cols_, "matrix shape mismatch: " + shape() + " vs " + b.shape());
    }

    Field field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Residue> data_;
};

inline FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b) {
    require(a.field() == b.field(), "matrix fields differ");
    require(a.rows() == b.rows(), "hstack row mismatch: " + a.shape() + " | " + b.shape());
    FieldMatrix m(a.field(), a.rows(), a.cols() + b.cols());
    m.paste(0, 0, a);
    m.paste(0, a.cols(), b);
    return m;
}

inline FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b) {
    require(a.field() == b.field(), "matrix fields differ");
    require(a.cols() == b.cols(), "vstack column mismatch: " + a.shape() + " / " + b.shape());
    FieldMatrix m(a.field(), a.rows() + b.rows(), a.cols());
    m.paste(0, 0, a);
    m.paste(a.rows(), 0, b);
    return m;
}

inline FieldMatrix block_diag(const FieldMatrix& a, const FieldMatrix& b) {
    require(a.field() == b.field(), "matrix fields differ");
    FieldMatrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    m.paste(0, 0, a);
    m.paste(a.rows(), a.cols(), b);
    return m;
}

/// 2x2 block matrix [[a, b], [c, d]]; block shapes must agree.
inline FieldMatrix block2x2(const FieldMatrix& a, const FieldMatrix& b, const FieldMatrix& c, const FieldMatrix& d) {
    return vstack(hstack(a, b), hstack(c, d));
}

struct RrefResult {
    FieldMatrix reduced;
    std::vector<std::size_t> pivots;
    FieldMatrix transform; // transform * m == reduced, transform invertible
};

inline RrefResult rref(const FieldMatrix& m) {
    const Field f = m.field();
    FieldMatrix r = m;
    FieldMatrix t = FieldMatrix::identity(f, m.rows());
    std::vector<std::size_t> pivots;
    std::size_t row = 0;

    auto swap_rows = [](FieldMatrix& a, std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            auto x = a(i, c);
            a.set(i, c, a(j, c));
            a.set(j, c, x);
        }
    };
    auto scale_row = [&f](FieldMatrix& a, std::size_t i, Residue s) {
        for (std::size_t c = 0; c < a.cols(); ++c) a.set(i, c, f.mul(a(i, c), s));
    };
    // a[i] -= s * a[j]
    auto axpy_row = [&f](FieldMatrix& a, std::size_t i, std::size_t j, Residue s) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a(j, c) != 0) a.set(i, c, f.sub(a(i, c), f.mul(s, a(j, c))));
    };

    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && r(pr, col) == 0) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row) {
            swap_rows(r, pr, row);
            swap_rows(t, pr, row);
        }
        const Residue s = f.inv(r(row, col));
        scale_row(r, row, s);
        scale_row(t, row, s);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || r(i, col) == 0) continue;
            const Residue factor = r(i, col);
            axpy_row(r, i, row, factor);
            axpy_row(t, i, row, factor);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), std::move(pivots), std::move(t)};
}

inline std::size_t rank(const FieldMatrix& m) { return rref(m).pivots.size(); }

/// Columns span ker m; one column per free (non-pivot) column of rref(m).
inline FieldMatrix kernel_basis(const FieldMatrix& m) {
    const Field f = m.field();
    auto rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    FieldMatrix k(f, m.cols(), free_cols.size());
    for (std::size_t c = 0; c < free_cols.size(); ++c) {
        const std::size_t j = free_cols[c];
        k.set(j, c, 1);
        for (std::size_t i = 0; i < rr.pivots.size(); ++i) k.set(rr.pivots[i], c, f.neg(rr.reduced(i, j)));
    }
    return k;
}

/// The pivot columns of m: a basis of its column space made of original columns.
inline FieldMatrix image_basis(const FieldMatrix& m) { return m.select_columns(rref(m).pivots); }

inline bool is_injective(const FieldMatrix& m) { return rank(m) == m.cols(); }
inline bool is_surjective(const FieldMatrix& m) { return rank(m) == m.rows(); }

/// Some X with a*X == b, or nullopt. Free coordinates of X are zero.
inline std::optional<FieldMatrix> solve(const FieldMatrix& a, const FieldMatrix& b) {
    require(a.rows() == b.rows(), "solve: a has " + std::to_string(a.rows()) + " rows but b has " +
                                      std::to_string(b.rows()));
    require(a.field() == b.field(), "solve: fields differ");
    auto rr = rref(a);
    const FieldMatrix c = rr.transform * b;
    const std::size_t r = rr.pivots.size();
    for (std::size_t i = r; i < c.rows(); ++i)
        if (!c.row_is_zero(i)) return std::nullopt;
    FieldMatrix x(a.field(), a.cols(), b.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x.set(rr.pivots[i], j, c(i, j));
    return x;
}

/// Like solve, but a missing solution is an internal error.
inline FieldMatrix solve_or_throw(const FieldMatrix& a, const FieldMatrix& b, const char* what) {
    auto x = solve(a, b);
    if (!x) throw Error(std::string("no solution for linear system: ") + what);
    return std::move(*x);
}

inline FieldMatrix inverse(const FieldMatrix& m) {
    require(m.rows() == m.cols(), "inverse of non-square matrix " + m.shape());
    auto rr = rref(m);
    if (rr.pivots.size() != m.rows()) throw PreconditionError("inverse of singular matrix");
    return rr.transform;
}

struct PullbackResult {
    std::size_t dim;
    FieldMatrix into_w1; // P -> W1
    FieldMatrix into_w0; // P -> W0
};

/// P = lim(W1 --f--> U <--g-- W0), presented as ker[f | -g] inside W1 (+) W0.
inline PullbackResult pullback(const FieldMatrix& f, const FieldMatrix& g) {
    require(f.rows() == g.rows(), "pullback: maps have different codomains");
    const FieldMatrix k = kernel_basis(hstack(f, -g));
    return {k.cols(), k.block(0, 0, f.cols(), k.cols()), k.block(f.cols(), 0, g.cols(), k.cols())};
}

struct ComplementSection {
    FieldMatrix quotient_proj; // V -> V/span(sub)
    FieldMatrix section;       // V/span(sub) -> V
};

/// Quotient of K^total by span(sub) together with a section. The section picks the
/// standard basis vectors at the non-pivot columns of rref(sub^T).
inline ComplementSection complement_section(const FieldMatrix& sub, std::size_t total) {
    require(sub.rows() == total, "complement_section: subspace vectors have wrong length");
    const Field f = sub.field();
    auto rr = rref(sub.transpose());
    if (rr.pivots.size() != sub.cols()) throw PreconditionError("complement_section: dependent columns");
    std::vector<bool> is_pivot(total, false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < total; ++j)
        if (!is_pivot[j]) rest.push_back(j);
    FieldMatrix section = FieldMatrix::unit_columns(f, total, rest);
    const FieldMatrix basis_inv = inverse(hstack(sub, section));
    return {basis_inv.block(sub.cols(), 0, rest.size(), total), std::move(section)};
}

struct PushoutResult {
    std::size_t dim;
    FieldMatrix from_w0; // W0 -> Q
    FieldMatrix from_w1; // W1 -> Q
    FieldMatrix quotient_proj; // W0 (+) W1 -> Q
    FieldMatrix section;       // Q -> W0 (+) W1
};

/// Q = colim(W0 <--f-- V --g--> W1) = (W0 (+) W1) / im[f; -g].
inline PushoutResult pushout(const FieldMatrix& f, const FieldMatrix& g) {
    require(f.cols() == g.cols(), "pushout: maps have different domains");
    const std::size_t w0 = f.rows(), w1 = g.rows();
    const FieldMatrix sub = image_basis(vstack(f, -g));
    auto cs = complement_section(sub, w0 + w1);
    const std::size_t q = cs.quotient_proj.rows();
    return {q, cs.quotient_proj.block(0, 0, q, w0), cs.quotient_proj.block(0, w0, q, w1),
            std::move(cs.quotient_proj), std::move(cs.section)};
}

/// Basis of span(a) ∩ span(b) (columns), where a and b have independent columns or not.
inline FieldMatrix intersection_basis(const FieldMatrix& a, const FieldMatrix& b) {
    require(a.rows() == b.rows(), "intersection of subspaces of different spaces");
    auto pb = pullback(a, b);
    return image_basis(a * pb.into_w1);
}

/// Whether every column of b lies in the column space of a.
inline bool spans(const FieldMatrix& a, const FieldMatrix& b) { return solve(a, b).has_value(); }

} // namespace tamecx
