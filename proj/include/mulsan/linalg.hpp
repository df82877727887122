#pragma once

#include <optional>
#include <utility>

#include "gf16.hpp"
#include "rng.hpp"

namespace mulsan {

// Dense row-major matrix over GF(16).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Gf16(1);
        return m;
    }

    static Matrix random(std::size_t rows, std::size_t cols, Rng& rng) {
        Matrix m(rows, cols);
        for (auto& e : m.data_) e = rng.element();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Gf16& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Gf16 operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const Gf16* row(std::size_t r) const { return data_.data() + r * cols_; }
    Gf16* row(std::size_t r) { return data_.data() + r * cols_; }

    const Vec& data() const { return data_; }

    Vec mul(const Vec& v) const {
        if (v.size() != cols_) throw DimensionMismatch("matrix-vector dimension mismatch");
        Vec out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            Gf16 acc;
            const Gf16* rp = row(r);
            for (std::size_t c = 0; c < cols_; ++c) acc += rp[c] * v[c];
            out[r] = acc;
        }
        return out;
    }

    Matrix mul(const Matrix& o) const {
        if (cols_ != o.rows_) throw DimensionMismatch("matrix-matrix dimension mismatch");
        Matrix out(rows_, o.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = 0; k < cols_; ++k) {
                Gf16 a = (*this)(r, k);
                if (a.is_zero()) continue;
                const Gf16* op = o.row(k);
                Gf16* rp = out.row(r);
                for (std::size_t c = 0; c < o.cols_; ++c) rp[c] += a * op[c];
            }
        }
        return out;
    }

    Matrix transposed() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    Vec data_;
};

// Gaussian elimination with the pivot chosen as the first nonzero entry
// scanning top-down, so results are deterministic for given inputs. Returns
// nullopt when the matrix is singular (no unique solution); callers in the
// signing path treat that as a vinegar-resample signal.
inline std::optional<Vec> solve_linear(Matrix a, Vec b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw DimensionMismatch("solve_linear needs a square system");

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(a(col, c), a(pivot, c));
            std::swap(b[col], b[pivot]);
        }
        Gf16 inv = a(col, col).inv();
        for (std::size_t c = col; c < n; ++c) a(col, c) *= inv;
        b[col] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            Gf16 f = a(r, col);
            if (f.is_zero()) continue;
            for (std::size_t c = col; c < n; ++c) a(r, c) += f * a(col, c);
            b[r] += f * b[col];
        }
    }
    return b;
}

inline std::optional<Matrix> invert(Matrix a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw DimensionMismatch("only square matrices can be inverted");
    Matrix inv = Matrix::identity(n);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(col, c), a(pivot, c));
                std::swap(inv(col, c), inv(pivot, c));
            }
        }
        Gf16 d = a(col, col).inv();
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) *= d;
            inv(col, c) *= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            Gf16 f = a(r, col);
            if (f.is_zero()) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) += f * a(col, c);
                inv(r, c) += f * inv(col, c);
            }
        }
    }
    return inv;
}

// Invertible affine transformation x -> Ax + b with the inverse of A cached.
struct AffineMap {
    Matrix linear;
    Vec offset;
    Matrix linear_inverse;

    std::size_t dim() const { return offset.size(); }

    // Rejection-sample the linear part until nonsingular. A run of 256
    // singular draws has probability well below 2^-800 and signals a broken
    // entropy source.
    static AffineMap sample(std::size_t dim, Rng& rng) {
        static constexpr int max_attempts = 256;
        for (int attempt = 0; attempt < max_attempts; ++attempt) {
            Matrix linear = Matrix::random(dim, dim, rng);
            auto inv = invert(linear);
            if (!inv) continue;
            Vec offset = rng.elements(dim);
            return AffineMap{std::move(linear), std::move(offset), std::move(*inv)};
        }
        throw SamplingExhausted("256 consecutive singular matrices while sampling an affine map");
    }

    Vec forward(const Vec& v) const {
        if (v.size() != dim()) throw DimensionMismatch("affine map applied to wrong dimension");
        Vec out = linear.mul(v);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += offset[i];
        return out;
    }

    Vec backward(const Vec& v) const {
        if (v.size() != dim()) throw DimensionMismatch("affine map applied to wrong dimension");
        Vec shifted(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) shifted[i] = v[i] + offset[i];
        return linear_inverse.mul(shifted);
    }
};

} // namespace mulsan
