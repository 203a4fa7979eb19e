#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubix {

using Int = boost::multiprecision::cpp_int;

/// Dense matrix over arbitrary-precision integers, row-major.
/// Degenerate shapes (0 rows or 0 cols) are legal and represent the
/// zero map to/from the zero group.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("IntMatrix: entry count does not match shape");
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    static IntMatrix diagonal(const std::vector<Int>& d) {
        IntMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
        return m;
    }
    static IntMatrix row_vector(const std::vector<Int>& v) {
        return IntMatrix(1, v.size(), std::vector<Int>(v));
    }
    static IntMatrix column_vector(const std::vector<Int>& v) {
        return IntMatrix(v.size(), 1, std::vector<Int>(v));
    }
    /// 2D initializer, mostly for tests: IntMatrix::of({{1,2},{3,4}}).
    static IntMatrix of(std::initializer_list<std::initializer_list<long long>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.begin()->size();
        IntMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw std::invalid_argument("IntMatrix::of: ragged rows");
            std::size_t j = 0;
            for (long long v : row) m.at(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Int>& entries() const { return data_; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }
    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
        IntMatrix out(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const Int& b = o.at(k, j);
                    if (b != 0) out.at(i, j) += a * b;
                }
            }
        return out;
    }
    IntMatrix operator+(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("IntMatrix: shape mismatch in sum");
        IntMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + o.data_[i];
        return out;
    }
    IntMatrix operator-(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("IntMatrix: shape mismatch in difference");
        IntMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - o.data_[i];
        return out;
    }
    IntMatrix operator-() const {
        IntMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = -data_[i];
        return out;
    }
    IntMatrix scaled(const Int& c) const {
        IntMatrix out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * c;
        return out;
    }

    std::vector<Int> apply(const std::vector<Int>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("IntMatrix: vector length mismatch");
        std::vector<Int> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && x[j] != 0) y[i] += at(i, j) * x[j];
        return y;
    }

    IntMatrix transposed() const {
        IntMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    std::vector<Int> column(std::size_t j) const {
        std::vector<Int> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }
    void set_column(std::size_t j, const std::vector<Int>& v) {
        for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    /// Columns [c0, c1) as a new matrix.
    IntMatrix columns(std::size_t c0, std::size_t c1) const {
        IntMatrix out(rows_, c1 - c0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = c0; j < c1; ++j) out.at(i, j - c0) = at(i, j);
        return out;
    }
    /// Rows [r0, r1) as a new matrix.
    IntMatrix row_block(std::size_t r0, std::size_t r1) const {
        IntMatrix out(r1 - r0, cols_);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.at(i - r0, j) = at(i, j);
        return out;
    }

    /// [a | b] side by side.
    static IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row mismatch");
        IntMatrix out(a.rows(), a.cols() + b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
            for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, a.cols() + j) = b.at(i, j);
        }
        return out;
    }
    /// a stacked on top of b.
    static IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols() != b.cols()) throw std::invalid_argument("vconcat: column mismatch");
        IntMatrix out(a.rows() + b.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out.at(a.rows() + i, j) = b.at(i, j);
        return out;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? "; " : "";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += " ";
                s += at(i, j).str();
            }
        }
        s += "]";
        return s;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

}  // namespace cubix
