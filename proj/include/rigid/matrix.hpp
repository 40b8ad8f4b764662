#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "rigid/errors.hpp"
#include "rigid/scalar.hpp"

namespace rigid {

template <class T>
using Vector = std::vector<T>;

/// Dense row-major matrix. Small sizes only; frameworks here have tens of
/// vertices, so no sparsity or blocking is attempted.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& value = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionMismatch("ragged initializer for Matrix");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<T>& data() const { return data_; }

    Matrix transposed() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    Vector<T> row(std::size_t i) const {
        return Vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    void set_row(std::size_t i, const Vector<T>& v) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }

    Vector<T> apply(const Vector<T>& x) const {
        if (x.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
        Vector<T> y(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            T acc(0);
            for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    }

    Matrix multiply(const Matrix& other) const {
        if (cols_ != other.rows_) throw DimensionMismatch("matrix-matrix size mismatch");
        Matrix out(rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (is_zero(a)) continue;
                for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
            }
        return out;
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

// small vector helpers

template <class T>
T dot(const Vector<T>& a, const Vector<T>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot of unequal-length vectors");
    T acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

template <class T>
Vector<T> sub(const Vector<T>& a, const Vector<T>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("difference of unequal-length vectors");
    Vector<T> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

template <class T>
Vector<T> add(const Vector<T>& a, const Vector<T>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("sum of unequal-length vectors");
    Vector<T> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

template <class T>
Vector<T> scaled(const Vector<T>& a, const T& s) {
    Vector<T> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

template <class T>
T norm_sq(const Vector<T>& a) {
    T acc(0);
    for (const T& x : a) acc += x * x;
    return acc;
}

inline double norm(const Vector<double>& a) { return std::sqrt(norm_sq(a)); }

template <class T>
bool all_zero(const Vector<T>& a) {
    for (const T& x : a)
        if (!is_zero(x)) return false;
    return true;
}

inline bool all_finite(const Matrix<double>& m) {
    for (double x : m.data())
        if (!std::isfinite(x)) return false;
    return true;
}

inline bool all_finite(const Matrix<Rational>&) { return true; }

template <class T>
double max_abs(const Vector<T>& a) {
    double m = 0.0;
    for (const T& x : a) m = std::max(m, std::abs(to_double(x)));
    return m;
}

} // namespace rigid
