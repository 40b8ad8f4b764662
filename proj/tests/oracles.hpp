#pragma once

// Test-only oracles. These deliberately avoid the library's elimination and
// SVD paths: rank/kernel questions are answered by a plain division-based
// Gauss-Jordan reduction, derivatives by central differences, and the
// twisted-octahedron coordinates by exact arithmetic in Q(sqrt 3).

#include <cassert>
#include <cstddef>
#include <vector>

#include "rigid/scalar.hpp"

namespace oracle {

/// Reduced row echelon form over an exact field; T needs +,-,*,/ and ==.
template <class T>
struct Rref {
    std::vector<std::vector<T>> rows;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

template <class T>
Rref<T> rref(std::vector<std::vector<T>> m) {
    Rref<T> out;
    if (m.empty()) return out;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m[sel][c] == T(0)) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        const T pivot = m[r][c];
        for (std::size_t j = 0; j < cols; ++j) m[r][j] = m[r][j] / pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == T(0)) continue;
            const T factor = m[i][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - factor * m[r][j];
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rows = std::move(m);
    return out;
}

template <class T>
std::size_t rref_rank(const std::vector<std::vector<T>>& m) {
    return rref(m).rank();
}

template <class T>
std::vector<std::vector<T>> rref_kernel(const std::vector<std::vector<T>>& m) {
    const auto red = rref(m);
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : red.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<T>> kernel;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(cols, T(0));
        v[f] = T(1);
        for (std::size_t i = 0; i < red.pivot_cols.size(); ++i)
            v[red.pivot_cols[i]] = T(0) - red.rows[i][f];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

/// The field Q(sqrt 3): values a + b sqrt(3) with rational a, b. Exact
/// arithmetic for frameworks whose coordinates involve cos/sin of
/// multiples of 30 degrees.
struct Q3 {
    rigid::Rational a{0}, b{0};

    Q3() = default;
    Q3(int x) : a(x) {}
    Q3(rigid::Rational ra, rigid::Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

    static Q3 sqrt3() { return Q3(rigid::Rational(0), rigid::Rational(1)); }

    friend Q3 operator+(const Q3& x, const Q3& y) { return Q3(x.a + y.a, x.b + y.b); }
    friend Q3 operator-(const Q3& x, const Q3& y) { return Q3(x.a - y.a, x.b - y.b); }
    friend Q3 operator*(const Q3& x, const Q3& y) {
        return Q3(x.a * y.a + 3 * x.b * y.b, x.a * y.b + x.b * y.a);
    }
    friend Q3 operator/(const Q3& x, const Q3& y) {
        const rigid::Rational den = y.a * y.a - 3 * y.b * y.b;
        assert(!(den == 0));
        return Q3((x.a * y.a - 3 * x.b * y.b) / den, (x.b * y.a - x.a * y.b) / den);
    }
    friend bool operator==(const Q3& x, const Q3& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const Q3& x, const Q3& y) { return !(x == y); }

    double to_double() const { return rigid::to_double(a) + rigid::to_double(b) * 1.7320508075688772; }
};

/// cos/sin of k * 30 degrees, exactly, as elements of Q(sqrt 3).
inline Q3 cos30k(int k) {
    k = ((k % 12) + 12) % 12;
    using R = rigid::Rational;
    switch (k) {
        case 0: return Q3(R(1), R(0));
        case 1: return Q3(R(0), R(1, 2));
        case 2: return Q3(R(1, 2), R(0));
        case 3: return Q3(R(0), R(0));
        case 4: return Q3(R(-1, 2), R(0));
        case 5: return Q3(R(0), R(-1, 2));
        case 6: return Q3(R(-1), R(0));
        case 7: return Q3(R(0), R(-1, 2));
        case 8: return Q3(R(-1, 2), R(0));
        case 9: return Q3(R(0), R(0));
        case 10: return Q3(R(1, 2), R(0));
        case 11: return Q3(R(0), R(1, 2));
    }
    return Q3();
}

inline Q3 sin30k(int k) { return cos30k(k - 3); }

} // namespace oracle
