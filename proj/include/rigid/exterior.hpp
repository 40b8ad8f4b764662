#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "rigid/matrix.hpp"

namespace rigid {

/// Packed index of the pair (a, b), a < b, inside the strictly upper
/// triangle of an n x n array. The (a, b) ordering fixes the sign
/// convention once: the stored coefficient multiplies e_a ^ e_b.
inline std::size_t pair_index(std::size_t n, std::size_t a, std::size_t b) {
    return a * n - a * (a + 1) / 2 + (b - a - 1);
}

inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

/// Element of Lambda^2 R^n with upper-triangular storage.
template <class T>
struct Bivector {
    std::size_t dim = 0;
    Vector<T> c; // pair_count(dim) coefficients, (a,b) packed with a < b

    Bivector() = default;
    explicit Bivector(std::size_t n) : dim(n), c(pair_count(n), T(0)) {}

    T& at(std::size_t a, std::size_t b) { return c[pair_index(dim, a, b)]; }
    const T& at(std::size_t a, std::size_t b) const { return c[pair_index(dim, a, b)]; }

    bool is_zero_exact() const { return all_zero(c); }

    Bivector& operator+=(const Bivector& other) {
        if (other.dim != dim) throw DimensionMismatch("bivector dimensions differ");
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.c[i];
        return *this;
    }
    Bivector operator-(const Bivector& other) const {
        if (other.dim != dim) throw DimensionMismatch("bivector dimensions differ");
        Bivector out(dim);
        for (std::size_t i = 0; i < c.size(); ++i) out.c[i] = c[i] - other.c[i];
        return out;
    }
    Bivector scaled_by(const T& s) const {
        Bivector out(dim);
        for (std::size_t i = 0; i < c.size(); ++i) out.c[i] = c[i] * s;
        return out;
    }
};

/// Functional on bivectors, stored with the same packing; pairing with a
/// Bivector is the componentwise sum of products.
template <class T>
struct DualBivector {
    std::size_t dim = 0;
    Vector<T> c;

    DualBivector() = default;
    explicit DualBivector(std::size_t n) : dim(n), c(pair_count(n), T(0)) {}

    T& at(std::size_t a, std::size_t b) { return c[pair_index(dim, a, b)]; }
    const T& at(std::size_t a, std::size_t b) const { return c[pair_index(dim, a, b)]; }

    bool is_zero_exact() const { return all_zero(c); }

    DualBivector operator-(const DualBivector& other) const {
        if (other.dim != dim) throw DimensionMismatch("dual bivector dimensions differ");
        DualBivector out(dim);
        for (std::size_t i = 0; i < c.size(); ++i) out.c[i] = c[i] - other.c[i];
        return out;
    }
    DualBivector operator+(const DualBivector& other) const {
        if (other.dim != dim) throw DimensionMismatch("dual bivector dimensions differ");
        DualBivector out(dim);
        for (std::size_t i = 0; i < c.size(); ++i) out.c[i] = c[i] + other.c[i];
        return out;
    }
    DualBivector scaled_by(const T& s) const {
        DualBivector out(dim);
        for (std::size_t i = 0; i < c.size(); ++i) out.c[i] = c[i] * s;
        return out;
    }
};

template <class T>
Bivector<T> wedge(const Vector<T>& x, const Vector<T>& y) {
    if (x.size() != y.size()) throw DimensionMismatch("wedge of vectors of unequal dimension");
    Bivector<T> out(x.size());
    for (std::size_t a = 0; a + 1 < x.size(); ++a)
        for (std::size_t b = a + 1; b < x.size(); ++b)
            out.at(a, b) = x[a] * y[b] - x[b] * y[a];
    return out;
}

/// Wedge of two covectors, landing in the dual packing.
template <class T>
DualBivector<T> wedge_dual(const Vector<T>& alpha, const Vector<T>& beta) {
    if (alpha.size() != beta.size())
        throw DimensionMismatch("wedge of covectors of unequal dimension");
    DualBivector<T> out(alpha.size());
    for (std::size_t a = 0; a + 1 < alpha.size(); ++a)
        for (std::size_t b = a + 1; b < alpha.size(); ++b)
            out.at(a, b) = alpha[a] * beta[b] - alpha[b] * beta[a];
    return out;
}

template <class T>
T pairing(const Bivector<T>& bv, const DualBivector<T>& t) {
    if (bv.dim != t.dim) throw DimensionMismatch("pairing of mismatched dimensions");
    T acc(0);
    for (std::size_t i = 0; i < bv.c.size(); ++i) acc += bv.c[i] * t.c[i];
    return acc;
}

/// Interior product x -| t as a covector: the unique alpha with
/// alpha(y) = pairing(wedge(x, y), t) for all y.
template <class T>
Vector<T> contract(const Vector<T>& x, const DualBivector<T>& t) {
    if (x.size() != t.dim) throw DimensionMismatch("contract of mismatched dimensions");
    const std::size_t n = x.size();
    Vector<T> alpha(n, T(0));
    for (std::size_t cidx = 0; cidx < n; ++cidx) {
        T acc(0);
        for (std::size_t a = 0; a < cidx; ++a) acc += x[a] * t.at(a, cidx);
        for (std::size_t b = cidx + 1; b < n; ++b) acc -= x[b] * t.at(cidx, b);
        alpha[cidx] = acc;
    }
    return alpha;
}

/// Plucker test: a nonzero bivector is decomposable iff B ^ B = 0, i.e. all
/// quadruple components B_ab B_ce - B_ac B_be + B_ae B_bc vanish.
template <class T>
bool is_decomposable_exact(const Bivector<T>& bv) {
    const std::size_t n = bv.dim;
    for (std::size_t a = 0; a + 3 < n; ++a)
        for (std::size_t b = a + 1; b + 2 < n; ++b)
            for (std::size_t cc = b + 1; cc + 1 < n; ++cc)
                for (std::size_t e = cc + 1; e < n; ++e) {
                    const T comp = bv.at(a, b) * bv.at(cc, e) - bv.at(a, cc) * bv.at(b, e) +
                                   bv.at(a, e) * bv.at(b, cc);
                    if (!is_zero(comp)) return false;
                }
    return true;
}

template <class T>
double bivector_scale(const Bivector<T>& bv) {
    return max_abs(bv.c);
}

template <class T>
double dual_bivector_scale(const DualBivector<T>& t) {
    return max_abs(t.c);
}

} // namespace rigid
