#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rigid/matrix.hpp"
#include "rigid/tolerance.hpp"

namespace rigid {

template <class T>
struct RankNullspace {
    std::size_t rank = 0;
    /// Kernel basis: orthonormal columns (floating) or reduced-echelon free
    /// vectors (exact).
    std::vector<Vector<T>> kernel;
    /// Diagnostic only; empty in exact mode.
    std::vector<double> singular_values;

    std::size_t nullity() const { return kernel.size(); }
};

template <class T>
struct LeastSquaresResult {
    Vector<T> solution;
    T residual_sq = T(0);
    double residual_norm() const { return std::sqrt(std::max(0.0, to_double(residual_sq))); }
};

namespace detail {

inline Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

/// Fraction-free (Bareiss) forward elimination. Returns the echelon matrix
/// and the pivot columns; rank-revealing and exact over the rationals.
inline std::pair<Matrix<Rational>, std::vector<std::size_t>> bareiss_echelon(Matrix<Rational> m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivot_cols;
    Rational prev(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && is_zero(m(sel, c))) ++sel;
        if (sel == rows) continue;
        if (sel != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(sel, j), m(r, j));
        const Rational pivot = m(r, c);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Rational head = m(i, c);
            for (std::size_t j = c + 1; j < cols; ++j)
                m(i, j) = (m(i, j) * pivot - head * m(r, j)) / prev;
            m(i, c) = 0;
        }
        prev = pivot;
        pivot_cols.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivot_cols)};
}

inline std::vector<Vector<Rational>> kernel_from_echelon(const Matrix<Rational>& ech,
                                                         const std::vector<std::size_t>& pivot_cols) {
    const std::size_t cols = ech.cols();
    const std::size_t rank = pivot_cols.size();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;

    std::vector<Vector<Rational>> kernel;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t ii = rank; ii-- > 0;) {
            const std::size_t pc = pivot_cols[ii];
            Rational acc(0);
            for (std::size_t j = pc + 1; j < cols; ++j)
                if (!is_zero(v[j])) acc += ech(ii, j) * v[j];
            v[pc] = -acc / ech(ii, pc);
        }
        kernel.push_back(std::move(v));
    }
    return kernel;
}

} // namespace detail

/// Rank and kernel basis of m under the given policy. Floating mode uses an
/// SVD with the sigma_max * max(rows, cols) * rel_epsilon cutoff; exact mode
/// uses fraction-free elimination and is the oracle of record.
template <class T>
RankNullspace<T> rank_nullspace(const Matrix<T>& m, const TolerancePolicy& tol = {}) {
    if (m.rows() == 0 || m.cols() == 0) throw DimensionMismatch("rank_nullspace of empty matrix");
    if (!all_finite(m)) throw NonFiniteEntry("matrix contains NaN or Inf");

    RankNullspace<T> out;
    if constexpr (is_exact_v<T>) {
        auto [ech, pivots] = detail::bareiss_echelon(m);
        out.rank = pivots.size();
        out.kernel = detail::kernel_from_echelon(ech, pivots);
    } else {
        static_cast<void>(tol);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(detail::to_eigen(m), Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double smax = sv.size() > 0 ? sv(0) : 0.0;
        const double cutoff = smax * static_cast<double>(std::max(m.rows(), m.cols())) * tol.rel_epsilon;
        std::size_t rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            out.singular_values.push_back(sv(i));
            if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
        }
        out.rank = rank;
        const auto& V = svd.matrixV();
        for (Eigen::Index c = static_cast<Eigen::Index>(rank); c < V.cols(); ++c) {
            Vector<double> v(m.cols());
            for (std::size_t j = 0; j < m.cols(); ++j) v[j] = V(static_cast<Eigen::Index>(j), c);
            out.kernel.push_back(std::move(v));
        }
    }
    return out;
}

template <class T>
std::size_t rank_of(const Matrix<T>& m, const TolerancePolicy& tol = {}) {
    return rank_nullspace(m, tol).rank;
}

/// Minimum-norm least squares: among all x minimising |m x - rhs| returns the
/// one of smallest Euclidean norm.
template <class T>
LeastSquaresResult<T> least_squares(const Matrix<T>& m, const Vector<T>& rhs,
                                    const TolerancePolicy& tol = {}) {
    if (rhs.size() != m.rows()) throw DimensionMismatch("least_squares rhs length != rows");
    if (!all_finite(m)) throw NonFiniteEntry("matrix contains NaN or Inf");

    LeastSquaresResult<T> out;
    if constexpr (is_exact_v<T>) {
        // Normal equations, solved exactly; then project away the kernel
        // component to obtain the minimum-norm representative.
        const Matrix<T> mt = m.transposed();
        const Matrix<T> gram = mt.multiply(m);
        const Vector<T> grhs = mt.apply(rhs);
        // Particular solution with free variables set to zero, from a joint
        // elimination of [gram | grhs].
        Matrix<T> aug(gram.rows(), gram.cols() + 1);
        for (std::size_t i = 0; i < gram.rows(); ++i) {
            for (std::size_t j = 0; j < gram.cols(); ++j) aug(i, j) = gram(i, j);
            aug(i, gram.cols()) = grhs[i];
        }
        auto [aech, apivots] = detail::bareiss_echelon(aug);
        Vector<T> x(m.cols(), T(0));
        // normal equations are always consistent; a pivot in the rhs column
        // would mean the elimination itself went wrong
        for (std::size_t c : apivots)
            if (c == gram.cols()) throw SingularMap("inconsistent normal equations");
        for (std::size_t ii = apivots.size(); ii-- > 0;) {
            const std::size_t pc = apivots[ii];
            T acc = aech(ii, gram.cols());
            for (std::size_t j = pc + 1; j < gram.cols(); ++j)
                if (!is_zero(x[j])) acc -= aech(ii, j) * x[j];
            x[pc] = acc / aech(ii, pc);
        }
        // Subtract the kernel component (Gram solve on the kernel basis).
        auto kn = rank_nullspace(m, tol);
        if (!kn.kernel.empty()) {
            const std::size_t k = kn.kernel.size();
            Matrix<T> kg(k, k);
            Vector<T> kb(k, T(0));
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) kg(i, j) = dot(kn.kernel[i], kn.kernel[j]);
                kb[i] = dot(kn.kernel[i], x);
            }
            Matrix<T> kaug(k, k + 1);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) kaug(i, j) = kg(i, j);
                kaug(i, k) = kb[i];
            }
            auto [kech, kpiv] = detail::bareiss_echelon(kaug);
            Vector<T> coef(k, T(0));
            for (std::size_t ii = kpiv.size(); ii-- > 0;) {
                const std::size_t pc = kpiv[ii];
                T acc = kech(ii, k);
                for (std::size_t j = pc + 1; j < k; ++j)
                    if (!is_zero(coef[j])) acc -= kech(ii, j) * coef[j];
                coef[pc] = acc / kech(ii, pc);
            }
            for (std::size_t i = 0; i < k; ++i)
                if (!is_zero(coef[i])) x = sub(x, scaled(kn.kernel[i], coef[i]));
        }
        out.solution = std::move(x);
    } else {
        Eigen::MatrixXd A = detail::to_eigen(m);
        Eigen::VectorXd b(rhs.size());
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            if (!std::isfinite(rhs[i])) throw NonFiniteEntry("rhs contains NaN or Inf");
            b(static_cast<Eigen::Index>(i)) = rhs[i];
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(static_cast<double>(std::max(m.rows(), m.cols())) * tol.rel_epsilon);
        Eigen::VectorXd x = svd.solve(b);
        out.solution.resize(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) out.solution[j] = x(static_cast<Eigen::Index>(j));
    }
    const Vector<T> res = sub(m.apply(out.solution), rhs);
    out.residual_sq = norm_sq(res);
    return out;
}

/// Solves a square nonsingular system exactly (rational) or by LU (double).
template <class T>
Vector<T> solve_square(const Matrix<T>& m, const Vector<T>& rhs) {
    if (m.rows() != m.cols() || rhs.size() != m.rows()) {
        throw DimensionMismatch("solve_square needs a square system");
    }
    if constexpr (is_exact_v<T>) {
        Matrix<T> aug(m.rows(), m.cols() + 1);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
            aug(i, m.cols()) = rhs[i];
        }
        auto [ech, pivots] = detail::bareiss_echelon(aug);
        if (pivots.size() != m.rows() || pivots.back() == m.cols())
            throw SingularMap("singular square system");
        Vector<T> x(m.cols(), T(0));
        for (std::size_t ii = pivots.size(); ii-- > 0;) {
            const std::size_t pc = pivots[ii];
            T acc = ech(ii, m.cols());
            for (std::size_t j = pc + 1; j < m.cols(); ++j)
                if (!is_zero(x[j])) acc -= ech(ii, j) * x[j];
            x[pc] = acc / ech(ii, pc);
        }
        return x;
    } else {
        Eigen::MatrixXd A = detail::to_eigen(m);
        Eigen::VectorXd b(rhs.size());
        for (std::size_t i = 0; i < rhs.size(); ++i) b(static_cast<Eigen::Index>(i)) = rhs[i];
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (!lu.isInvertible()) throw SingularMap("singular square system");
        Eigen::VectorXd x = lu.solve(b);
        Vector<T> out(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] = x(static_cast<Eigen::Index>(j));
        return out;
    }
}

template <class T>
T determinant(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
    if constexpr (is_exact_v<T>) {
        // Track row swaps through a signed duplicate of the elimination.
        Matrix<T> w = m;
        const std::size_t n = w.rows();
        Rational prev(1);
        int sign = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t sel = c;
            while (sel < n && is_zero(w(sel, c))) ++sel;
            if (sel == n) return T(0);
            if (sel != c) {
                for (std::size_t j = 0; j < n; ++j) std::swap(w(sel, j), w(c, j));
                sign = -sign;
            }
            const Rational pivot = w(c, c);
            for (std::size_t i = c + 1; i < n; ++i) {
                const Rational head = w(i, c);
                for (std::size_t j = c + 1; j < n; ++j)
                    w(i, j) = (w(i, j) * pivot - head * w(c, j)) / prev;
                w(i, c) = 0;
            }
            prev = pivot;
        }
        return sign > 0 ? T(prev) : T(-prev);
    } else {
        return detail::to_eigen(m).determinant();
    }
}

/// Orthonormal (floating) or row-echelon (exact) basis of the row space.
template <class T>
std::vector<Vector<T>> row_space_basis(const Matrix<T>& m, const TolerancePolicy& tol = {}) {
    if constexpr (is_exact_v<T>) {
        auto [ech, pivots] = detail::bareiss_echelon(m);
        std::vector<Vector<T>> out;
        for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(ech.row(i));
        return out;
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(detail::to_eigen(m), Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double smax = sv.size() > 0 ? sv(0) : 0.0;
        const double cutoff = smax * static_cast<double>(std::max(m.rows(), m.cols())) * tol.rel_epsilon;
        std::vector<Vector<T>> out;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (!(sv(i) > cutoff && sv(i) > 0.0)) continue;
            Vector<double> v(m.cols());
            for (std::size_t j = 0; j < m.cols(); ++j)
                v[j] = svd.matrixV()(static_cast<Eigen::Index>(j), i);
            out.push_back(std::move(v));
        }
        return out;
    }
}

/// Orthogonal projection of v onto span(basis rows); works in both modes.
template <class T>
Vector<T> project_onto_span(const std::vector<Vector<T>>& basis, const Vector<T>& v,
                            const TolerancePolicy& tol = {}) {
    if (basis.empty()) return Vector<T>(v.size(), T(0));
    Matrix<T> bt(v.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < v.size(); ++i) bt(i, j) = basis[j][i];
    auto ls = least_squares(bt, v, tol);
    return bt.apply(ls.solution);
}

} // namespace rigid
