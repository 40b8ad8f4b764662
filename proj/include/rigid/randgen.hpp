#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <utility>

#include "rigid/framework.hpp"
#include "rigid/projective.hpp"

namespace rigid {

/// Deterministic RNG wrapper. Sampling avoids std distributions, whose
/// outputs differ between standard library implementations; reports must be
/// reproducible from the seed alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    long next_int(long lo, long hi) { // inclusive bounds
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double next_unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }

private:
    std::mt19937_64 eng_;
};

/// Mixes a base seed with a trial index so trials are independently seeded
/// yet reproducible.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL + index * 0xbf58476d1ce4e5b9ULL);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Random connected Euclidean framework with integer coordinates in
/// [-5, 5]^2 or [-3, 3]^3: a random spanning tree plus extra edges, edge
/// count anywhere between tree size and complete. Distinct vertex positions
/// rule out coincident edge endpoints. Integer data keeps the exact
/// pipeline applicable.
inline Framework<Rational> random_framework(Rng& rng, int d, bool require_full_span = true) {
    if (d != 2 && d != 3) throw InvalidParameters("random frameworks support d = 2 or 3");
    const long box = d == 2 ? 5 : 3;
    for (;;) {
        const int n = static_cast<int>(rng.next_int(4, d == 2 ? 8 : 7));
        Framework<Rational> fw;
        fw.dim = d;
        fw.geometry = Geometry::euclidean;
        std::set<std::vector<long>> seen;
        while (static_cast<int>(fw.vertices.size()) < n) {
            std::vector<long> coords(d);
            for (int a = 0; a < d; ++a) coords[a] = rng.next_int(-box, box);
            if (!seen.insert(coords).second) continue;
            Vector<Rational> v(d);
            for (int a = 0; a < d; ++a) v[a] = Rational(coords[a]);
            fw.vertices.push_back(std::move(v));
        }
        std::set<std::pair<int, int>> edges;
        for (int k = 1; k < n; ++k) {
            const int j = static_cast<int>(rng.next_int(0, k - 1));
            edges.insert(std::minmax(j, k));
        }
        const long complete = static_cast<long>(n) * (n - 1) / 2;
        const long target = rng.next_int(n - 1, complete);
        while (static_cast<long>(edges.size()) < target) {
            const int i = static_cast<int>(rng.next_int(0, n - 1));
            const int j = static_cast<int>(rng.next_int(0, n - 1));
            if (i == j) continue;
            edges.insert(std::minmax(i, j));
        }
        fw.edges.assign(edges.begin(), edges.end());
        fw.validate();
        if (require_full_span &&
            affine_span_dim(fw, TolerancePolicy::exact()) < static_cast<std::size_t>(d))
            continue;
        return fw;
    }
}

/// Identity plus an integer perturbation, nonsingular, with every framework
/// vertex kept at |h_L| > 0.1 (or the map affine). Integer entries make the
/// determinant an integer, so nonsingular already means |det| >= 1.
inline Matrix<Rational> random_projective_matrix(Rng& rng, const Framework<Rational>& fw,
                                                 bool require_nonaffine = true) {
    const int n = fw.dim + 1;
    for (;;) {
        Matrix<Rational> m = Matrix<Rational>::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) += Rational(rng.next_int(-2, 2));
        if (is_zero(determinant(m))) continue;
        Vector<Rational> grad(fw.dim);
        for (int a = 0; a < fw.dim; ++a) grad[a] = m(0, a + 1);
        const bool affine = all_zero(grad);
        if (affine) {
            if (require_nonaffine) continue;
            return m;
        }
        const double gn = std::sqrt(to_double(norm_sq(grad)));
        bool ok = true;
        for (const auto& p : fw.vertices) {
            Rational ell = m(0, 0);
            for (int a = 0; a < fw.dim; ++a) ell += m(0, a + 1) * p[a];
            if (std::abs(to_double(ell)) / gn <= 0.1) {
                ok = false;
                break;
            }
        }
        if (ok) return m;
    }
}

/// Nonsingular integer affine map x -> A x + b.
inline std::pair<Matrix<Rational>, Vector<Rational>> random_affine_map(Rng& rng, int d) {
    for (;;) {
        Matrix<Rational> a = Matrix<Rational>::identity(d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) a(i, j) += Rational(rng.next_int(-2, 2));
        if (is_zero(determinant(a))) continue;
        Vector<Rational> b(d);
        for (int i = 0; i < d; ++i) b[i] = Rational(rng.next_int(-3, 3));
        return {std::move(a), std::move(b)};
    }
}

template <class T>
Framework<T> apply_affine(const Matrix<T>& a, const Vector<T>& b, const Framework<T>& fw) {
    if (fw.geometry != Geometry::euclidean)
        throw GeometryMismatch("affine images are taken of Euclidean frameworks");
    Framework<T> out = fw;
    for (auto& p : out.vertices) p = add(a.apply(p), b);
    out.validate();
    return out;
}

inline VectorField<Rational> random_field(Rng& rng, std::size_t n, int d) {
    VectorField<Rational> f(n, Vector<Rational>(d, Rational(0)));
    for (auto& v : f)
        for (int a = 0; a < d; ++a) v[a] = Rational(rng.next_int(-4, 4));
    return f;
}

} // namespace rigid
