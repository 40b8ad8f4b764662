#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "rigid/exterior.hpp"
#include "rigid/randgen.hpp"

using namespace rigid;
using R = Rational;

namespace {

Vector<R> random_rational_vec(Rng& rng, std::size_t n) {
    Vector<R> v(n);
    for (auto& x : v) x = R(rng.next_int(-9, 9)) / R(1 + rng.next_int(0, 4));
    return v;
}

Vector<double> random_double_vec(Rng& rng, std::size_t n) {
    Vector<double> v(n);
    for (auto& x : v) x = rng.next_unit() * 4.0 - 2.0;
    return v;
}

} // namespace

TEST_CASE("wedge basics") {
    Vector<R> x = {R(1), R(2), R(3)};
    CHECK(wedge(x, x).is_zero_exact());

    Vector<R> e0 = {R(1), R(0), R(0)}, e1 = {R(0), R(1), R(0)};
    auto w = wedge(e0, e1);
    CHECK(w.at(0, 1) == 1);
    CHECK(w.at(0, 2) == 0);
    CHECK(w.at(1, 2) == 0);

    CHECK_THROWS_AS(wedge<R>({R(1)}, {R(1), R(2)}), DimensionMismatch);
}

TEST_CASE("wedge matches the componentwise formula and is antisymmetric") {
    Rng rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.next_int(2, 5));
        const auto x = random_rational_vec(rng, n);
        const auto y = random_rational_vec(rng, n);
        const auto w = wedge(x, y);
        const auto v = wedge(y, x);
        for (std::size_t a = 0; a + 1 < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                CHECK(w.at(a, b) == x[a] * y[b] - x[b] * y[a]);
                CHECK(v.at(a, b) == R(0) - w.at(a, b));
            }
    }
}

TEST_CASE("contract frozen example and annihilation") {
    // d = 1: x = (1, 2), t with c[0][1] = 3 gives alpha = (-6, 3)
    DualBivector<R> t(2);
    t.at(0, 1) = 3;
    const auto alpha = contract<R>({R(1), R(2)}, t);
    CHECK(alpha == Vector<R>{R(-6), R(3)});

    // zero dual bivector drops to the zero covector
    const auto zero = contract<R>({R(1), R(2)}, DualBivector<R>(2));
    CHECK(all_zero(zero));

    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.next_int(2, 5));
        const auto x = random_rational_vec(rng, n);
        DualBivector<R> tau(n);
        for (auto& c : tau.c) c = R(rng.next_int(-7, 7));
        const auto a = contract(x, tau);
        // alpha(x) = pairing(x ^ x, tau) = 0, exactly
        CHECK(dot(a, x) == 0);
        // defining identity alpha(y) = pairing(wedge(x, y), tau)
        const auto y = random_rational_vec(rng, n);
        CHECK(dot(a, y) == pairing(wedge(x, y), tau));
    }
}

TEST_CASE("pairing is bilinear to floating precision") {
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.next_int(2, 5));
        const auto x = random_double_vec(rng, n);
        const auto y = random_double_vec(rng, n);
        const auto z = random_double_vec(rng, n);
        DualBivector<double> tau(n), sigma(n);
        for (auto& c : tau.c) c = rng.next_unit() * 2.0 - 1.0;
        for (auto& c : sigma.c) c = rng.next_unit() * 2.0 - 1.0;
        const double s = rng.next_unit() * 3.0 - 1.5;

        const double lhs = pairing(wedge(add(x, scaled(z, s)), y), tau);
        const double rhs = pairing(wedge(x, y), tau) + s * pairing(wedge(z, y), tau);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        CHECK(std::abs(lhs - rhs) / scale < tolerances::bilinearity_probe);

        DualBivector<double> mix(n);
        for (std::size_t i = 0; i < mix.c.size(); ++i) mix.c[i] = tau.c[i] + s * sigma.c[i];
        const double lhs2 = pairing(wedge(x, y), mix);
        const double rhs2 = pairing(wedge(x, y), tau) + s * pairing(wedge(x, y), sigma);
        const double scale2 = std::max({std::abs(lhs2), std::abs(rhs2), 1.0});
        CHECK(std::abs(lhs2 - rhs2) / scale2 < tolerances::bilinearity_probe);
    }
}

TEST_CASE("decomposability test") {
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto x = random_rational_vec(rng, 4);
        const auto y = random_rational_vec(rng, 4);
        CHECK(is_decomposable_exact(wedge(x, y)));
    }
    Bivector<R> b(4);
    b.at(0, 1) = 1;
    b.at(2, 3) = 1;
    CHECK_FALSE(is_decomposable_exact(b));
}
