#include <catch2/catch_amalgamated.hpp>

#include "stn/grid_ops.hpp"
#include "support.hpp"

using namespace stn;

TEST_CASE("gradient of a constant image is zero") {
    Image c(5, 7, 42.0);
    VectorField g = gradient(c);
    CHECK(sup_norm(g.g1) == 0.0);
    CHECK(sup_norm(g.g2) == 0.0);
}

TEST_CASE("gradient matches the forward-difference formula on a 2x2 image") {
    // rows x cols: [[0,1],[0,1]]
    Image u(2, 2);
    u.at(0, 0) = 0; u.at(0, 1) = 1;
    u.at(1, 0) = 0; u.at(1, 1) = 1;
    VectorField g = gradient(u);
    CHECK(g.g1.at(0, 0) == 0.0);
    CHECK(g.g1.at(0, 1) == 0.0);
    CHECK(g.g1.at(1, 0) == 0.0);
    CHECK(g.g1.at(1, 1) == 0.0);
    CHECK(g.g2.at(0, 0) == 1.0);
    CHECK(g.g2.at(0, 1) == 0.0);
    CHECK(g.g2.at(1, 0) == 1.0);
    CHECK(g.g2.at(1, 1) == 0.0);
}

TEST_CASE("gradient rejects degenerate dimensions") {
    Image row(8, 1, 1.0);
    CHECK_THROWS_AS(gradient(row), InvalidInput);
    Image col(1, 8, 1.0);
    CHECK_THROWS_AS(gradient(col), InvalidInput);
}

TEST_CASE("divergence of the zero field is zero") {
    VectorField p(6, 4);
    Image d = divergence(p);
    CHECK(sup_norm(d) == 0.0);
}

TEST_CASE("divergence rejects mismatched components") {
    VectorField p;
    p.g1 = Image(4, 4);
    p.g2 = Image(5, 4);
    CHECK_THROWS_AS(divergence(p), InvalidInput);
}

TEST_CASE("divergence(gradient(constant)) is zero") {
    Image c(9, 9, -3.5);
    Image lap = divergence(gradient(c));
    CHECK(sup_norm(lap) == 0.0);
}

TEST_CASE("gradient and divergence are negative adjoints") {
    // <grad u, p> + <u, div p> = 0 on square and odd non-square grids.
    for (auto [w, h] : {std::pair{16, 16}, std::pair{17, 33}}) {
        for (int trial = 0; trial < 100; ++trial) {
            Image u = testsup::random_image(w, h, 1000 + trial);
            VectorField p = testsup::random_field(w, h, 2000 + trial);
            const double lhs = dot(gradient(u), p);
            const double rhs = dot(u, divergence(p));
            REQUIRE(std::abs(lhs + rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
        }
    }
}

TEST_CASE("adjointness on a 32x32 random pair") {
    Image u = testsup::random_image(32, 32, 7);
    VectorField p = testsup::random_field(32, 32, 8);
    CHECK(std::abs(dot(gradient(u), p) + dot(u, divergence(p))) < 1e-10);
}

TEST_CASE("total variation of a constant is zero") {
    CHECK(total_variation(Image(4, 4, 9.0)) == 0.0);
}

TEST_CASE("total variation of the 2x2 step image is 2") {
    Image u(2, 2);
    u.at(0, 0) = 0; u.at(0, 1) = 1;
    u.at(1, 0) = 0; u.at(1, 1) = 1;
    CHECK(total_variation(u) == Catch::Approx(2.0).margin(1e-15));
}

TEST_CASE("total variation is absolutely homogeneous") {
    Image u = testsup::random_image(12, 10, 77);
    const double alpha = -3.0;
    CHECK(total_variation(scale(u, alpha)) ==
          Catch::Approx(std::abs(alpha) * total_variation(u)).epsilon(1e-9));
}

TEST_CASE("total variation is translation invariant") {
    Image u = testsup::random_image(12, 10, 78);
    Image shifted = u;
    for (double& x : shifted.data) x += 17.25;
    CHECK(total_variation(shifted) == total_variation(u));
}

TEST_CASE("l2_distance basics") {
    Image a(2, 2, 3.0), b(2, 2, 0.0);
    CHECK(l2_distance(a, a) == 0.0);
    CHECK(l2_distance(a, b) == Catch::Approx(6.0).margin(1e-15));
    CHECK(l2_distance(a, b) == l2_distance(b, a));
    Image c(3, 2);
    CHECK_THROWS_AS(l2_distance(a, c), InvalidInput);
}

TEST_CASE("l2_distance satisfies the triangle inequality") {
    for (int trial = 0; trial < 20; ++trial) {
        Image a = testsup::random_image(8, 8, 300 + trial);
        Image b = testsup::random_image(8, 8, 400 + trial);
        Image c = testsup::random_image(8, 8, 500 + trial);
        CHECK(l2_distance(a, c) <= l2_distance(a, b) + l2_distance(b, c) + 1e-12);
    }
}

TEST_CASE("operations are deterministic") {
    Image u = testsup::random_image(15, 11, 99);
    VectorField g1 = gradient(u);
    VectorField g2 = gradient(u);
    CHECK(g1.g1.data == g2.g1.data);
    CHECK(g1.g2.data == g2.g2.data);
    CHECK(total_variation(u) == total_variation(u));
}
