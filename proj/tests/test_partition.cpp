#include <catch2/catch_amalgamated.hpp>

#include "stn/partition.hpp"
#include "support.hpp"

using namespace stn;

TEST_CASE("local variance of the zero image is zero everywhere") {
    Image z(9, 7, 0.0);
    CHECK(sup_norm(local_variance(z, 3)) == 0.0);
}

TEST_CASE("local variance of a nonzero constant vanishes away from the border") {
    // Border windows see the implicit zeros outside the image, so only
    // interior pixels are guaranteed a zero reading.
    Image c = testsup::constant_image(9, 9, 7.0);
    Image lv = local_variance(c, 3);
    for (int i = 1; i < 8; ++i)
        for (int j = 1; j < 8; ++j)
            CHECK(std::abs(lv.at(i, j)) <= 1e-12);
}

TEST_CASE("a lone spike in a zero neighborhood reads 8 at the spike") {
    Image v(5, 5, 0.0);
    v.at(2, 2) = 9.0;
    Image lv = local_variance(v, 3);
    CHECK(lv.at(2, 2) == 81.0 / 9.0 - 81.0 / 81.0);
}

TEST_CASE("window size must be odd and at least 3") {
    Image v = testsup::random_image(8, 8, 1);
    CHECK_THROWS_AS(local_variance(v, 2), InvalidParameter);
    CHECK_THROWS_AS(local_variance(v, 1), InvalidParameter);
    CHECK_THROWS_AS(local_variance(v, -3), InvalidParameter);
}

TEST_CASE("local variance is never meaningfully negative") {
    Image v = testsup::random_image(32, 32, 2, -50.0, 50.0);
    Image lv = local_variance(v, 5);
    for (double x : lv.data) CHECK(x >= -1e-12);
}

TEST_CASE("local variance matches a two-pass oracle") {
    Image v = testsup::random_image(32, 32, 3, -10.0, 10.0);
    const int L = 7, r = L / 2;
    Image lv = local_variance(v, L);
    for (int i = 0; i < 32; ++i)
        for (int j = 0; j < 32; ++j) {
            // Zero-padded window of exactly L*L entries: mean first, squared
            // deviations second.
            double mean = 0.0;
            for (int a = i - r; a <= i + r; ++a)
                for (int b = j - r; b <= j + r; ++b)
                    if (a >= 0 && a < 32 && b >= 0 && b < 32) mean += v.at(a, b);
            mean /= double(L) * L;
            double var = 0.0;
            for (int a = i - r; a <= i + r; ++a)
                for (int b = j - r; b <= j + r; ++b) {
                    const double x = (a >= 0 && a < 32 && b >= 0 && b < 32)
                                         ? v.at(a, b) : 0.0;
                    var += (x - mean) * (x - mean);
                }
            var /= double(L) * L;
            CHECK(lv.at(i, j) == Catch::Approx(var).margin(1e-9));
        }
}

TEST_CASE("normalization maps the extremes onto the floor and its mirror") {
    Image raw(2, 2, 0.0);
    raw.at(0, 1) = 8.0;
    raw.at(1, 0) = 8.0;
    PartitionField nu = normalize_partition(raw, 0.01);
    CHECK(nu.values.at(0, 0) == 0.01);
    CHECK(nu.values.at(0, 1) == 0.99);
}

TEST_CASE("normalizing a constant yields the noncommittal 0.5") {
    PartitionField nu = normalize_partition(testsup::constant_image(6, 6, 123.0));
    for (double x : nu.values.data) CHECK(x == 0.5);
}

TEST_CASE("normalization attains its endpoints and stays in the open interval") {
    Image raw = testsup::random_image(16, 16, 4, -3.0, 12.0);
    PartitionField nu = normalize_partition(raw, 0.01);
    double lo = 1.0, hi = 0.0;
    for (double x : nu.values.data) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        CHECK(x > 0.0);
        CHECK(x < 1.0);
    }
    CHECK(lo == Catch::Approx(0.01).margin(1e-15));
    CHECK(hi == Catch::Approx(0.99).margin(1e-15));
}

TEST_CASE("normalization is monotone") {
    Image raw = testsup::random_image(12, 12, 5);
    PartitionField nu = normalize_partition(raw);
    for (std::size_t a = 0; a < raw.data.size(); ++a)
        for (std::size_t b = a + 1; b < raw.data.size(); ++b)
            if (raw.data[a] <= raw.data[b])
                CHECK(nu.values.data[a] <= nu.values.data[b]);
}

TEST_CASE("normalization validates its inputs") {
    Image raw = testsup::random_image(4, 4, 6);
    CHECK_THROWS_AS(normalize_partition(raw, 0.0), InvalidParameter);
    CHECK_THROWS_AS(normalize_partition(raw, 0.5), InvalidParameter);
    Image bad = raw;
    bad.at(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(normalize_partition(bad), InvalidInput);
}

TEST_CASE("partition of a constant image is indifferent everywhere") {
    Image c = testsup::constant_image(16, 16, 80.0);
    auto [nu1, nu2] = compute_partition(c, 50.0, 1000.0, 7);
    for (double x : nu1.values.data) CHECK(x == 0.5);
    for (double x : nu2.values.data) CHECK(x == 0.5);
}

TEST_CASE("the two partition fields sum to one bit-exactly") {
    Image f = testsup::random_image(24, 24, 7);
    auto [nu1, nu2] = compute_partition(f, 30.0, 500.0, 5);
    for (std::size_t k = 0; k < nu1.values.data.size(); ++k)
        CHECK(nu1.values.data[k] + nu2.values.data[k] == 1.0);
}

TEST_CASE("textured regions score higher than flat ones") {
    // Left half flat, right half striped.
    Image f(64, 64, 100.0);
    for (int i = 0; i < 64; ++i)
        for (int j = 32; j < 64; ++j)
            f.at(i, j) += 40.0 * std::cos(2.0 * 3.14159265358979 * 0.25 * j);
    auto [nu1, nu2] = compute_partition(f, 50.0, 1000.0, 7);
    double flat = 0.0, textured = 0.0;
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 32; ++j) {
            flat += nu1.values.at(i, j);
            textured += nu1.values.at(i, j + 32);
        }
    CHECK(textured / (64 * 32) > flat / (64 * 32));
}

TEST_CASE("pyramid of a constant field stays constant") {
    PartitionField nu{testsup::constant_image(16, 16, 0.5)};
    PartitionPyramid pyr = pyramidalize(nu, 3);
    REQUIRE(pyr.grids.size() == 3);
    for (const Image& g : pyr.grids)
        for (double x : g.data) CHECK(x == 0.5);
}

TEST_CASE("block means collapse a 4x4 field as expected") {
    Image v(4, 4, 0.1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            v.at(i, j) = 0.9;
    PartitionPyramid pyr = pyramidalize(PartitionField{v}, 1);
    REQUIRE(pyr.grids[0].width == 2);
    CHECK(pyr.grids[0].at(0, 0) == 0.9);
    CHECK(pyr.grids[0].at(0, 1) == 0.1);
    CHECK(pyr.grids[0].at(1, 0) == 0.1);
    CHECK(pyr.grids[0].at(1, 1) == 0.1);
}

TEST_CASE("pyramid preserves the global mean on even dimensions") {
    PartitionField nu = normalize_partition(testsup::random_image(32, 32, 8));
    const double m0 = testsup::mean_of(nu.values);
    PartitionPyramid pyr = pyramidalize(nu, 3);
    for (const Image& g : pyr.grids)
        CHECK(testsup::mean_of(g) == Catch::Approx(m0).margin(1e-12));
}

TEST_CASE("pyramid entries stay strictly inside the unit interval") {
    PartitionField nu = normalize_partition(testsup::random_image(24, 24, 9));
    PartitionPyramid pyr = pyramidalize(nu, 2);
    for (const Image& g : pyr.grids)
        for (double x : g.data) {
            CHECK(x > 0.0);
            CHECK(x < 1.0);
        }
}

TEST_CASE("pyramid handles odd dimensions by ceil-halving") {
    PartitionField nu{testsup::constant_image(5, 5, 0.3)};
    PartitionPyramid pyr = pyramidalize(nu, 2);
    REQUIRE(pyr.grids[0].width == 3);
    REQUIRE(pyr.grids[0].height == 3);
    REQUIRE(pyr.grids[1].width == 2);
    for (const Image& g : pyr.grids)
        for (double x : g.data) CHECK(x == 0.3);
}

TEST_CASE("pyramid depth is bounded by the field size") {
    PartitionField nu{testsup::constant_image(4, 4, 0.5)};
    CHECK_NOTHROW(pyramidalize(nu, 2));
    CHECK_THROWS_AS(pyramidalize(nu, 3), InvalidParameter);
    CHECK_THROWS_AS(pyramidalize(nu, 0), InvalidParameter);
}
