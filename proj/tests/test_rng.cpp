#include <algorithm>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "amsum/errors.hpp"
#include "amsum/rng.hpp"

using amsum::Rng;

TEST_SUITE_BEGIN("rng");

TEST_CASE("same seed reproduces every draw kind") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    for (int i = 0; i < 100; ++i) CHECK(a.uniform01() == b.uniform01());
    for (int i = 0; i < 100; ++i) CHECK(a.below(17) == b.below(17));
    std::vector<double> w{0.2, 0.5, 0.3};
    for (int i = 0; i < 100; ++i) CHECK(a.categorical(w) == b.categorical(w));
    std::vector<int> va(20), vb(20);
    std::iota(va.begin(), va.end(), 0);
    std::iota(vb.begin(), vb.end(), 0);
    a.shuffle(va);
    b.shuffle(vb);
    CHECK(va == vb);

    Rng c(43);
    bool differs = false;
    Rng a2(42);
    for (int i = 0; i < 10; ++i) differs |= (a2.next_u64() != c.next_u64());
    CHECK(differs);
}

TEST_CASE("uniform01 stays in the half-open unit interval") {
    Rng rng(1);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform respects bounds") {
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform(-0.1, 0.1);
        CHECK(u >= -0.1);
        CHECK(u < 0.1);
    }
}

TEST_CASE("below covers the range roughly evenly") {
    Rng rng(3);
    std::vector<int> hits(8, 0);
    const int draws = 80000;
    for (int i = 0; i < draws; ++i) ++hits[rng.below(8)];
    for (int h : hits) {
        CHECK(h > draws / 8 * 0.95);
        CHECK(h < draws / 8 * 1.05);
    }
    CHECK_THROWS_AS(rng.below(0), amsum::ArgumentError);
}

TEST_CASE("categorical matches weights") {
    Rng rng(4);
    std::vector<double> w{1.0, 0.0, 3.0};
    std::vector<int> hits(3, 0);
    const int draws = 40000;
    for (int i = 0; i < draws; ++i) ++hits[rng.categorical(w)];
    CHECK(hits[1] == 0);
    CHECK(hits[0] + hits[2] == draws);
    const double frac0 = static_cast<double>(hits[0]) / draws;
    CHECK(frac0 > 0.23);
    CHECK(frac0 < 0.27);

    CHECK_THROWS_AS(rng.categorical({}), amsum::ArgumentError);
    CHECK_THROWS_AS(rng.categorical({0.0, 0.0}), amsum::ArgumentError);
    CHECK_THROWS_AS(rng.categorical({1.0, -0.5}), amsum::ArgumentError);
}

TEST_CASE("shuffle permutes") {
    Rng rng(5);
    std::vector<int> v(50);
    std::iota(v.begin(), v.end(), 0);
    std::vector<int> orig = v;
    rng.shuffle(v);
    CHECK(v != orig);  // 50! makes a fixed-point astronomically unlikely
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == orig);
}

TEST_SUITE_END();
