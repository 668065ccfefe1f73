#include <doctest.h>

#include <cmath>
#include <set>

#include "delib/rng.hpp"

using namespace delib;

TEST_CASE("streams replay from their seed") {
    Rng a(123), b(123), c(124);
    bool same = true, differ = false;
    for (int i = 0; i < 64; ++i) {
        const auto x = a.next();
        same = same && x == b.next();
        differ = differ || x != c.next();
    }
    CHECK(same);
    CHECK(differ);
}

TEST_CASE("children are independent of parent consumption") {
    Rng parent(9);
    const Rng early = parent.child(3);
    parent.next();
    parent.next();
    const Rng late = parent.child(3);
    CHECK(early.seed() == late.seed());
    CHECK(parent.child(2).seed() != parent.child(3).seed());
    CHECK(parent.child("profile").seed() == parent.child("profile").seed());
    CHECK(parent.child("profile").seed() != parent.child("replica").seed());
}

TEST_CASE("bounded draws are unbiased enough and in range") {
    Rng rng(77);
    int counts[5] = {0, 0, 0, 0, 0};
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const auto v = rng.bounded(5);
        REQUIRE(v < 5);
        ++counts[v];
    }
    for (int c : counts) CHECK(std::abs(c - draws / 5) < 600); // ~4.7 sigma

    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}
