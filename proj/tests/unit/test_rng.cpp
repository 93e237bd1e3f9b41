#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "survboot/rng.hpp"

using survboot::RngStream;

TEST_CASE("identical keys replay the same sequence") {
    RngStream a(12345, 7);
    RngStream b(12345, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream indices give distinct sequences") {
    RngStream a(12345, 0);
    RngStream b(12345, 1);
    int same = 0;
    for (int i = 0; i < 100; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("child derivation is deterministic and does not advance parent") {
    RngStream parent(9, 3);
    const std::uint64_t before = RngStream(9, 3).next_u64();
    RngStream c1 = parent.child(5);
    RngStream c2 = parent.child(5);
    CHECK(c1.next_u64() == c2.next_u64());
    CHECK(parent.next_u64() == before);
    RngStream other = parent.child(6);
    CHECK(RngStream(9, 3).child(5).next_u64() != other.next_u64());
}

TEST_CASE("uniform lies in [0,1) and uniform_open in (0,1)") {
    RngStream rng(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = rng.uniform_open();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("below stays in range and covers small supports") {
    RngStream rng(2, 0);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t k = rng.below(5);
        CHECK(k < 5);
        seen.insert(k);
    }
    CHECK(seen.size() == 5);
}

TEST_CASE("normal draws have roughly standard moments") {
    RngStream rng(3, 0);
    const int n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sumsq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sumsq / n - 1.0) < 0.03);
}

TEST_CASE("weibull shape 1 is exponential with the given scale") {
    RngStream rng(4, 0);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = rng.weibull(1.0, 2.0);
        CHECK(t >= 0.0);
        sum += t;
    }
    CHECK(sum / n == doctest::Approx(2.0).epsilon(0.02));
}
