#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpg/rational.hpp"

#include <random>

using namespace mpg;

TEST_CASE("rationals are canonical and exact") {
    Rat a(-4, 8);
    CHECK(rat_num(a) == -1);
    CHECK(rat_den(a) == 2);

    // (a/b + c/d) * bd = ad + cb as integers, for random operands.
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
    for (int i = 0; i < 500; ++i) {
        Int p = num(rng), q = den(rng), r = num(rng), s = den(rng);
        Rat sum = Rat(p, q) + Rat(r, s);
        CHECK(sum * Rat(q * s) == Rat(p * s + r * q));
    }
}

TEST_CASE("parse_rat accepts p and p/q, rejects junk") {
    CHECK(*parse_rat("3") == Rat(3));
    CHECK(*parse_rat("-7/14") == Rat(-1, 2));
    CHECK(*parse_rat("0") == Rat(0));
    CHECK(!parse_rat("1/0"));
    CHECK(!parse_rat(""));
    CHECK(!parse_rat("-"));
    CHECK(!parse_rat("1/-2"));
    CHECK(!parse_rat("2.5"));
    CHECK(!parse_rat("+3"));
    CHECK(!parse_rat("a/2"));
}

TEST_CASE("format_rat is canonical") {
    CHECK(format_rat(Rat(6, 4)) == "3/2");
    CHECK(format_rat(Rat(-6, 3)) == "-2");
    CHECK(format_rat(Rat(0)) == "0");
}

TEST_CASE("floor and ceil behave on negatives") {
    CHECK(floor_rat(Rat(-1, 2)) == -1);
    CHECK(ceil_rat(Rat(-1, 2)) == 0);
    CHECK(floor_rat(Rat(5, 2)) == 2);
    CHECK(ceil_rat(Rat(5, 2)) == 3);
    CHECK(floor_rat(Rat(4)) == 4);
    CHECK(ceil_rat(Rat(4)) == 4);
}

namespace {

// Brute-force best approximations over every p/q with q <= bound.
std::pair<Rat, Rat> neighbors_brute(const Rat& x, int bound) {
    bool lo_set = false, hi_set = false;
    Rat lo, hi;
    for (int q = 1; q <= bound; ++q) {
        Int lo_p = floor_rat(x) * q - 1, hi_p = ceil_rat(x) * q + 1;
        for (Int p = lo_p; p <= hi_p; ++p) {
            Rat cand(p, q);
            if (cand <= x && (!lo_set || cand > lo)) {
                lo = cand;
                lo_set = true;
            }
            if (cand >= x && (!hi_set || cand < hi)) {
                hi = cand;
                hi_set = true;
            }
        }
    }
    return {lo, hi};
}

}  // namespace

TEST_CASE("bounded-denominator neighbors match brute force") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> num(-400, 400), den(1, 400), bound(1, 9);
    for (int i = 0; i < 400; ++i) {
        Rat x(num(rng), den(rng));
        int b = bound(rng);
        auto [lo, hi] = bounded_den_neighbors(x, b);
        auto [blo, bhi] = neighbors_brute(x, b);
        CHECK(lo == blo);
        CHECK(hi == bhi);
        CHECK(rat_den(lo) <= b);
        CHECK(rat_den(hi) <= b);
    }
}

TEST_CASE("neighbors of a representable value collapse to it") {
    auto [lo, hi] = bounded_den_neighbors(Rat(3, 4), 8);
    CHECK(lo == Rat(3, 4));
    CHECK(hi == Rat(3, 4));
}
