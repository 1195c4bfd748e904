#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "test_groups.hpp"
#include "vkg/unitpc.hpp"

using namespace vkg;
using namespace vkg_test;

namespace {

UnitPc unit_pc_for(const PcPresentation& p) {
    auto t = MulTables::from(build_group_table(p));
    return build_unit_pc(weighted_basis(ideal_power_filtration(t)), t);
}

}  // namespace

TEST_CASE("unit normal form in KC4") {
    auto upc = unit_pc_for(c4());
    REQUIRE(upc.m() == 3);
    // basis is (1+a, (1+a)^2, (1+a)^3) up to the choice inside weight blocks
    CHECK(unit_normal_form(1u, upc) == 0u);

    Alg a = 1u << 1;
    Alg a2 = 1u << 2;
    CHECK(unit_normal_form(a, upc) == 0b001u);   // a = 1 + (1+a)
    CHECK(unit_normal_form(a2, upc) == 0b010u);  // a^2 = 1 + (1+a)^2
    CHECK_THROWS_AS(unit_normal_form(0b0011u, upc), std::invalid_argument);
}

TEST_CASE("word_to_algebra basics") {
    auto upc = unit_pc_for(c4());
    CHECK(word_to_algebra(0u, upc) == 1u);
    for (int i = 0; i < upc.m(); ++i)
        CHECK(word_to_algebra(1u << i, upc) == upc.gen_unit[i]);
    // (1,1,0) evaluates in the algebra and round-trips
    Alg x = word_to_algebra(0b011u, upc);
    CHECK(unit_normal_form(x, upc) == 0b011u);
}

TEST_CASE("V(KC2) is C2") {
    auto upc = unit_pc_for(c2());
    REQUIRE(upc.m() == 1);
    CHECK(upc.pres.power_tail[0] == 0u);  // u1^2 = 1
}

TEST_CASE("V(KC4) is C4 x C2") {
    auto upc = unit_pc_for(c4());
    CHECK(upc.pres.power_tail[0] == 0b010u);  // u1^2 = u2
    CHECK(upc.pres.power_tail[1] == 0u);
    CHECK(upc.pres.power_tail[2] == 0u);
    CHECK(upc.pres.comm_tail[1][0] == 0u);  // abelian
    CHECK(upc.pres.comm_tail[2][0] == 0u);
    CHECK(upc.pres.comm_tail[2][1] == 0u);

    // brute-force oracle over all 8 units: order profile of C4 x C2
    auto table = build_group_table(upc.pres);
    int n2 = 0, n4 = 0;
    for (int x = 1; x < table.order; ++x) {
        int o = element_order(table, x);
        if (o == 2) ++n2;
        if (o == 4) ++n4;
    }
    CHECK(table.order == 8);
    CHECK(n2 == 3);
    CHECK(n4 == 4);
}

TEST_CASE("round trip: exhaustive at |G| <= 8, randomized at 16") {
    for (auto pres : {c2(), c4(), c2xc2(), c8(), d8(), q8()}) {
        auto upc = unit_pc_for(pres);
        for (std::uint32_t c = 0; c < (1u << upc.m()); ++c) {
            Alg u = from_nat_coords(c) ^ 1u;
            CHECK(word_to_algebra(unit_normal_form(u, upc), upc) == u);
        }
    }
    std::mt19937 rng(2024);
    for (auto pres : {d16(), g32_13()}) {
        auto upc = unit_pc_for(pres);
        std::uniform_int_distribution<std::uint32_t> dist(0, (1u << upc.m()) - 1);
        int trials = (upc.m() <= 15) ? 10000 : 2000;
        for (int i = 0; i < trials; ++i) {
            Alg u = from_nat_coords(dist(rng)) ^ 1u;
            CHECK(word_to_algebra(unit_normal_form(u, upc), upc) == u);
        }
    }
}

TEST_CASE("collection of concatenated words matches algebra multiplication") {
    std::mt19937 rng(77);
    for (auto pres : {c8(), d8(), q8(), d16()}) {
        auto upc = unit_pc_for(pres);
        Collector coll(upc.pres);
        std::uniform_int_distribution<std::uint32_t> dist(0, (1u << upc.m()) - 1);
        for (int i = 0; i < 1000; ++i) {
            UnitWord v = dist(rng), w = dist(rng);
            Alg va = word_to_algebra(v, upc);
            Alg wa = word_to_algebra(w, upc);
            CHECK(coll.mul(v, w) == unit_normal_form(multiply(va, wa, upc.tables), upc));
        }
    }
}

TEST_CASE("weight grading of all tails") {
    for (auto pres : {c4(), c8(), d8(), q8(), d16(), g32_13(), g32_14()}) {
        auto upc = unit_pc_for(pres);
        const auto& w = upc.weight;
        for (int i = 0; i < upc.m(); ++i) {
            ExpVec tail = upc.pres.power_tail[i];
            for (int k = 0; k < upc.m(); ++k)
                if (tail >> k & 1u) {
                    CHECK(k > i);
                    CHECK(w[k] >= 2 * w[i]);
                }
            for (int j = i + 1; j < upc.m(); ++j) {
                ExpVec ct = upc.pres.comm_tail[j][i];
                for (int k = 0; k < upc.m(); ++k)
                    if (ct >> k & 1u) {
                        CHECK(k > j);
                        CHECK(w[k] >= w[i] + w[j]);
                    }
            }
        }
    }
}

TEST_CASE("unit presentation defines a group of order 2^(|G|-1) for |G| <= 16") {
    for (auto pres : {c2(), c4(), c8(), d8(), q8(), d16()}) {
        auto upc = unit_pc_for(pres);
        Collector coll(upc.pres);
        const std::uint32_t n = 1u << upc.m();
        if (upc.m() <= 5) {
            auto t = build_group_table(upc.pres);  // full consistency check
            CHECK(t.order == static_cast<int>(n));
        } else {
            // closure of the identity under right multiplication reaches
            // every normal form, and random triples associate
            std::vector<bool> seen(n, false);
            std::vector<ExpVec> frontier{0};
            seen[0] = true;
            std::size_t reached = 1;
            while (!frontier.empty()) {
                ExpVec x = frontier.back();
                frontier.pop_back();
                for (int g = 0; g < upc.m(); ++g) {
                    ExpVec y = coll.mul_gen(x, g);
                    if (!seen[y]) {
                        seen[y] = true;
                        ++reached;
                        frontier.push_back(y);
                    }
                }
            }
            CHECK(reached == n);
            std::mt19937 rng(5);
            std::uniform_int_distribution<std::uint32_t> dist(0, n - 1);
            for (int i = 0; i < 500; ++i) {
                ExpVec x = dist(rng), y = dist(rng), z = dist(rng);
                CHECK(coll.mul(coll.mul(x, y), z) == coll.mul(x, coll.mul(y, z)));
            }
        }
    }
}
