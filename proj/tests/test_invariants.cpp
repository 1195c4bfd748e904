#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vkg/gf2.hpp"
#include "test_groups.hpp"
#include "vkg/invariants.hpp"
#include "vkg/unitpc.hpp"

using namespace vkg;
using namespace vkg_test;

namespace {

CatalogueEntry entry_for(const PcPresentation& p, int id = 1) {
    CatalogueEntry e;
    e.presentation = p;
    e.table = build_group_table(p);
    e.order = e.table.order;
    e.catalogue_id = id;
    return e;
}

struct BruteCenter {
    int order_log2 = 0;
    int exponent = 1;
    std::int64_t involutions = 0;
};

// Enumerate every normalized unit, test centrality against the PC
// generators of V, and measure orders directly in the algebra.
BruteCenter brute_center(const MulTables& t) {
    auto wb = weighted_basis(ideal_power_filtration(t));
    auto upc = build_unit_pc(wb, t);
    BruteCenter out;
    std::int64_t central = 0;
    for (std::uint32_t c = 0; c < (1u << wb.m); ++c) {
        Alg u = from_nat_coords(c) ^ 1u;
        bool is_central = true;
        for (int i = 0; i < wb.m && is_central; ++i)
            is_central = multiply(u, upc.gen_unit[i], t) == multiply(upc.gen_unit[i], u, t);
        if (!is_central) continue;
        ++central;
        int ord = 1;
        Alg p = u;
        while (p != 1u) {
            p = multiply(p, p, t);
            ord *= 2;
        }
        out.exponent = std::max(out.exponent, ord);
        if (ord == 2) ++out.involutions;
    }
    while ((std::int64_t(1) << out.order_log2) < central) ++out.order_log2;
    REQUIRE((std::int64_t(1) << out.order_log2) == central);  // Z(V) is a 2-group
    return out;
}

}  // namespace

TEST_CASE("center order is the class count minus one") {
    auto t8 = build_group_table(d8());
    auto cb = center_basis(conjugacy_classes(t8));
    CHECK(center_order_log2(cb) == 4);

    // abelian G of order 8: V is abelian, |Z(V)| = |V|
    auto tc8 = build_group_table(c8());
    CHECK(center_order_log2(center_basis(conjugacy_classes(tc8))) == 7);
}

TEST_CASE("center squaring map on small algebras") {
    {
        auto table = build_group_table(c2());
        auto t = MulTables::from(table);
        auto classes = conjugacy_classes(table);
        auto s = center_squaring_map(center_basis(classes), t, classes);
        REQUIRE(s.dim == 1);
        CHECK(s.rows[0] == 0u);      // (1+g)^2 = 0
        CHECK(center_exponent(s) == 2);
        CHECK(center_involutions(s) == 1);
    }
    {
        auto table = build_group_table(c4());
        auto t = MulTables::from(table);
        auto classes = conjugacy_classes(table);
        auto s = center_squaring_map(center_basis(classes), t, classes);
        REQUIRE(s.dim == 3);
        int rank = 0;
        for (auto r : s.rows) rank += (r != 0);  // rank 1: one nonzero row
        CHECK(gf2::rank(s.rows) == 1);
        CHECK(center_involutions(s) == 3);  // kernel of size 4
        CHECK(center_exponent(s) == 4);     // V(KC4) = C4 x C2
        (void)rank;
    }
}

TEST_CASE("center invariants match brute force for |G| <= 16") {
    for (auto pres : {c2(), c4(), c2xc2(), c8(), d8(), q8(), d16(), g32_13()}) {
        auto table = build_group_table(pres);
        if (table.order > 16) continue;
        auto t = MulTables::from(table);
        auto classes = conjugacy_classes(table);
        auto cb = center_basis(classes);
        auto s = center_squaring_map(cb, t, classes);

        auto brute = brute_center(t);
        CHECK(center_order_log2(cb) == brute.order_log2);
        CHECK(center_exponent(s) == brute.exponent);
        CHECK(center_involutions(s) == brute.involutions);
    }
}

TEST_CASE("squaring map is nilpotent") {
    for (auto pres : {c8(), d8(), q8(), d16(), g32_13(), g32_14()}) {
        auto table = build_group_table(pres);
        auto t = MulTables::from(table);
        auto classes = conjugacy_classes(table);
        auto s = center_squaring_map(center_basis(classes), t, classes);
        CHECK_NOTHROW(center_exponent(s));  // throws if not nilpotent
    }
}

TEST_CASE("compute_record: tiers fill the requested fields") {
    auto e = entry_for(d8());
    auto rec = compute_record(e, kTier1 | kTier2 | kTier3);
    CHECK(rec.v_order_log2 == 7);
    CHECK(rec.center_order_log2 == 4);
    CHECK(rec.frattini_order_log2 >= 0);
    CHECK(rec.center_exponent > 0);
    CHECK(rec.center_involutions >= 0);
    CHECK(rec.p_class >= 1);
    CHECK(rec.involutions == oracle_count_involutions(MulTables::from(e.table)));
    CHECK(rec.tier_mask == (kTier1 | kTier2 | kTier3));
    CHECK(rec.timings_ms.size() >= 5);

    auto rec1 = compute_record(e, kTier1);
    CHECK(rec1.has(kTier1));
    CHECK_FALSE(rec1.has(kTier2));
    CHECK(rec1.involutions == -1);
}

TEST_CASE("compute_record: trivial group C2") {
    auto e = entry_for(c2());
    auto rec = compute_record(e, kTier1 | kTier2 | kTier3);
    CHECK(rec.v_order_log2 == 1);
    CHECK(rec.center_order_log2 == 1);
    CHECK(rec.frattini_order_log2 == 0);
    CHECK(rec.center_exponent == 2);
    CHECK(rec.center_involutions == 1);
    CHECK(rec.p_class == 1);
    CHECK(rec.involutions == 1);
}
