#include <bit>
#include <set>
#include <vector>

#include "doctest.h"
#include "test_groups.hpp"
#include "vkg/subgroups.hpp"
#include "vkg/unitpc.hpp"

using namespace vkg;
using namespace vkg_test;

namespace {

UnitPc unit_pc_for(const PcPresentation& p) {
    auto t = MulTables::from(build_group_table(p));
    return build_unit_pc(weighted_basis(ideal_power_filtration(t)), t);
}

// Brute-force Frattini order in V(KG): close the squares and the
// commutators-with-generators of all 2^(|G|-1) units under multiplication.
std::size_t frattini_order_brute(const Collector& coll) {
    const std::uint32_t n = 1u << coll.ngens();
    std::set<ExpVec> gens;
    for (ExpVec v = 0; v < n; ++v) {
        gens.insert(coll.mul(v, v));
        for (int k = 0; k < coll.ngens(); ++k) gens.insert(coll.commutator(v, 1u << k));
    }
    std::set<ExpVec> sub{0};
    sub.insert(gens.begin(), gens.end());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<ExpVec> cur(sub.begin(), sub.end());
        for (ExpVec a : cur)
            for (ExpVec b : cur)
                if (sub.insert(coll.mul(a, b)).second) grew = true;
    }
    return sub.size();
}

}  // namespace

TEST_CASE("sift basics in V(KC4)") {
    auto upc = unit_pc_for(c4());
    Collector coll(upc.pres);
    // sequence containing only u1 (u1^2 = u2)
    InducedSequence seq;
    seq.rows = {0b001u};
    seq.row_inv = {coll.inverse(0b001u)};
    seq.lead_mask = 0b001u;

    CHECK(sift(seq, 0u, coll) == 0u);      // identity sifts to zero
    CHECK(sift(seq, 0b001u, coll) == 0u);  // an existing row sifts to zero
    // u2 = u1^2 is *not* in the partial sequence <u1 as single row>; the
    // worklist algorithm is what closes the subgroup
    CHECK(sift(seq, 0b010u, coll) == 0b010u);
}

TEST_CASE("induced sequences in V(KC4)") {
    auto upc = unit_pc_for(c4());
    Collector coll(upc.pres);

    CHECK(induced_sequence(std::vector<ExpVec>{}, coll, false).order_log2() == 0);

    std::vector<ExpVec> all{0b001u, 0b010u, 0b100u};
    CHECK(induced_sequence(all, coll, false).order_log2() == 3);

    // <u1> is cyclic of order 4 in C4 x C2
    std::vector<ExpVec> one{0b001u};
    auto seq = induced_sequence(one, coll, false);
    CHECK(seq.order_log2() == 2);
    CHECK(seq.contains(0b010u, coll));  // u1^2 = u2 in the subgroup
}

TEST_CASE("sifting is idempotent") {
    auto upc = unit_pc_for(d8());
    Collector coll(upc.pres);
    std::vector<ExpVec> gens{0b0010101u, 0b1000010u};
    auto seq = induced_sequence(gens, coll, false);
    for (ExpVec g = 0; g < (1u << 7); g += 3) {
        ExpVec r = sift(seq, g, coll);
        CHECK(sift(seq, r, coll) == r);
    }
}

TEST_CASE("echelonized rows: distinct increasing leads, zero at other leads") {
    auto upc = unit_pc_for(d16());
    Collector coll(upc.pres);
    std::vector<ExpVec> gens{0b000011001100111u, 0b010110100000001u, 0b000000000000110u};
    auto seq = induced_sequence(gens, coll, false);
    for (std::size_t i = 0; i + 1 < seq.rows.size(); ++i)
        CHECK(leading_index(seq.rows[i]) < leading_index(seq.rows[i + 1]));
    for (std::size_t i = 0; i < seq.rows.size(); ++i)
        for (std::size_t j = 0; j < seq.rows.size(); ++j)
            if (i != j) CHECK((seq.rows[i] >> leading_index(seq.rows[j]) & 1u) == 0u);
    // closure certificate
    for (ExpVec a : seq.rows)
        for (ExpVec b : seq.rows) {
            CHECK(sift(seq, coll.mul(a, b), coll) == 0u);
            CHECK(sift(seq, coll.mul(a, a), coll) == 0u);
        }
}

TEST_CASE("Frattini subgroup of V(KG)") {
    CHECK(frattini_subgroup(Collector(unit_pc_for(c2()).pres)).order_log2() == 0);

    for (auto pres : {c4(), c8(), d8(), q8()}) {
        auto upc = unit_pc_for(pres);
        Collector coll(upc.pres);
        auto frat = frattini_subgroup(coll);
        CHECK((std::size_t(1) << frat.order_log2()) == frattini_order_brute(coll));
    }
}

TEST_CASE("Frattini subgroup equals the second lower 2-central term") {
    for (auto pres : {c4(), d8(), q8(), d16()}) {
        auto upc = unit_pc_for(pres);
        Collector coll(upc.pres);
        auto frat = frattini_subgroup(coll);
        auto series = lower_p_central_series(coll);
        REQUIRE(series.size() >= 2);
        const auto& lambda2 = series[1];
        CHECK(lambda2.order_log2() == frat.order_log2());
        for (ExpVec r : lambda2.rows) CHECK(sift(frat, r, coll) == 0u);
        for (ExpVec r : frat.rows) CHECK(sift(lambda2, r, coll) == 0u);
    }
}

TEST_CASE("p-class") {
    // elementary abelian: p-class 1
    PcPresentation ea;
    ea.ngens = 4;
    Collector coll(ea);
    CHECK(p_class(coll) == 1);

    // V(KC2) = C2
    CHECK(p_class(Collector(unit_pc_for(c2()).pres)) == 1);

    // V(KC4) = C4 x C2 has p-class 2
    CHECK(p_class(Collector(unit_pc_for(c4()).pres)) == 2);
}

TEST_CASE("subgroup orders divide the ambient order") {
    auto upc = unit_pc_for(d8());
    Collector coll(upc.pres);
    std::vector<ExpVec> gens{0b0011001u};
    auto seq = induced_sequence(gens, coll, true);
    CHECK(seq.order_log2() <= coll.ngens());
}
