#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vkg/algebra.hpp"
#include "vkg/catalogue.hpp"
#include "vkg/involutions.hpp"

// The invariant ladder of V(KG), tiered by cost:
//   tier 1: order of the center, order of the Frattini subgroup
//   tier 2: exponent of the center, involutions in the center, p-class
//   tier 3: number of involutions in V(KG)

namespace vkg {

inline constexpr unsigned kTier1 = 1u;
inline constexpr unsigned kTier2 = 2u;
inline constexpr unsigned kTier3 = 4u;
inline constexpr unsigned kAllTiers = kTier1 | kTier2 | kTier3;

struct InvariantRecord {
    int order = 0;
    int catalogue_id = 0;
    int v_order_log2 = 0;
    int center_order_log2 = -1;
    int frattini_order_log2 = -1;
    int center_exponent = -1;
    std::int64_t center_involutions = -1;
    int p_class = -1;
    std::int64_t involutions = -1;
    unsigned tier_mask = 0;
    std::vector<std::pair<std::string, double>> timings_ms;  // per invariant

    bool has(unsigned tier) const { return (tier_mask & tier) != 0; }
};

// Z(V) = V cap Z(KG): the center of V has order 2^(k-1), k = number of
// conjugacy classes (every augmentation-1 central element is a unit in
// this local algebra).  The identity is asserted against brute force at
// small orders in the test suite, not assumed silently.
int center_order_log2(const CenterBasis& cb);

// The squaring map on Z(KG) cap I is linear over GF(2) (cross terms of
// central elements vanish); stored in class-sum coordinates.
struct CenterSquaring {
    int dim = 0;
    std::vector<std::uint32_t> rows;  // dim x dim over GF(2)
};

CenterSquaring center_squaring_map(const CenterBasis& cb, const MulTables& t,
                                   const std::vector<std::vector<int>>& classes);

int center_exponent(const CenterSquaring& s);              // 2^t, t minimal with S^t = 0
std::int64_t center_involutions(const CenterSquaring& s);  // 2^nullity(S) - 1

struct ComputeOptions {
    int threads = 1;
    int split_bits = 8;
};

InvariantRecord compute_record(const CatalogueEntry& entry, unsigned tiers,
                               const ComputeOptions& opt = {});

}  // namespace vkg
