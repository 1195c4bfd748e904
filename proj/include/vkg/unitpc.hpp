#pragma once

#include <cstdint>
#include <vector>

#include "vkg/algebra.hpp"
#include "vkg/pcgroup.hpp"

// Power-commutator presentation of the normalized unit group V(KG) on the
// generators u_i = 1 + b_i, where (b_i) is a weight-adapted basis of the
// augmentation ideal.  V(KG) = 1 + I has order 2^(|G|-1).

namespace vkg {

using UnitWord = ExpVec;

struct UnitPc {
    PcPresentation pres;          // m = |G|-1 generators, relative orders 2
    std::vector<int> weight;      // weight of each generator's basis vector
    WeightedBasis basis;
    MulTables tables;
    std::vector<Alg> gen_unit;      // u_i = 1 + b_i
    std::vector<Alg> gen_unit_inv;  // u_i^-1

    int m() const { return pres.ngens; }
};

// Normal form of a normalized unit by peeling: walk the weighted
// coordinates of u - 1 from the front; whenever coordinate i is set,
// record exponent 1 and strip the generator off with u := u_i^-1 u.
// The weight grading guarantees later steps never disturb coordinate i.
UnitWord unit_normal_form(Alg u, const UnitPc& upc);

// Ordered product prod_{e_i = 1} (1 + b_i) in the algebra.
Alg word_to_algebra(UnitWord w, const UnitPc& upc);

// Tails come from peeling u_i^2 and u_j^-1 u_i^-1 u_j u_i; the weight
// grading of every tail is asserted during construction.
UnitPc build_unit_pc(const WeightedBasis& basis, const MulTables& tables);

}  // namespace vkg
