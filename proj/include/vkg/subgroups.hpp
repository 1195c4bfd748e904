#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "vkg/pcgroup.hpp"

// Subgroup machinery on PC groups of order up to 2^31: echelonized
// (induced) generating sequences with sifting for membership, normal
// closures, the Frattini subgroup and the lower exponent-2 central series.

namespace vkg {

// Rows have pairwise distinct leading (lowest set) bits, stored in
// increasing leading-index order, and are fully echelonized: no row has
// a set bit at another row's leading index.
struct InducedSequence {
    std::vector<ExpVec> rows;
    std::vector<ExpVec> row_inv;  // cached inverses, parallel to rows
    std::uint32_t lead_mask = 0;

    int order_log2() const { return static_cast<int>(rows.size()); }
    bool trivial() const { return rows.empty(); }
    bool contains(ExpVec g, const Collector& coll) const;
};

inline int leading_index(ExpVec v) { return std::countr_zero(v); }

// Cancels the leading index of g against matching rows by group division
// (multiply by the row inverse via collection, never bitwise XOR).
// Returns the residue; zero iff g lies in the subgroup.
ExpVec sift(const InducedSequence& seq, ExpVec g, const Collector& coll);

// Worklist construction of an echelonized generating sequence for <gens>
// (or its normal closure): nonzero residues are inserted, then squares,
// pairwise products and, for closures, conjugates by the ambient PC
// generators are re-queued until the closure certificate holds.
InducedSequence induced_sequence(std::span<const ExpVec> gens, const Collector& coll,
                                 bool normal_closure);

// Phi(V) = V^2 [V,V]: normal closure of all power and commutator tails.
InducedSequence frattini_subgroup(const Collector& coll);

// lambda_1 = V, lambda_{i+1} = [lambda_i, V] * lambda_i^2, down to the
// trivial sequence (included).
std::vector<InducedSequence> lower_p_central_series(const Collector& coll);

int p_class(const Collector& coll);

}  // namespace vkg
