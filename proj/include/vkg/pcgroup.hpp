#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Finite 2-groups as power-commutator presentations with all relative
// orders equal to 2.  An element's normal form g_1^{e_1} ... g_n^{e_n}
// is packed into one word (bit i = exponent of generator i, 0-based).
//
// The same collection engine serves both the small catalogue groups
// (order <= 32, fully enumerable) and the normalized unit groups built
// on up to 31 generators.

namespace vkg {

using ExpVec = std::uint32_t;
inline constexpr int kMaxGens = 31;

// A normal word over generators {i+1, ..., n-1} fits in a bit mask because
// all exponents are 0/1 and normal words are strictly increasing.
struct PcPresentation {
    int ngens = 0;
    std::array<ExpVec, kMaxGens> power_tail{};  // g_i^2 = word(power_tail[i])
    std::array<std::array<ExpVec, kMaxGens>, kMaxGens> comm_tail{};  // [g_j,g_i] = word(comm_tail[j][i]), j > i

    ExpVec gen_mask() const { return (ngens == 32) ? ~0u : ((1u << ngens) - 1); }

    // Index-range sanity: tails of g_i^2 and of [g_j,g_i] involve only
    // generators above i.  Throws std::invalid_argument on violation.
    void validate() const;
};

// Collection from the left with an explicit letter stack.
class Collector {
  public:
    explicit Collector(const PcPresentation& pres);

    const PcPresentation& presentation() const { return pres_; }
    int ngens() const { return pres_.ngens; }

    ExpVec mul_gen(ExpVec x, int g) const;      // normal form of x * g
    ExpVec mul(ExpVec x, ExpVec y) const;       // normal form of x * y
    ExpVec inverse(ExpVec x) const;
    ExpVec conjugate(ExpVec x, ExpVec h) const;   // h^-1 x h
    ExpVec commutator(ExpVec x, ExpVec y) const;  // x^-1 y^-1 x y
    ExpVec gen_inverse(int i) const { return gen_inv_[i]; }

    // Word letters are signed, 1-based generator indices (-i = inverse).
    ExpVec collect_word(std::span<const int> word) const;

  private:
    PcPresentation pres_;
    std::array<ExpVec, kMaxGens> gen_inv_{};
};

ExpVec collect_normal_form(const PcPresentation& pres, std::span<const int> word);

// Fully enumerated group, element index == exponent vector (identity = 0).
struct GroupTable {
    int ngens = 0;
    int order = 0;
    int id_index = 0;
    std::array<std::array<std::uint8_t, 32>, 32> mul{};
    std::array<std::uint8_t, 32> inv{};

    int multiply(int x, int y) const { return mul[x][y]; }
    int inverse(int x) const { return inv[x]; }
    int conjugate(int x, int g) const { return mul[mul[inv[g]][x]][g]; }
    int commutator(int x, int y) const { return mul[mul[inv[x]][inv[y]]][mul[x][y]]; }
};

// Enumerates all 2^ngens normal forms and verifies the table is a group
// (two-sided identity, Latin square, exhaustive associativity).  Throws
// std::runtime_error when the presentation is inconsistent.
GroupTable build_group_table(const PcPresentation& pres);

// Element sets are bit masks over table indices (order <= 32).
using ElemSet = std::uint32_t;

std::vector<std::vector<int>> conjugacy_classes(const GroupTable& t);
ElemSet subgroup_closure(const GroupTable& t, ElemSet gens);
ElemSet center_of_group(const GroupTable& t);
ElemSet derived_subgroup(const GroupTable& t);
ElemSet agemo(const GroupTable& t, ElemSet sub);  // closure of squares of sub

// D_1 = G, D_i = [D_{i-1}, G] * (D_ceil(i/2))^2, listed down to and
// including the trivial term.
std::vector<ElemSet> jennings_series(const GroupTable& t);

std::vector<ElemSet> lower_central_series(const GroupTable& t);
int nilpotency_class(const GroupTable& t);

int element_order(const GroupTable& t, int x);
int group_exponent(const GroupTable& t);
bool is_abelian(const GroupTable& t);
int count_involutions_in_table(const GroupTable& t);

GroupTable quotient_table(const GroupTable& t, ElemSet normal_sub);

// Cyclic factor orders of a finite abelian 2-group, largest first.
std::vector<int> abelian_type(const GroupTable& t);

// Brute-force isomorphism test: generator-image backtracking with
// per-element invariant pruning.  Exact at these orders.
bool tables_isomorphic(const GroupTable& a, const GroupTable& b);

}  // namespace vkg
