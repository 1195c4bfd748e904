#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "vkg/algebra.hpp"

// Involution census for V(KG): x = 1 + y has x^2 = 1 + y^2 over GF(2), so
// involutions correspond bijectively to nonzero y in I with y^2 = 0.  The
// squaring map y -> y^2 is quadratic; its value at y = sum of basis
// vectors b_i over a bit set S is
//     Q(y) = sum_{i in S} sq[i]  +  sum_{i<j in S} cross[i][j]
// and is walked over all 2^m points with Gray-code incremental updates.

namespace vkg {

struct QuadraticMap {
    int m = 0;
    std::array<std::uint32_t, kMaxGens> sq{};  // b_i^2 in I-coordinates
    // cross[i][j] = b_i b_j + b_j b_i (symmetric, zero diagonal); rows padded
    // to 32 words so the per-flip accumulator update vectorizes.
    std::array<std::array<std::uint32_t, 32>, kMaxGens> cross{};

    std::uint32_t eval(std::uint32_t y) const;
};

// Natural basis {1+g : g != 1} of I.
QuadraticMap build_quadratic_map(const MulTables& t);
// Arbitrary basis of I (used to check that the census is basis-independent).
QuadraticMap build_quadratic_map(const MulTables& t, std::span<const Alg> basis);

// One coset of the subgroup spanned by the free low coordinates: the top
// split_bits coordinates are fixed to the task label.
struct CountTask {
    std::uint32_t fixed_bits = 0;
    int free_bits = 0;
    std::int64_t partial_count = 0;
};

std::vector<CountTask> make_tasks(int m, int split_bits);

struct CountOptions {
    int split_bits = 8;
    int threads = 1;
    // called after each finished task with (points processed, tasks done)
    std::function<void(std::uint64_t, int)> progress;
};

// |{y != 0 : Q(y) = 0}| = number of involutions of V(KG).  Partial counts
// are summed in task-index order, so the result is deterministic for any
// worker count.
std::int64_t count_involutions(const QuadraticMap& q, const CountOptions& opt = {});

// Independent oracle: enumerate every normalized unit and square it.
// Guarded to |G| <= 16 unless allow_large is set.
std::int64_t oracle_count_involutions(const MulTables& t, bool allow_large = false);

// |{y : Q(Q(y)) = 0}| - (count of order <= 2) = number of elements of
// order exactly 4.  The outer Q is evaluated afresh at each point.
std::int64_t count_order_dividing_4(const QuadraticMap& q, const CountOptions& opt = {});

}  // namespace vkg
