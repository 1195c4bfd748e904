#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "vkg/pcgroup.hpp"

// The modular group algebra KG over GF(2) for |G| <= 32.  An element is
// one bit-packed coefficient word indexed by group-element index, with
// the identity at bit 0.  Addition is XOR.

namespace vkg {

using Alg = std::uint32_t;

struct MulTables {
    int order = 0;
    // left[g][h] = index of g*h; row g is the left-translation permutation.
    std::array<std::array<std::uint8_t, 32>, 32> left{};

    static MulTables from(const GroupTable& t);
};

Alg multiply(Alg x, Alg y, const MulTables& t);

inline int augmentation(Alg x) { return std::popcount(x) & 1; }

// Inverse of a normalized unit: u = 1 + y with y nilpotent, so
// u^-1 = 1 + y + y^2 + ...  Throws std::invalid_argument on augmentation 0.
Alg unit_inverse(Alg u, const MulTables& t);

// Natural coordinates of the augmentation ideal I: basis {1+g : g != 1}.
// For x with augmentation 0 the coordinate vector is just x with the
// identity bit dropped (the identity coefficient is forced by parity).
inline std::uint32_t nat_coords(Alg x) { return x >> 1; }
inline Alg from_nat_coords(std::uint32_t c) {
    return (c << 1) | static_cast<std::uint32_t>(std::popcount(c) & 1);
}

// Descending chain I > I^2 > ... > I^c > I^(c+1) = 0.
struct Filtration {
    std::vector<std::vector<Alg>> bases;  // bases[k] spans I^(k+1)
    std::vector<int> graded_dims;         // dim I^k / I^(k+1), k = 1..c

    int depth() const { return static_cast<int>(graded_dims.size()); }
    int dim(int k) const;  // dim I^k (k >= 1), 0 past the end
};

Filtration ideal_power_filtration(const MulTables& t);

// Basis of I adapted to the power filtration: weights non-decreasing,
// vectors of weight >= k span I^k exactly.
struct WeightedBasis {
    int m = 0;
    std::vector<Alg> vectors;
    std::vector<int> weights;
    std::vector<std::uint32_t> to_weighted;    // rows over natural coords
    std::vector<std::uint32_t> from_weighted;  // rows over weighted coords

    std::uint32_t to_weighted_coords(Alg x) const;  // x must have augmentation 0
    Alg from_weighted_coords(std::uint32_t w) const;
};

WeightedBasis weighted_basis(const Filtration& f);

struct CenterBasis {
    int k = 0;  // number of conjugacy classes
    std::vector<Alg> class_sums;
};

CenterBasis center_basis(const std::vector<std::vector<int>>& classes);

}  // namespace vkg
