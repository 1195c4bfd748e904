#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

// Dense GF(2) linear algebra on bit-packed rows.  Everything in this
// project lives in dimension <= 31, so a row is one machine word.

namespace vkg::gf2 {

inline int parity(std::uint32_t x) { return std::popcount(x) & 1; }

// Echelon basis with the *lowest* set bit of each row as pivot.
struct Echelon {
    std::array<std::uint32_t, 32> row{};
    std::uint32_t pivots = 0;

    // Reduces v against the stored rows; returns the residue.
    std::uint32_t reduce(std::uint32_t v) const {
        while (v) {
            int p = std::countr_zero(v);
            if (!(pivots >> p & 1u)) break;
            v ^= row[p];
        }
        return v;
    }

    bool contains(std::uint32_t v) const { return reduce(v) == 0; }

    // Inserts v if independent of the current span; returns true if inserted.
    bool insert(std::uint32_t v) {
        v = reduce(v);
        if (!v) return false;
        int p = std::countr_zero(v);
        row[p] = v;
        pivots |= 1u << p;
        return true;
    }

    int rank() const { return std::popcount(pivots); }
};

// y_r = <rows[r], x> over GF(2).
inline std::uint32_t matvec(const std::vector<std::uint32_t>& rows, std::uint32_t x) {
    std::uint32_t y = 0;
    for (std::size_t r = 0; r < rows.size(); ++r)
        y |= static_cast<std::uint32_t>(parity(rows[r] & x)) << r;
    return y;
}

inline int rank(const std::vector<std::uint32_t>& rows) {
    Echelon e;
    for (auto r : rows) e.insert(r);
    return e.rank();
}

// Inverse of an n x n row matrix (throws if singular).
inline std::vector<std::uint32_t> invert(std::vector<std::uint32_t> a) {
    const std::size_t n = a.size();
    if (n > 32) throw std::invalid_argument("gf2::invert: dimension > 32");
    std::vector<std::uint32_t> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[i] = 1u << i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && !(a[piv] >> col & 1u)) ++piv;
        if (piv == n) throw std::runtime_error("gf2::invert: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != col && (a[r] >> col & 1u)) {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    return inv;
}

// Matrix product c = a*b where rows are over input coordinates:
// (c x) = a (b x).
inline std::vector<std::uint32_t> matmul(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b) {
    // row r of c: c[r]_j = <a[r], column j of b> = parity over i of a[r]_i b[i]_j
    std::vector<std::uint32_t> c(a.size(), 0);
    for (std::size_t r = 0; r < a.size(); ++r) {
        std::uint32_t acc = 0;
        std::uint32_t bits = a[r];
        while (bits) {
            int i = std::countr_zero(bits);
            bits &= bits - 1;
            acc ^= b[i];
        }
        c[r] = acc;
    }
    return c;
}

}  // namespace vkg::gf2
