#include "vkg/algebra.hpp"

#include <stdexcept>

#include "vkg/gf2.hpp"

namespace vkg {

MulTables MulTables::from(const GroupTable& t) {
    MulTables m;
    m.order = t.order;
    for (int g = 0; g < t.order; ++g)
        for (int h = 0; h < t.order; ++h)
            m.left[g][h] = t.mul[g][h];
    return m;
}

Alg multiply(Alg x, Alg y, const MulTables& t) {
    Alg acc = 0;
    while (x) {
        int g = std::countr_zero(x);
        x &= x - 1;
        const auto& row = t.left[g];
        Alg yy = y;
        while (yy) {
            int h = std::countr_zero(yy);
            yy &= yy - 1;
            acc ^= 1u << row[h];
        }
    }
    return acc;
}

Alg unit_inverse(Alg u, const MulTables& t) {
    if (!augmentation(u))
        throw std::invalid_argument("unit_inverse: input has augmentation 0");
    Alg y = u ^ 1u;  // u = 1 + y
    Alg acc = 1u, term = 1u;
    while (true) {
        term = multiply(term, y, t);
        if (!term) break;
        acc ^= term;
    }
    return acc;
}

int Filtration::dim(int k) const {
    int d = 0;
    for (int j = k; j <= depth(); ++j) d += graded_dims[j - 1];
    return d;
}

Filtration ideal_power_filtration(const MulTables& t) {
    Filtration f;
    std::vector<Alg> ibasis;
    for (int g = 1; g < t.order; ++g) ibasis.push_back((1u << g) | 1u);  // 1 + g
    f.bases.push_back(ibasis);

    while (!f.bases.back().empty()) {
        // I^(k+1) is spanned by (basis of I^k) * (basis of I).
        gf2::Echelon ech;
        std::vector<Alg> next;
        for (Alg b : f.bases.back())
            for (Alg a : ibasis) {
                Alg p = multiply(b, a, t);
                if (ech.insert(nat_coords(p))) next.push_back(p);
            }
        f.bases.push_back(next);
    }
    f.bases.pop_back();  // drop the zero ideal

    for (std::size_t k = 0; k < f.bases.size(); ++k) {
        int below = (k + 1 < f.bases.size()) ? static_cast<int>(f.bases[k + 1].size()) : 0;
        f.graded_dims.push_back(static_cast<int>(f.bases[k].size()) - below);
    }
    return f;
}

std::uint32_t WeightedBasis::to_weighted_coords(Alg x) const {
    return gf2::matvec(to_weighted, nat_coords(x));
}

Alg WeightedBasis::from_weighted_coords(std::uint32_t w) const {
    return from_nat_coords(gf2::matvec(from_weighted, w));
}

WeightedBasis weighted_basis(const Filtration& f) {
    WeightedBasis wb;
    const int c = f.depth();
    wb.m = f.dim(1);

    // Start from a basis of I^c and extend downwards; a vector added while
    // extending to I^k lies in I^k but not in the span of I^(k+1), so its
    // weight is exactly k.
    gf2::Echelon span;
    std::vector<std::pair<Alg, int>> picked;  // (vector, weight)
    for (int k = c; k >= 1; --k)
        for (Alg v : f.bases[k - 1])
            if (span.insert(nat_coords(v))) picked.emplace_back(v, k);

    // Reorder: non-decreasing weight (stable within a weight block).
    for (int k = 1; k <= c; ++k)
        for (const auto& [v, w] : picked)
            if (w == k) {
                wb.vectors.push_back(v);
                wb.weights.push_back(w);
            }

    // from_weighted maps weighted coords back to natural coords; its row r
    // collects bit r of every basis vector.
    std::vector<std::uint32_t> b_rows(wb.m, 0);
    for (int j = 0; j < wb.m; ++j) {
        std::uint32_t nc = nat_coords(wb.vectors[j]);
        for (int r = 0; r < wb.m; ++r)
            if (nc >> r & 1u) b_rows[r] |= 1u << j;
    }
    wb.from_weighted = b_rows;
    wb.to_weighted = gf2::invert(b_rows);
    return wb;
}

CenterBasis center_basis(const std::vector<std::vector<int>>& classes) {
    CenterBasis cb;
    cb.k = static_cast<int>(classes.size());
    for (const auto& cls : classes) {
        Alg s = 0;
        for (int g : cls) s ^= 1u << g;
        cb.class_sums.push_back(s);
    }
    return cb;
}

}  // namespace vkg
