#include "vkg/invariants.hpp"

#include <chrono>
#include <stdexcept>

#include "vkg/gf2.hpp"
#include "vkg/subgroups.hpp"
#include "vkg/unitpc.hpp"

namespace vkg {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int center_order_log2(const CenterBasis& cb) { return cb.k - 1; }

CenterSquaring center_squaring_map(const CenterBasis& cb, const MulTables& t,
                                   const std::vector<std::vector<int>>& classes) {
    // Basis of Z(KG) cap I: v_c = (class sum of c) + (|c| mod 2) * 1, over
    // the non-identity classes.  Class coordinates: coefficient per class.
    const int dim = cb.k - 1;
    std::vector<Alg> basis(dim);
    for (int c = 1; c < cb.k; ++c) {
        Alg v = cb.class_sums[c];
        if (classes[c].size() & 1) v ^= 1u;
        basis[c - 1] = v;
    }

    std::vector<int> class_of(t.order, -1);
    for (int c = 0; c < cb.k; ++c)
        for (int g : classes[c]) class_of[g] = c;

    auto to_class_coords = [&](Alg x) -> std::uint32_t {
        // x must be central with augmentation 0; verify constancy on classes
        std::uint32_t coords = 0;
        for (int c = 1; c < cb.k; ++c) {
            int bit = (x >> classes[c][0]) & 1;
            for (int g : classes[c])
                if (((x >> g) & 1) != static_cast<std::uint32_t>(bit))
                    throw std::runtime_error("center_squaring_map: square is not central");
            coords |= static_cast<std::uint32_t>(bit) << (c - 1);
        }
        // identity coefficient is forced by augmentation 0
        int id_bit = x & 1;
        int expect = 0;
        for (int c = 1; c < cb.k; ++c)
            if ((coords >> (c - 1)) & 1) expect ^= classes[c].size() & 1;
        if (id_bit != expect)
            throw std::runtime_error("center_squaring_map: square left Z(KG) cap I");
        return coords;
    };

    CenterSquaring s;
    s.dim = dim;
    // column i of S = class coords of basis[i]^2; stored as rows.
    std::vector<std::uint32_t> cols(dim);
    for (int i = 0; i < dim; ++i) cols[i] = to_class_coords(multiply(basis[i], basis[i], t));
    s.rows.assign(dim, 0);
    for (int i = 0; i < dim; ++i)
        for (int r = 0; r < dim; ++r)
            if (cols[i] >> r & 1u) s.rows[r] |= 1u << i;

    // additivity on basis products: (z+w)^2 = z^2 + w^2, i.e. zw + wz = 0
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            if (multiply(basis[i], basis[j], t) != multiply(basis[j], basis[i], t))
                throw std::runtime_error("center_squaring_map: squaring is not additive on the center");
    return s;
}

int center_exponent(const CenterSquaring& s) {
    if (s.dim == 0) return 1;
    // least t with S^t = 0; the exponent of 1 + (Z cap I) is 2^t
    std::vector<std::uint32_t> power(s.dim);
    for (int i = 0; i < s.dim; ++i) power[i] = 1u << i;  // identity
    for (int t = 0; t <= s.dim; ++t) {
        bool zero = true;
        for (auto r : power) zero = zero && (r == 0);
        if (zero) return 1 << t;
        power = gf2::matmul(s.rows, power);
    }
    throw std::runtime_error("center_exponent: squaring map is not nilpotent");
}

std::int64_t center_involutions(const CenterSquaring& s) {
    int nullity = s.dim - gf2::rank(s.rows);
    return (std::int64_t(1) << nullity) - 1;
}

InvariantRecord compute_record(const CatalogueEntry& entry, unsigned tiers,
                               const ComputeOptions& opt) {
    InvariantRecord rec;
    rec.order = entry.order;
    rec.catalogue_id = entry.catalogue_id;
    rec.v_order_log2 = entry.order - 1;

    MulTables mt = MulTables::from(entry.table);
    auto classes = conjugacy_classes(entry.table);
    CenterBasis cb = center_basis(classes);

    // The unit presentation feeds both tier 1 (Frattini) and tier 2 (p-class).
    UnitPc upc;
    bool have_upc = false;
    auto need_upc = [&]() -> const UnitPc& {
        if (!have_upc) {
            Filtration f = ideal_power_filtration(mt);
            WeightedBasis wb = weighted_basis(f);
            upc = build_unit_pc(wb, mt);
            have_upc = true;
        }
        return upc;
    };

    if (tiers & kTier1) {
        auto t0 = std::chrono::steady_clock::now();
        rec.center_order_log2 = center_order_log2(cb);
        rec.timings_ms.emplace_back("center_order", ms_since(t0));

        t0 = std::chrono::steady_clock::now();
        Collector coll(need_upc().pres);
        rec.frattini_order_log2 = frattini_subgroup(coll).order_log2();
        rec.timings_ms.emplace_back("frattini_order", ms_since(t0));
        rec.tier_mask |= kTier1;
    }
    if (tiers & kTier2) {
        auto t0 = std::chrono::steady_clock::now();
        CenterSquaring s = center_squaring_map(cb, mt, classes);
        rec.center_exponent = center_exponent(s);
        rec.center_involutions = center_involutions(s);
        rec.timings_ms.emplace_back("center_structure", ms_since(t0));

        t0 = std::chrono::steady_clock::now();
        Collector coll(need_upc().pres);
        rec.p_class = p_class(coll);
        rec.timings_ms.emplace_back("p_class", ms_since(t0));
        rec.tier_mask |= kTier2;
    }
    if (tiers & kTier3) {
        auto t0 = std::chrono::steady_clock::now();
        QuadraticMap q = build_quadratic_map(mt);
        CountOptions copt;
        copt.threads = opt.threads;
        copt.split_bits = opt.split_bits;
        rec.involutions = count_involutions(q, copt);
        rec.timings_ms.emplace_back("involutions", ms_since(t0));
        rec.tier_mask |= kTier3;
    }

    if (rec.center_order_log2 >= 0 && !compute_fingerprint(entry.table).abelian &&
        rec.center_order_log2 >= rec.v_order_log2)
        throw std::runtime_error("compute_record: center of V not proper for nonabelian G");
    return rec;
}

}  // namespace vkg
