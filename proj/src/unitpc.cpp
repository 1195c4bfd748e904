#include "vkg/unitpc.hpp"

#include <stdexcept>
#include <string>

namespace vkg {

namespace {

UnitWord peel(Alg u, const WeightedBasis& wb, const MulTables& t,
              const std::vector<Alg>& gen_unit_inv) {
    if (!augmentation(u))
        throw std::invalid_argument("unit_normal_form: input has augmentation 0");
    UnitWord word = 0;
    for (int i = 0; i < wb.m; ++i) {
        std::uint32_t coords = wb.to_weighted_coords(u ^ 1u);
        if (coords >> i & 1u) {
            word |= 1u << i;
            u = multiply(gen_unit_inv[i], u, t);
        }
    }
    if (u != 1u)
        throw std::runtime_error("unit peeling left a nonunit remainder (weighted basis violated)");
    return word;
}

}  // namespace

UnitWord unit_normal_form(Alg u, const UnitPc& upc) {
    return peel(u, upc.basis, upc.tables, upc.gen_unit_inv);
}

Alg word_to_algebra(UnitWord w, const UnitPc& upc) {
    Alg acc = 1u;
    for (int i = 0; i < upc.m(); ++i)
        if (w >> i & 1u) acc = multiply(acc, upc.gen_unit[i], upc.tables);
    return acc;
}

UnitPc build_unit_pc(const WeightedBasis& basis, const MulTables& tables) {
    UnitPc upc;
    upc.basis = basis;
    upc.tables = tables;
    upc.weight = basis.weights;
    upc.pres.ngens = basis.m;

    for (int i = 0; i < basis.m; ++i) {
        Alg u = basis.vectors[i] ^ 1u;  // 1 + b_i
        upc.gen_unit.push_back(u);
        upc.gen_unit_inv.push_back(unit_inverse(u, tables));
    }

    auto check_tail = [&](ExpVec tail, int min_weight, int above, const char* what) {
        ExpVec bits = tail;
        while (bits) {
            int k = std::countr_zero(bits);
            bits &= bits - 1;
            if (k <= above || basis.weights[k] < min_weight)
                throw std::runtime_error(std::string("build_unit_pc: ") + what +
                                         " tail violates the weight grading");
        }
    };

    for (int i = 0; i < basis.m; ++i) {
        // sanity: u_i itself must peel to the single-bit word e_i
        if (peel(upc.gen_unit[i], basis, tables, upc.gen_unit_inv) != (1u << i))
            throw std::runtime_error("build_unit_pc: generator does not peel to itself");

        Alg sq = multiply(upc.gen_unit[i], upc.gen_unit[i], tables);
        ExpVec tail = peel(sq, basis, tables, upc.gen_unit_inv);
        check_tail(tail, 2 * basis.weights[i], i, "power");
        upc.pres.power_tail[i] = tail;
    }
    for (int j = 1; j < basis.m; ++j)
        for (int i = 0; i < j; ++i) {
            Alg c = multiply(multiply(multiply(upc.gen_unit_inv[j], upc.gen_unit_inv[i], tables),
                                      upc.gen_unit[j], tables),
                             upc.gen_unit[i], tables);
            ExpVec tail = peel(c, basis, tables, upc.gen_unit_inv);
            check_tail(tail, basis.weights[i] + basis.weights[j], j, "commutator");
            upc.pres.comm_tail[j][i] = tail;
        }

    upc.pres.validate();
    return upc;
}

}  // namespace vkg
