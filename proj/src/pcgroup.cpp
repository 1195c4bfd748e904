#include "vkg/pcgroup.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace vkg {

namespace {

constexpr int kStackCap = 1 << 15;
constexpr std::uint64_t kCollectFuel = 1u << 24;

inline ExpVec bits_above(ExpVec x, int g) {
    return (g >= 31) ? 0 : (x & ~((2u << g) - 1));
}

}  // namespace

void PcPresentation::validate() const {
    if (ngens < 1 || ngens > kMaxGens)
        throw std::invalid_argument("PcPresentation: generator count out of range");
    const ExpVec all = gen_mask();
    for (int i = 0; i < ngens; ++i) {
        if (power_tail[i] & ~all)
            throw std::invalid_argument("PcPresentation: power tail references unknown generator");
        if (bits_above(power_tail[i], i) != power_tail[i])
            throw std::invalid_argument("PcPresentation: power tail of g_i must involve only generators above i");
        for (int j = 0; j < ngens; ++j) {
            ExpVec c = comm_tail[j][i];
            if (!c) continue;
            if (j <= i)
                throw std::invalid_argument("PcPresentation: commutator tail stored with j <= i");
            if (c & ~all)
                throw std::invalid_argument("PcPresentation: commutator tail references unknown generator");
            if (bits_above(c, i) != c)
                throw std::invalid_argument("PcPresentation: tail of [g_j,g_i] must involve only generators above i");
        }
    }
}

Collector::Collector(const PcPresentation& pres) : pres_(pres) {
    pres_.validate();
    // g_i^-1 = g_i * (g_i^2)^-1; fill from the top so tails are resolved.
    for (int i = pres_.ngens - 1; i >= 0; --i) {
        ExpVec acc = 0;
        ExpVec tail = pres_.power_tail[i];
        while (tail) {
            int k = 31 - std::countl_zero(tail);  // highest set bit first
            tail &= ~(1u << k);
            acc = mul(acc, gen_inv_[k]);
        }
        gen_inv_[i] = mul(1u << i, acc);
    }
}

ExpVec Collector::mul_gen(ExpVec x, int g) const {
    std::uint8_t stk[64];
    std::vector<std::uint8_t> spill;  // only touched on pathological input
    int sp = 0;
    std::uint64_t fuel = kCollectFuel;

    auto push = [&](int t) {
        if (sp < 64)
            stk[sp++] = static_cast<std::uint8_t>(t);
        else {
            if (spill.size() >= kStackCap)
                throw std::runtime_error("Collector: letter stack overflow (inconsistent presentation?)");
            spill.push_back(static_cast<std::uint8_t>(t));
            ++sp;
        }
    };
    auto pop = [&]() -> int {
        --sp;
        if (sp < 64) return stk[sp];
        int t = spill.back();
        spill.pop_back();
        return t;
    };

    push(g);
    while (sp > 0) {
        if (fuel-- == 0)
            throw std::runtime_error("Collector: collection did not terminate (inconsistent presentation?)");
        int t = pop();
        ExpVec v = bits_above(x, t);
        if (v) {
            // x = L * v; move g_t left across v:  v * g_t = g_t * v^{g_t},
            // v^{g_t} = prod_j (g_j * [g_j, g_t]).  Push reversed so the
            // expansion pops in left-to-right order.
            x ^= v;
            ExpVec w = v;
            while (w) {
                int j = 31 - std::countl_zero(w);
                w &= ~(1u << j);
                ExpVec tail = pres_.comm_tail[j][t];
                while (tail) {
                    int k = 31 - std::countl_zero(tail);
                    tail &= ~(1u << k);
                    push(k);
                }
                push(j);
            }
        }
        if (x >> t & 1u) {
            // g_t * g_t = word(power_tail[t])
            x &= ~(1u << t);
            ExpVec tail = pres_.power_tail[t];
            while (tail) {
                int k = 31 - std::countl_zero(tail);
                tail &= ~(1u << k);
                push(k);
            }
        } else {
            x |= 1u << t;
        }
    }
    return x;
}

ExpVec Collector::mul(ExpVec x, ExpVec y) const {
    while (y) {
        int j = std::countr_zero(y);
        y &= y - 1;
        x = mul_gen(x, j);
    }
    return x;
}

ExpVec Collector::inverse(ExpVec x) const {
    // Greedy: right-multiplying by g_i^-1 clears bit i without touching
    // lower bits (the suffix lies in the normal subgroup <g_i, ...>).
    ExpVec y = 0;
    ExpVec r = x;
    while (r) {
        int i = std::countr_zero(r);
        r = mul(r, gen_inv_[i]);
        y = mul(y, gen_inv_[i]);
    }
    return y;
}

ExpVec Collector::conjugate(ExpVec x, ExpVec h) const {
    return mul(mul(inverse(h), x), h);
}

ExpVec Collector::commutator(ExpVec x, ExpVec y) const {
    return mul(inverse(mul(y, x)), mul(x, y));
}

ExpVec Collector::collect_word(std::span<const int> word) const {
    ExpVec acc = 0;
    for (int letter : word) {
        int i = (letter > 0 ? letter : -letter) - 1;
        if (letter == 0 || i >= pres_.ngens)
            throw std::out_of_range("collect_word: generator index out of range");
        acc = (letter > 0) ? mul_gen(acc, i) : mul(acc, gen_inv_[i]);
    }
    return acc;
}

ExpVec collect_normal_form(const PcPresentation& pres, std::span<const int> word) {
    return Collector(pres).collect_word(word);
}

GroupTable build_group_table(const PcPresentation& pres) {
    if (pres.ngens > 5)
        throw std::invalid_argument("build_group_table: only groups of order <= 32");
    Collector coll(pres);
    GroupTable t;
    t.ngens = pres.ngens;
    t.order = 1 << pres.ngens;
    t.id_index = 0;

    for (int x = 0; x < t.order; ++x)
        for (int y = 0; y < t.order; ++y)
            t.mul[x][y] = static_cast<std::uint8_t>(coll.mul(ExpVec(x), ExpVec(y)));

    // Identity, Latin square, inverses, associativity: together these
    // certify that the presentation defines a group of order 2^ngens.
    for (int x = 0; x < t.order; ++x)
        if (t.mul[0][x] != x || t.mul[x][0] != x)
            throw std::runtime_error("inconsistent presentation: no two-sided identity");
    for (int x = 0; x < t.order; ++x) {
        std::uint32_t seen_row = 0, seen_col = 0;
        for (int y = 0; y < t.order; ++y) {
            seen_row |= 1u << t.mul[x][y];
            seen_col |= 1u << t.mul[y][x];
        }
        std::uint32_t all = (t.order == 32) ? ~0u : ((1u << t.order) - 1);
        if (seen_row != all || seen_col != all)
            throw std::runtime_error("inconsistent presentation: multiplication is not a Latin square");
    }
    for (int x = 0; x < t.order; ++x) {
        int ix = -1;
        for (int y = 0; y < t.order; ++y)
            if (t.mul[x][y] == 0) { ix = y; break; }
        if (ix < 0 || t.mul[ix][x] != 0)
            throw std::runtime_error("inconsistent presentation: missing inverse");
        t.inv[x] = static_cast<std::uint8_t>(ix);
    }
    for (int x = 0; x < t.order; ++x)
        for (int y = 0; y < t.order; ++y)
            for (int z = 0; z < t.order; ++z)
                if (t.mul[t.mul[x][y]][z] != t.mul[x][t.mul[y][z]])
                    throw std::runtime_error("inconsistent presentation: multiplication is not associative");
    return t;
}

std::vector<std::vector<int>> conjugacy_classes(const GroupTable& t) {
    std::vector<std::vector<int>> classes;
    std::uint32_t seen = 0;
    for (int x = 0; x < t.order; ++x) {
        if (seen >> x & 1u) continue;
        std::vector<int> cls;
        std::uint32_t orbit = 0;
        for (int g = 0; g < t.order; ++g) orbit |= 1u << t.conjugate(x, g);
        for (int y = 0; y < t.order; ++y)
            if (orbit >> y & 1u) cls.push_back(y);
        seen |= orbit;
        classes.push_back(std::move(cls));
    }
    return classes;
}

ElemSet subgroup_closure(const GroupTable& t, ElemSet gens) {
    ElemSet s = 1u << t.id_index;
    s |= gens;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int x = 0; x < t.order; ++x) {
            if (!(s >> x & 1u)) continue;
            for (int y = 0; y < t.order; ++y) {
                if (!(s >> y & 1u)) continue;
                int z = t.mul[x][y];
                if (!(s >> z & 1u)) { s |= 1u << z; grew = true; }
            }
        }
    }
    return s;
}

ElemSet center_of_group(const GroupTable& t) {
    ElemSet c = 0;
    for (int x = 0; x < t.order; ++x) {
        bool central = true;
        for (int g = 0; g < t.order && central; ++g)
            central = (t.mul[x][g] == t.mul[g][x]);
        if (central) c |= 1u << x;
    }
    return c;
}

ElemSet derived_subgroup(const GroupTable& t) {
    ElemSet gens = 0;
    for (int x = 0; x < t.order; ++x)
        for (int y = 0; y < t.order; ++y)
            gens |= 1u << t.commutator(x, y);
    return subgroup_closure(t, gens);
}

ElemSet agemo(const GroupTable& t, ElemSet sub) {
    ElemSet gens = 0;
    for (int x = 0; x < t.order; ++x)
        if (sub >> x & 1u) gens |= 1u << t.mul[x][x];
    return subgroup_closure(t, gens);
}

namespace {

ElemSet commutator_set(const GroupTable& t, ElemSet a, ElemSet b) {
    ElemSet gens = 0;
    for (int x = 0; x < t.order; ++x) {
        if (!(a >> x & 1u)) continue;
        for (int y = 0; y < t.order; ++y)
            if (b >> y & 1u) gens |= 1u << t.commutator(x, y);
    }
    return gens;
}

}  // namespace

std::vector<ElemSet> jennings_series(const GroupTable& t) {
    ElemSet whole = (t.order == 32) ? ~0u : ((1u << t.order) - 1);
    std::vector<ElemSet> d{whole};
    while (d.back() != (1u << t.id_index)) {
        std::size_t i = d.size() + 1;  // computing D_i (1-based)
        ElemSet half = d[(i + 1) / 2 - 1];
        ElemSet sq = 0;
        for (int x = 0; x < t.order; ++x)
            if (half >> x & 1u) sq |= 1u << t.mul[x][x];
        ElemSet gens = commutator_set(t, d.back(), whole) | sq;
        d.push_back(subgroup_closure(t, gens));
        if (d.size() > 40) throw std::runtime_error("jennings_series: series does not descend");
    }
    return d;
}

std::vector<ElemSet> lower_central_series(const GroupTable& t) {
    ElemSet whole = (t.order == 32) ? ~0u : ((1u << t.order) - 1);
    std::vector<ElemSet> g{whole};
    for (;;) {
        ElemSet next = subgroup_closure(t, commutator_set(t, g.back(), whole));
        if (next == g.back()) break;
        g.push_back(next);
        if (g.back() == (1u << t.id_index)) break;
    }
    return g;
}

int nilpotency_class(const GroupTable& t) {
    auto s = lower_central_series(t);
    if (s.back() != (1u << t.id_index))
        throw std::runtime_error("nilpotency_class: group is not nilpotent");
    return static_cast<int>(s.size()) - 1;
}

int element_order(const GroupTable& t, int x) {
    int p = x, n = 1;
    while (p != t.id_index) { p = t.mul[p][x]; ++n; }
    return n;
}

int group_exponent(const GroupTable& t) {
    // For a 2-group the exponent is the largest element order.
    int e = 1;
    for (int x = 0; x < t.order; ++x) e = std::max(e, element_order(t, x));
    return e;
}

bool is_abelian(const GroupTable& t) {
    for (int x = 0; x < t.order; ++x)
        for (int y = 0; y < x; ++y)
            if (t.mul[x][y] != t.mul[y][x]) return false;
    return true;
}

int count_involutions_in_table(const GroupTable& t) {
    int n = 0;
    for (int x = 0; x < t.order; ++x)
        if (x != t.id_index && t.mul[x][x] == t.id_index) ++n;
    return n;
}

GroupTable quotient_table(const GroupTable& t, ElemSet normal_sub) {
    // Cosets of a normal subgroup with the identity coset first.
    std::array<int, 32> coset_of;
    coset_of.fill(-1);
    std::vector<int> reps;
    for (int x = 0; x < t.order; ++x) {
        if (coset_of[x] >= 0) continue;
        int c = static_cast<int>(reps.size());
        reps.push_back(x);
        for (int n = 0; n < t.order; ++n)
            if (normal_sub >> n & 1u) coset_of[t.mul[x][n]] = c;
    }
    int q = static_cast<int>(reps.size());
    if (q > 32) throw std::invalid_argument("quotient_table: quotient too large");
    GroupTable qt;
    qt.order = q;
    qt.ngens = std::countr_zero(static_cast<unsigned>(q));
    qt.id_index = 0;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            qt.mul[a][b] = static_cast<std::uint8_t>(coset_of[t.mul[reps[a]][reps[b]]]);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            if (qt.mul[a][b] == 0) qt.inv[a] = static_cast<std::uint8_t>(b);
    return qt;
}

namespace {

// (order, class size, #square roots, order of x^2) per element: cheap
// conjugation- and isomorphism-invariant data for pruning.
std::array<std::uint32_t, 32> element_invariants(const GroupTable& t) {
    std::array<int, 32> class_size{};
    for (const auto& cls : conjugacy_classes(t))
        for (int x : cls) class_size[x] = static_cast<int>(cls.size());
    std::array<int, 32> sqrt_count{};
    for (int x = 0; x < t.order; ++x) ++sqrt_count[t.mul[x][x]];
    std::array<std::uint32_t, 32> inv{};
    for (int x = 0; x < t.order; ++x) {
        inv[x] = static_cast<std::uint32_t>(element_order(t, x)) |
                 (static_cast<std::uint32_t>(class_size[x]) << 6) |
                 (static_cast<std::uint32_t>(sqrt_count[x]) << 12) |
                 (static_cast<std::uint32_t>(element_order(t, t.mul[x][x])) << 18);
    }
    return inv;
}

// Extends the partial map determined by generator images; returns false on
// any inconsistency.  On success `map` covers the closure of the images.
bool close_map(const GroupTable& a, const GroupTable& b, const std::vector<int>& gens_a,
               const std::vector<int>& gens_b, std::array<int, 32>& map) {
    map.fill(-1);
    map[a.id_index] = b.id_index;
    std::vector<int> frontier{a.id_index};
    while (!frontier.empty()) {
        int x = frontier.back();
        frontier.pop_back();
        for (std::size_t k = 0; k < gens_b.size(); ++k) {
            int xa = a.mul[x][gens_a[k]];
            int xb = b.mul[map[x]][gens_b[k]];
            if (map[xa] < 0) {
                map[xa] = xb;
                frontier.push_back(xa);
            } else if (map[xa] != xb) {
                return false;
            }
        }
    }
    return true;
}

bool extend_isomorphism(const GroupTable& a, const GroupTable& b, const std::vector<int>& gens_a,
                        std::vector<int>& gens_b, const std::array<std::uint32_t, 32>& inv_a,
                        const std::array<std::uint32_t, 32>& inv_b) {
    std::size_t depth = gens_b.size();
    if (depth == gens_a.size()) {
        std::array<int, 32> map;
        if (!close_map(a, b, gens_a, gens_b, map)) return false;
        std::uint32_t image = 0;
        for (int x = 0; x < a.order; ++x) {
            if (map[x] < 0) return false;  // images do not generate
            image |= 1u << map[x];
        }
        if (std::popcount(image) != a.order) return false;
        for (int x = 0; x < a.order; ++x)
            for (int y = 0; y < a.order; ++y)
                if (map[a.mul[x][y]] != b.mul[map[x]][map[y]]) return false;
        return true;
    }
    for (int h = 0; h < b.order; ++h) {
        if (inv_b[h] != inv_a[gens_a[depth]]) continue;
        gens_b.push_back(h);
        std::array<int, 32> map;
        bool consistent = close_map(a, b, gens_a, gens_b, map);
        if (consistent && extend_isomorphism(a, b, gens_a, gens_b, inv_a, inv_b)) return true;
        gens_b.pop_back();
    }
    return false;
}

}  // namespace

bool tables_isomorphic(const GroupTable& a, const GroupTable& b) {
    if (a.order != b.order) return false;
    auto inv_a = element_invariants(a);
    auto inv_b = element_invariants(b);
    {
        std::array<std::uint32_t, 32> sa = inv_a, sb = inv_b;
        std::sort(sa.begin(), sa.begin() + a.order);
        std::sort(sb.begin(), sb.begin() + b.order);
        if (!std::equal(sa.begin(), sa.begin() + a.order, sb.begin())) return false;
    }

    // greedy irredundant generating sequence of a (Burnside: size = d(G))
    std::vector<int> gens_a;
    ElemSet closure = 1u << a.id_index;
    for (int x = 0; x < a.order; ++x)
        if (!(closure >> x & 1u)) {
            gens_a.push_back(x);
            closure = subgroup_closure(a, closure | (1u << x));
            if (std::popcount(closure) == a.order) break;
        }

    std::vector<int> gens_b;
    return extend_isomorphism(a, b, gens_a, gens_b, inv_a, inv_b);
}

std::vector<int> abelian_type(const GroupTable& t) {
    if (!is_abelian(t)) throw std::invalid_argument("abelian_type: group is not abelian");
    // n_j = #{x : x^(2^j) = 1}; the factor counts fall out of the jumps.
    std::vector<int> log_counts{0};  // log2 n_0 = 0
    int j = 0;
    while ((1 << log_counts.back()) < t.order) {
        ++j;
        int cnt = 0;
        for (int x = 0; x < t.order; ++x) {
            int p = x;
            for (int s = 0; s < j; ++s) p = t.mul[p][p];
            if (p == t.id_index) ++cnt;
        }
        log_counts.push_back(std::countr_zero(static_cast<unsigned>(cnt)));
    }
    std::vector<int> type;
    for (std::size_t k = 1; k < log_counts.size(); ++k) {
        int rank_ge_k = log_counts[k] - log_counts[k - 1];
        int rank_ge_k1 = (k + 1 < log_counts.size()) ? log_counts[k + 1] - log_counts[k] : 0;
        for (int c = 0; c < rank_ge_k - rank_ge_k1; ++c) type.push_back(1 << k);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

}  // namespace vkg
