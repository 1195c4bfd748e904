#include "vkg/subgroups.hpp"

#include <algorithm>
#include <stdexcept>

namespace vkg {

bool InducedSequence::contains(ExpVec g, const Collector& coll) const {
    return sift(*this, g, coll) == 0;
}

ExpVec sift(const InducedSequence& seq, ExpVec g, const Collector& coll) {
    while (g) {
        int l = leading_index(g);
        if (!(seq.lead_mask >> l & 1u)) break;
        std::size_t idx = 0;
        while (leading_index(seq.rows[idx]) != l) ++idx;
        // left division: both operands lie in G_l, so the leading bit cancels
        g = coll.mul(seq.row_inv[idx], g);
    }
    return g;
}

namespace {

// Insert a new row (distinct lead guaranteed by the caller) and restore
// full echelon form.  Clearing bit lead(b) of a row only disturbs higher
// bits, so one ascending pass per row suffices.
void insert_row(InducedSequence& seq, ExpVec r, const Collector& coll) {
    int l = leading_index(r);
    auto pos = std::lower_bound(seq.rows.begin(), seq.rows.end(), r,
                                [](ExpVec a, ExpVec b) { return leading_index(a) < leading_index(b); });
    std::size_t at = static_cast<std::size_t>(pos - seq.rows.begin());
    seq.rows.insert(pos, r);
    seq.row_inv.insert(seq.row_inv.begin() + at, coll.inverse(r));
    seq.lead_mask |= 1u << l;

    for (std::size_t a = 0; a < seq.rows.size(); ++a) {
        ExpVec row = seq.rows[a];
        for (std::size_t b = a + 1; b < seq.rows.size(); ++b) {
            int lb = leading_index(seq.rows[b]);
            if (row >> lb & 1u) row = coll.mul(row, seq.row_inv[b]);
        }
        if (row != seq.rows[a]) {
            seq.rows[a] = row;
            seq.row_inv[a] = coll.inverse(row);
        }
    }
}

}  // namespace

InducedSequence induced_sequence(std::span<const ExpVec> gens, const Collector& coll,
                                 bool normal_closure) {
    InducedSequence seq;
    const int n = coll.ngens();

    // min-lead-first worklist
    std::vector<ExpVec> work(gens.begin(), gens.end());
    auto lead_gt = [](ExpVec a, ExpVec b) { return leading_index(a) > leading_index(b); };
    std::make_heap(work.begin(), work.end(), lead_gt);

    auto push = [&](ExpVec g) {
        if (!g) return;
        work.push_back(g);
        std::push_heap(work.begin(), work.end(), lead_gt);
    };

    for (;;) {
        while (!work.empty()) {
            std::pop_heap(work.begin(), work.end(), lead_gt);
            ExpVec g = work.back();
            work.pop_back();
            ExpVec r = sift(seq, g, coll);
            if (!r) continue;
            insert_row(seq, r, coll);
            for (ExpVec row : seq.rows) {
                push(coll.mul(r, row));
                push(coll.mul(row, r));
            }
            push(coll.mul(r, r));
            if (normal_closure)
                for (int k = 0; k < n; ++k) push(coll.conjugate(r, 1u << k));
        }
        // closure certificate; any failing witness is re-queued
        bool ok = true;
        for (std::size_t i = 0; i < seq.rows.size() && ok; ++i) {
            if (sift(seq, coll.mul(seq.rows[i], seq.rows[i]), coll)) {
                push(coll.mul(seq.rows[i], seq.rows[i]));
                ok = false;
                break;
            }
            for (std::size_t j = 0; j < seq.rows.size() && ok; ++j)
                if (sift(seq, coll.mul(seq.rows[i], seq.rows[j]), coll)) {
                    push(coll.mul(seq.rows[i], seq.rows[j]));
                    ok = false;
                }
            if (normal_closure)
                for (int k = 0; k < n && ok; ++k) {
                    ExpVec c = coll.conjugate(seq.rows[i], 1u << k);
                    if (sift(seq, c, coll)) {
                        push(c);
                        ok = false;
                    }
                }
        }
        if (ok) break;
    }
    return seq;
}

InducedSequence frattini_subgroup(const Collector& coll) {
    const auto& pres = coll.presentation();
    std::vector<ExpVec> gens;
    for (int i = 0; i < pres.ngens; ++i) {
        if (pres.power_tail[i]) gens.push_back(pres.power_tail[i]);
        for (int j = i + 1; j < pres.ngens; ++j)
            if (pres.comm_tail[j][i]) gens.push_back(pres.comm_tail[j][i]);
    }
    return induced_sequence(gens, coll, /*normal_closure=*/true);
}

std::vector<InducedSequence> lower_p_central_series(const Collector& coll) {
    const int n = coll.ngens();
    std::vector<ExpVec> all;
    for (int i = 0; i < n; ++i) all.push_back(1u << i);
    std::vector<InducedSequence> series;
    series.push_back(induced_sequence(all, coll, true));

    while (!series.back().trivial()) {
        std::vector<ExpVec> gens;
        for (ExpVec r : series.back().rows) {
            gens.push_back(coll.mul(r, r));
            for (int k = 0; k < n; ++k) gens.push_back(coll.commutator(r, 1u << k));
        }
        InducedSequence next = induced_sequence(gens, coll, true);
        if (next.rows.size() >= series.back().rows.size())
            throw std::runtime_error("lower_p_central_series: series failed to descend");
        series.push_back(std::move(next));
    }
    return series;
}

int p_class(const Collector& coll) {
    auto series = lower_p_central_series(coll);
    // number of nontrivial terms
    int c = 0;
    for (const auto& s : series)
        if (!s.trivial()) ++c;
    return c;
}

}  // namespace vkg
