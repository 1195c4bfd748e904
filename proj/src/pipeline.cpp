#include "vkg/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace vkg {

namespace fs = std::filesystem;

std::uint64_t presentation_hash(const PcPresentation& pres) {
    // FNV-1a over the serialized tails
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint32_t v) {
        for (int b = 0; b < 4; ++b) {
            h ^= (v >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint32_t>(pres.ngens));
    for (int i = 0; i < pres.ngens; ++i) {
        mix(pres.power_tail[i]);
        for (int j = i + 1; j < pres.ngens; ++j) mix(pres.comm_tail[j][i]);
    }
    return h;
}

std::string factored(std::int64_t n) {
    if (n <= 0) return std::to_string(n);
    int k = std::countr_zero(static_cast<std::uint64_t>(n));
    std::int64_t odd = n >> k;
    std::ostringstream os;
    if (k == 0) return std::to_string(n);
    os << "2^" << k;
    if (odd != 1) os << "*" << odd;
    return os.str();
}

// ---- cache -----------------------------------------------------------------

namespace {
constexpr int kCacheVersion = 1;
}

bool cache_load(const std::string& dir, int order, int id, std::uint64_t phash,
                InvariantRecord& out) {
    if (dir.empty()) return false;
    std::ostringstream name;
    name << dir << "/o" << order << "_id" << id << ".rec";
    std::ifstream in(name.str());
    if (!in) return false;

    InvariantRecord rec;
    int version = -1;
    std::uint64_t stored_hash = 0;
    std::string key;
    bool ok = true;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream is(line);
        if (!(is >> key)) continue;
        if (key == "vkg-cache") ok = ok && bool(is >> version);
        else if (key == "order") ok = ok && bool(is >> rec.order);
        else if (key == "id") ok = ok && bool(is >> rec.catalogue_id);
        else if (key == "phash") ok = ok && bool(is >> std::hex >> stored_hash >> std::dec);
        else if (key == "v_order_log2") ok = ok && bool(is >> rec.v_order_log2);
        else if (key == "center_order_log2") ok = ok && bool(is >> rec.center_order_log2);
        else if (key == "frattini_order_log2") ok = ok && bool(is >> rec.frattini_order_log2);
        else if (key == "center_exponent") ok = ok && bool(is >> rec.center_exponent);
        else if (key == "center_involutions") ok = ok && bool(is >> rec.center_involutions);
        else if (key == "p_class") ok = ok && bool(is >> rec.p_class);
        else if (key == "involutions") ok = ok && bool(is >> rec.involutions);
        else if (key == "tiers") ok = ok && bool(is >> rec.tier_mask);
        else if (key == "timing") {
            std::string what;
            double ms;
            if (is >> what >> ms) rec.timings_ms.emplace_back(what, ms);
        } else ok = false;
    }
    if (!ok || version != kCacheVersion || rec.order != order || rec.catalogue_id != id ||
        stored_hash != phash) {
        if (version >= 0 && version != kCacheVersion)
            return false;  // version mismatch: plain miss
        if (!ok)
            std::cerr << "warning: ignoring corrupt cache file " << name.str() << "\n";
        return false;
    }
    out = rec;
    return true;
}

void cache_store(const std::string& dir, const InvariantRecord& rec, std::uint64_t phash) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ostringstream name;
    name << dir << "/o" << rec.order << "_id" << rec.catalogue_id << ".rec";
    std::string tmp = name.str() + ".tmp";
    {
        std::ofstream out(tmp);
        out << "vkg-cache " << kCacheVersion << "\n";
        out << "order " << rec.order << "\n";
        out << "id " << rec.catalogue_id << "\n";
        out << "phash " << std::hex << phash << std::dec << "\n";
        out << "v_order_log2 " << rec.v_order_log2 << "\n";
        out << "tiers " << rec.tier_mask << "\n";
        if (rec.center_order_log2 >= 0) out << "center_order_log2 " << rec.center_order_log2 << "\n";
        if (rec.frattini_order_log2 >= 0)
            out << "frattini_order_log2 " << rec.frattini_order_log2 << "\n";
        if (rec.center_exponent >= 0) out << "center_exponent " << rec.center_exponent << "\n";
        if (rec.center_involutions >= 0)
            out << "center_involutions " << rec.center_involutions << "\n";
        if (rec.p_class >= 0) out << "p_class " << rec.p_class << "\n";
        if (rec.involutions >= 0) out << "involutions " << rec.involutions << "\n";
        for (const auto& [what, ms] : rec.timings_ms) out << "timing " << what << " " << ms << "\n";
    }
    fs::rename(tmp, name.str(), ec);
    if (ec) std::cerr << "warning: could not write cache file " << name.str() << "\n";
}

// ---- record computation with cache merge ------------------------------------

namespace {

void merge_into(InvariantRecord& dst, const InvariantRecord& src) {
    if (src.tier_mask & kTier1) {
        dst.center_order_log2 = src.center_order_log2;
        dst.frattini_order_log2 = src.frattini_order_log2;
    }
    if (src.tier_mask & kTier2) {
        dst.center_exponent = src.center_exponent;
        dst.center_involutions = src.center_involutions;
        dst.p_class = src.p_class;
    }
    if (src.tier_mask & kTier3) dst.involutions = src.involutions;
    dst.tier_mask |= src.tier_mask;
    for (const auto& [what, ms] : src.timings_ms) {
        std::erase_if(dst.timings_ms, [&](const auto& t) { return t.first == what; });
        dst.timings_ms.emplace_back(what, ms);
    }
}

// Restrict a record to the given tiers (the cache may know more than the
// caller asked for; reports must not depend on cache state).
InvariantRecord trimmed(const InvariantRecord& rec, unsigned tiers) {
    InvariantRecord out;
    out.order = rec.order;
    out.catalogue_id = rec.catalogue_id;
    out.v_order_log2 = rec.v_order_log2;
    InvariantRecord src = rec;
    src.tier_mask &= tiers;
    merge_into(out, src);
    if (!(out.tier_mask & kTier1)) { out.center_order_log2 = -1; out.frattini_order_log2 = -1; }
    if (!(out.tier_mask & kTier2)) {
        out.center_exponent = -1;
        out.center_involutions = -1;
        out.p_class = -1;
    }
    if (!(out.tier_mask & kTier3)) out.involutions = -1;
    return out;
}

}  // namespace

InvariantRecord record_for(const CatalogueEntry& entry, unsigned tiers,
                           const PipelineOptions& opt) {
    std::uint64_t phash = presentation_hash(entry.presentation);
    InvariantRecord rec;
    rec.order = entry.order;
    rec.catalogue_id = entry.catalogue_id;
    rec.v_order_log2 = entry.order - 1;

    InvariantRecord cached;
    if (!opt.force && cache_load(opt.cache_dir, entry.order, entry.catalogue_id, phash, cached))
        merge_into(rec, cached);

    unsigned missing = tiers & ~rec.tier_mask;
    if (missing) {
        ComputeOptions copt;
        copt.threads = opt.threads;
        copt.split_bits = opt.split_bits;
        InvariantRecord fresh = compute_record(entry, missing, copt);
        merge_into(rec, fresh);
        cache_store(opt.cache_dir, rec, phash);
    }
    return rec;
}

// ---- split ------------------------------------------------------------------

namespace {

// Invariant vector restricted to the tiers both records have computed.
std::string separating_invariant(const InvariantRecord& a, const InvariantRecord& b) {
    if (a.has(kTier1) && b.has(kTier1)) {
        if (a.center_order_log2 != b.center_order_log2) return "center_order";
        if (a.frattini_order_log2 != b.frattini_order_log2) return "frattini_order";
    }
    if (a.has(kTier2) && b.has(kTier2)) {
        if (a.center_exponent != b.center_exponent) return "center_exponent";
        if (a.center_involutions != b.center_involutions) return "center_involutions";
        if (a.p_class != b.p_class) return "p_class";
    }
    if (a.has(kTier3) && b.has(kTier3)) {
        if (a.involutions != b.involutions) return "involutions";
    }
    return "";
}

std::vector<std::int64_t> vector_of(const InvariantRecord& r) {
    std::vector<std::int64_t> v;
    if (r.has(kTier1)) { v.push_back(r.center_order_log2); v.push_back(r.frattini_order_log2); }
    if (r.has(kTier2)) {
        v.push_back(r.center_exponent);
        v.push_back(r.center_involutions);
        v.push_back(r.p_class);
    }
    if (r.has(kTier3)) v.push_back(r.involutions);
    return v;
}

}  // namespace

SplitReport split_groups(const Catalogue& cat, int order, unsigned tiers,
                         const PipelineOptions& opt) {
    SplitReport report;
    report.order = order;
    tiers |= kTier1;  // families are keyed by the tier-1 pair
    report.tiers = tiers;

    auto eligible = cat.eligible_groups(order);
    std::vector<const CatalogueEntry*> groups(eligible.begin(), eligible.end());
    std::sort(groups.begin(), groups.end(),
              [](auto* a, auto* b) { return a->catalogue_id < b->catalogue_id; });

    std::map<int, InvariantRecord> records;  // id -> record
    std::map<int, std::string> failed;

    auto run_tier = [&](unsigned tier, const std::vector<const CatalogueEntry*>& todo) {
        if (tier == kTier3) {
            // involution counting parallelizes internally; keep groups serial
            for (auto* e : todo) {
                try {
                    unsigned want = records[e->catalogue_id].tier_mask | tier;
                    records[e->catalogue_id] = trimmed(record_for(*e, want, opt), want);
                } catch (const std::exception& ex) {
                    failed[e->catalogue_id] = ex.what();
                }
            }
        } else {
            std::atomic<std::size_t> next{0};
            std::mutex mu;
            int nthreads = std::max(1, std::min<int>(opt.threads, static_cast<int>(todo.size())));
            PipelineOptions gopt = opt;
            gopt.threads = 1;  // per-group work is single-threaded below tier 3
            auto worker = [&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= todo.size()) return;
                    const CatalogueEntry* e = todo[i];
                    try {
                        unsigned want;
                        {
                            std::lock_guard<std::mutex> lk(mu);
                            want = records[e->catalogue_id].tier_mask | tier;
                        }
                        InvariantRecord r = trimmed(record_for(*e, want, gopt), want);
                        std::lock_guard<std::mutex> lk(mu);
                        records[e->catalogue_id] = r;
                    } catch (const std::exception& ex) {
                        std::lock_guard<std::mutex> lk(mu);
                        failed[e->catalogue_id] = ex.what();
                    }
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
    };

    std::vector<const CatalogueEntry*> remaining = groups;
    for (unsigned tier : {kTier1, kTier2, kTier3}) {
        if (!(tiers & tier)) continue;
        run_tier(tier, remaining);
        if (!opt.early_stop) continue;
        // groups whose invariant vector is already unique stop here
        std::map<std::vector<std::int64_t>, int> counts;
        for (auto* e : remaining)
            if (!failed.count(e->catalogue_id)) ++counts[vector_of(records[e->catalogue_id])];
        std::vector<const CatalogueEntry*> still;
        for (auto* e : remaining) {
            if (failed.count(e->catalogue_id)) continue;
            if (counts[vector_of(records[e->catalogue_id])] > 1) still.push_back(e);
        }
        remaining = std::move(still);
    }

    for (auto* e : groups) {
        if (failed.count(e->catalogue_id)) {
            report.failures.emplace_back(e->catalogue_id, failed[e->catalogue_id]);
            continue;
        }
        report.records.push_back(records[e->catalogue_id]);
    }

    // families by the tier-1 pair
    std::map<std::pair<int, int>, std::vector<int>> fam;
    for (const auto& r : report.records)
        fam[{r.center_order_log2, r.frattini_order_log2}].push_back(r.catalogue_id);
    for (auto& [key, ids] : fam) {
        Family f;
        f.center_order_log2 = key.first;
        f.frattini_order_log2 = key.second;
        std::sort(ids.begin(), ids.end());
        f.ids = ids;
        report.families.push_back(f);
    }

    // pairwise resolution inside each family
    auto record_of = [&](int id) -> const InvariantRecord& {
        for (const auto& r : report.records)
            if (r.catalogue_id == id) return r;
        throw std::logic_error("split_groups: record lookup");
    };
    for (const auto& f : report.families)
        for (std::size_t i = 0; i < f.ids.size(); ++i)
            for (std::size_t j = i + 1; j < f.ids.size(); ++j) {
                PairResolution pr;
                pr.a = f.ids[i];
                pr.b = f.ids[j];
                pr.separated_by = separating_invariant(record_of(pr.a), record_of(pr.b));
                if (pr.separated_by.empty()) report.unresolved_pairs.emplace_back(pr.a, pr.b);
                report.resolutions.push_back(pr);
            }
    return report;
}

// ---- rendering ---------------------------------------------------------------

namespace {

std::string pow2(int log2) {
    std::ostringstream os;
    if (log2 < 10) os << (1 << log2);
    else os << "2^" << log2;
    return os.str();
}

}  // namespace

std::string render_markdown(const SplitReport& report) {
    std::ostringstream os;
    os << "# Normalized unit group invariants, groups of order " << report.order << "\n\n";
    os << "Toolkit: " << report.toolkit_version << ". Tiers:";
    if (report.tiers & kTier1) os << " 1 (center order, Frattini order)";
    if (report.tiers & kTier2) os << "; 2 (center exponent, center involutions, p-class)";
    if (report.tiers & kTier3) os << "; 3 (involution count)";
    os << ".\n\n";

    os << "## Families by (center order, Frattini order) of V(KG)\n\n";
    os << "| Family | Groups | Center order | Frattini order |\n";
    os << "|-------:|:-------|:-------------|:---------------|\n";
    int fam = 1;
    for (const auto& f : report.families) {
        os << "| " << fam++ << " | ";
        for (std::size_t i = 0; i < f.ids.size(); ++i) os << (i ? ", " : "") << f.ids[i];
        os << " | " << pow2(f.center_order_log2) << " | " << pow2(f.frattini_order_log2) << " |\n";
    }
    os << "\n";

    os << "## Invariants per group\n\n";
    os << "| Group | Center order | Frattini order | Center exponent | Center involutions | "
          "p-class | Involutions |\n";
    os << "|------:|:---|:---|:---|:---|:---|:---|\n";
    for (const auto& r : report.records) {
        os << "| " << r.catalogue_id << " | ";
        os << (r.has(kTier1) ? pow2(r.center_order_log2) : std::string("-")) << " | ";
        os << (r.has(kTier1) ? pow2(r.frattini_order_log2) : std::string("-")) << " | ";
        os << (r.has(kTier2) ? std::to_string(r.center_exponent) : std::string("-")) << " | ";
        os << (r.has(kTier2) ? std::to_string(r.center_involutions) : std::string("-")) << " | ";
        os << (r.has(kTier2) ? std::to_string(r.p_class) : std::string("-")) << " | ";
        os << (r.has(kTier3) ? factored(r.involutions) : std::string("-")) << " |\n";
    }
    os << "\n";

    os << "## Resolution\n\n";
    if (report.unresolved_pairs.empty()) {
        os << "All eligible groups are separated by the computed invariants.\n";
    } else {
        os << "Unresolved pairs (all computed invariants agree):\n\n";
        for (const auto& [a, b] : report.unresolved_pairs)
            os << "- (" << a << ", " << b << ")\n";
    }
    os << "\n";

    if (!report.failures.empty()) {
        os << "## Failures\n\n";
        for (const auto& [id, what] : report.failures)
            os << "- group " << id << ": " << what << "\n";
        os << "\n";
    }
    return os.str();
}

std::string render_csv(const SplitReport& report) {
    std::ostringstream os;
    os << "order,id,invariant,value,runtime_ms\n";
    for (const auto& r : report.records) {
        auto timing = [&](const std::string& what) -> std::string {
            for (const auto& [k, ms] : r.timings_ms)
                if (k == what) {
                    std::ostringstream t;
                    t << ms;
                    return t.str();
                }
            return "";
        };
        auto row = [&](const std::string& name, std::int64_t value, const std::string& tkey) {
            os << r.order << "," << r.catalogue_id << "," << name << "," << value << ","
               << timing(tkey) << "\n";
        };
        if (r.has(kTier1)) {
            row("center_order_log2", r.center_order_log2, "center_order");
            row("frattini_order_log2", r.frattini_order_log2, "frattini_order");
        }
        if (r.has(kTier2)) {
            row("center_exponent", r.center_exponent, "center_structure");
            row("center_involutions", r.center_involutions, "center_structure");
            row("p_class", r.p_class, "p_class");
        }
        if (r.has(kTier3)) row("involutions", r.involutions, "involutions");
    }
    return os.str();
}

}  // namespace vkg
