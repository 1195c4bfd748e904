#include "vkg/catalogue.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace vkg {

Fingerprint compute_fingerprint(const GroupTable& t) {
    Fingerprint fp;
    fp.classes = static_cast<int>(conjugacy_classes(t).size());
    fp.center = std::popcount(center_of_group(t));
    fp.derived = std::popcount(derived_subgroup(t));
    fp.exponent = group_exponent(t);
    fp.abelian = is_abelian(t);
    int log2n = std::countr_zero(static_cast<unsigned>(t.order));
    fp.maxclass = !fp.abelian && nilpotency_class(t) == log2n - 1;
    return fp;
}

int expected_group_count(int order) {
    switch (order) {
        case 2: return 1;
        case 4: return 2;
        case 8: return 5;
        case 16: return 14;
        case 32: return 51;
        default: return -1;
    }
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& msg) {
    std::ostringstream os;
    os << path << ":" << line << ": " << msg;
    throw std::runtime_error(os.str());
}

std::vector<int> parse_indices(std::istringstream& is) {
    std::vector<int> v;
    int x;
    while (is >> x) v.push_back(x);
    return v;
}

}  // namespace

Catalogue Catalogue::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("catalogue: cannot open " + path);

    Catalogue cat;
    std::string line;
    int lineno = 0;

    CatalogueEntry cur;
    bool in_block = false;
    bool have_fp = false;

    auto finish_block = [&](int at_line) {
        if (!have_fp) parse_fail(path, at_line, "group block missing fp line");
        cur.presentation.validate();
        cur.table = build_group_table(cur.presentation);  // throws if inconsistent
        if (cur.table.order != cur.order)
            parse_fail(path, at_line, "declared order does not match ngens");
        Fingerprint fp = compute_fingerprint(cur.table);
        if (!(fp == cur.fingerprint)) {
            std::ostringstream os;
            os << "fingerprint mismatch for group " << cur.order << "#" << cur.catalogue_id
               << " (computed classes=" << fp.classes << " center=" << fp.center
               << " derived=" << fp.derived << " exponent=" << fp.exponent
               << " abelian=" << fp.abelian << " maxclass=" << fp.maxclass << ")";
            parse_fail(path, at_line, os.str());
        }
        ElemSet derived = derived_subgroup(cur.table);
        cur.abelianization = abelian_type(quotient_table(cur.table, derived));
        cat.entries_.push_back(cur);
        cur = CatalogueEntry{};
        in_block = false;
        have_fp = false;
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream is(line);
        std::string tok;
        if (!(is >> tok)) continue;

        if (tok == "group") {
            if (in_block) parse_fail(path, lineno, "nested group block (missing end?)");
            if (!(is >> cur.order >> cur.catalogue_id))
                parse_fail(path, lineno, "expected: group <order> <id>");
            in_block = true;
        } else if (tok == "ngens") {
            if (!in_block) parse_fail(path, lineno, "ngens outside group block");
            if (!(is >> cur.presentation.ngens) || cur.presentation.ngens < 1 ||
                cur.presentation.ngens > 5)
                parse_fail(path, lineno, "bad generator count");
            if (cur.order != (1 << cur.presentation.ngens))
                parse_fail(path, lineno, "order is not 2^ngens");
        } else if (tok == "p") {
            if (!in_block) parse_fail(path, lineno, "p line outside group block");
            int i;
            std::string colon;
            if (!(is >> i >> colon) || colon != ":")
                parse_fail(path, lineno, "expected: p <i> : <tail>");
            if (i < 1 || i > cur.presentation.ngens) parse_fail(path, lineno, "p index out of range");
            ExpVec tail = 0;
            int prev = i;
            for (int k : parse_indices(is)) {
                if (k <= prev || k > cur.presentation.ngens)
                    parse_fail(path, lineno, "power tail indices must be strictly increasing and above i");
                tail |= 1u << (k - 1);
                prev = k;
            }
            cur.presentation.power_tail[i - 1] = tail;
        } else if (tok == "c") {
            if (!in_block) parse_fail(path, lineno, "c line outside group block");
            int j, i;
            std::string colon;
            if (!(is >> j >> i >> colon) || colon != ":")
                parse_fail(path, lineno, "expected: c <j> <i> : <tail>");
            if (i < 1 || j <= i || j > cur.presentation.ngens)
                parse_fail(path, lineno, "commutator pair out of range (need j > i)");
            ExpVec tail = 0;
            int prev = i;
            for (int k : parse_indices(is)) {
                if (k <= prev || k > cur.presentation.ngens)
                    parse_fail(path, lineno, "commutator tail indices must be strictly increasing and above i");
                tail |= 1u << (k - 1);
                prev = k;
            }
            cur.presentation.comm_tail[j - 1][i - 1] = tail;
        } else if (tok == "fp") {
            if (!in_block) parse_fail(path, lineno, "fp line outside group block");
            std::string kv;
            while (is >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) parse_fail(path, lineno, "bad fp field: " + kv);
                std::string key = kv.substr(0, eq);
                int val = std::stoi(kv.substr(eq + 1));
                if (key == "classes") cur.fingerprint.classes = val;
                else if (key == "center") cur.fingerprint.center = val;
                else if (key == "derived") cur.fingerprint.derived = val;
                else if (key == "exponent") cur.fingerprint.exponent = val;
                else if (key == "abelian") cur.fingerprint.abelian = (val != 0);
                else if (key == "maxclass") cur.fingerprint.maxclass = (val != 0);
                else parse_fail(path, lineno, "unknown fp field: " + key);
            }
            have_fp = true;
        } else if (tok == "end") {
            if (!in_block) parse_fail(path, lineno, "end outside group block");
            finish_block(lineno);
        } else {
            parse_fail(path, lineno, "unknown directive: " + tok);
        }
    }
    if (in_block) parse_fail(path, lineno, "unexpected end of file inside group block");

    // ids must be unique and cover 1..count for every shipped order
    std::sort(cat.entries_.begin(), cat.entries_.end(), [](const auto& a, const auto& b) {
        return std::tie(a.order, a.catalogue_id) < std::tie(b.order, b.catalogue_id);
    });
    for (int order : {2, 4, 8, 16, 32}) {
        auto of = cat.of_order(order);
        int expected = expected_group_count(order);
        if (static_cast<int>(of.size()) != expected) {
            std::ostringstream os;
            os << "catalogue: order " << order << " has " << of.size() << " entries, expected "
               << expected;
            throw std::runtime_error(os.str());
        }
        for (int i = 0; i < expected; ++i)
            if (of[i]->catalogue_id != i + 1) {
                std::ostringstream os;
                os << "catalogue: order " << order << " ids are not exactly 1.." << expected;
                throw std::runtime_error(os.str());
            }
    }
    return cat;
}

const CatalogueEntry& Catalogue::entry(int order, int id) const {
    for (const auto& e : entries_)
        if (e.order == order && e.catalogue_id == id) return e;
    std::ostringstream os;
    os << "catalogue: no group " << order << "#" << id;
    throw std::out_of_range(os.str());
}

std::vector<const CatalogueEntry*> Catalogue::of_order(int order) const {
    std::vector<const CatalogueEntry*> v;
    for (const auto& e : entries_)
        if (e.order == order) v.push_back(&e);
    return v;
}

std::vector<const CatalogueEntry*> Catalogue::eligible_groups(int order) const {
    if (order != 16 && order != 32)
        throw std::invalid_argument("eligible_groups: only orders 16 and 32 are UMIP targets here");
    std::vector<const CatalogueEntry*> v;
    for (const CatalogueEntry* e : of_order(order)) {
        Fingerprint fp = compute_fingerprint(e->table);  // flags computed, not trusted
        if (!fp.abelian && !fp.maxclass) v.push_back(e);
    }
    return v;
}

}  // namespace vkg
