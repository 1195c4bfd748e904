#pragma once

#include <string>
#include <vector>

#include "vkg/pcgroup.hpp"

// The shipped group data: consistent PC presentations for all 2-groups of
// order <= 32, keyed by the standard small-groups catalogue numbering.
// Every entry is re-verified on load: full-enumeration consistency plus a
// recomputed fingerprint that must match the stored one.

namespace vkg {

struct Fingerprint {
    int classes = 0;
    int center = 0;
    int derived = 0;
    int exponent = 0;
    bool abelian = false;
    bool maxclass = false;

    bool operator==(const Fingerprint&) const = default;
};

struct CatalogueEntry {
    int order = 0;
    int catalogue_id = 0;
    PcPresentation presentation;
    Fingerprint fingerprint;          // stored copy (corruption guard)
    GroupTable table;                 // built on load
    std::vector<int> abelianization;  // cyclic factor orders of G/G'
};

Fingerprint compute_fingerprint(const GroupTable& t);

class Catalogue {
  public:
    static Catalogue load(const std::string& path);

    const CatalogueEntry& entry(int order, int id) const;
    std::vector<const CatalogueEntry*> of_order(int order) const;

    // The groups the tables cover: neither abelian nor of maximal class.
    // Only orders 16 and 32 are valid targets.
    std::vector<const CatalogueEntry*> eligible_groups(int order) const;

    const std::vector<CatalogueEntry>& entries() const { return entries_; }

  private:
    std::vector<CatalogueEntry> entries_;
};

// Expected number of groups per order (2-groups of order <= 32).
int expected_group_count(int order);

}  // namespace vkg
