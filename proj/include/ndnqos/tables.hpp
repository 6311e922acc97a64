#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ndnqos/names.hpp"
#include "ndnqos/packets.hpp"
#include "ndnqos/rng.hpp"
#include "ndnqos/types.hpp"

namespace ndnqos {

// ---------------------------------------------------------------------------
// Pending Interest Table
// ---------------------------------------------------------------------------

struct PitEntry {
    Name name;
    ServiceLevel level;
    std::vector<FaceId> downstream; ///< faces waiting for the Data; nonempty
    SimTime created_at = 0;
    SimTime expires_at = 0;

    bool has_face(FaceId f) const;
    void add_face(FaceId f);
};

enum class PitInsertStatus { Inserted, InsertedAfterEvicting, Dropped };

struct PitInsertResult {
    PitInsertStatus status;
    std::optional<Name> evicted; ///< set iff InsertedAfterEvicting
};

/// Capacity-bounded, priority-aware PIT. At most one entry per name; expired
/// entries are treated as absent and purged on access.
class PitTable {
public:
    explicit PitTable(std::size_t capacity) : capacity_(capacity) {}

    /// Admission per the saturation rule: below capacity insert; at capacity
    /// evict the lowest-priority entry (oldest first within a rank) only if
    /// it ranks strictly below the newcomer, otherwise drop the newcomer.
    /// Inserting an existing name merges faces and refreshes the expiry
    /// (Interest aggregation keeps the single-entry-per-name invariant).
    PitInsertResult insert(PitEntry entry);

    /// Mutable access for aggregation/refresh; purges expired entries first.
    PitEntry* find(const Name& name, SimTime now);

    /// Consumes (removes) the entry and returns its downstream faces.
    std::optional<std::vector<FaceId>> lookup_consume(const Name& name, SimTime now);

    void purge_expired(SimTime now);

    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    const std::vector<PitEntry>& entries() const { return entries_; }

private:
    std::vector<PitEntry> entries_;
    std::size_t capacity_;
};

// ---------------------------------------------------------------------------
// Content Store
// ---------------------------------------------------------------------------

enum class CacheStrategy { Always, Probabilistic };

struct CsEntry {
    Name name;
    Data data;
    ServiceLevel level;
    SimTime last_used = 0;
    bool pitless = false; ///< stored without a matching PIT entry
};

enum class CsInsertStatus { Stored, StoredAfterEvicting, Rejected };

struct CsInsertResult {
    CsInsertStatus status;
    std::optional<Name> evicted;
};

/// Capacity-bounded cache with priority replacement and LRU within a rank.
/// PIT-less entries are the preferred victims inside their priority class.
class CsTable {
public:
    CsTable(std::size_t capacity, CacheStrategy strategy = CacheStrategy::Always,
            double p_reg = 0.30, double p_rel = 0.70)
        : capacity_(capacity), strategy_(strategy), p_reg_(p_reg), p_rel_(p_rel) {}

    /// Caching decision. Always: cache everything that matched a PIT entry;
    /// PIT-less Data only when marked (regular PIT-less Data is dropped, not
    /// cached). Probabilistic: one draw against p_rel for reliable content,
    /// p_reg otherwise.
    bool decide(ServiceLevel level, bool has_pit, Rng& rng) const;

    /// Replacement: same name overwrites in place; below capacity stores; at
    /// capacity evicts the lowest-priority entry not above the newcomer's
    /// rank (PIT-less first within a rank, then LRU), or rejects when every
    /// resident outranks the newcomer.
    CsInsertResult insert(CsEntry entry);

    /// Exact-name match; refreshes last_used on hit.
    const Data* lookup(const Name& name, SimTime now);

    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    CacheStrategy strategy() const { return strategy_; }
    double p_reg() const { return p_reg_; }
    double p_rel() const { return p_rel_; }
    const std::vector<CsEntry>& entries() const { return entries_; }

private:
    std::vector<CsEntry> entries_; // insertion order doubles as the tie-break
    std::size_t capacity_;
    CacheStrategy strategy_;
    double p_reg_;
    double p_rel_;
};

} // namespace ndnqos
