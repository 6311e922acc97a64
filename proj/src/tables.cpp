#include "ndnqos/tables.hpp"

#include <algorithm>

namespace ndnqos {

bool PitEntry::has_face(FaceId f) const {
    return std::find(downstream.begin(), downstream.end(), f) != downstream.end();
}

void PitEntry::add_face(FaceId f) {
    if (!has_face(f))
        downstream.push_back(f);
}

void PitTable::purge_expired(SimTime now) {
    std::erase_if(entries_, [now](const PitEntry& e) { return e.expires_at <= now; });
}

PitInsertResult PitTable::insert(PitEntry entry) {
    purge_expired(entry.created_at);

    for (auto& e : entries_) {
        if (e.name == entry.name) { // aggregation: merge, keep one entry per name
            for (const FaceId f : entry.downstream)
                e.add_face(f);
            e.expires_at = std::max(e.expires_at, entry.expires_at);
            return {PitInsertStatus::Inserted, std::nullopt};
        }
    }

    if (entries_.size() < capacity_) {
        entries_.push_back(std::move(entry));
        return {PitInsertStatus::Inserted, std::nullopt};
    }
    if (capacity_ == 0)
        return {PitInsertStatus::Dropped, std::nullopt};

    // Victim: minimal priority, oldest created_at within it (vector order is
    // insertion order, so strict < keeps the earliest on exact ties).
    std::size_t victim = 0;
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        const int vp = pit_priority(entries_[victim].level);
        const int ip = pit_priority(entries_[i].level);
        if (ip < vp || (ip == vp && entries_[i].created_at < entries_[victim].created_at))
            victim = i;
    }

    if (pit_priority(entries_[victim].level) >= pit_priority(entry.level))
        return {PitInsertStatus::Dropped, std::nullopt};

    Name evicted = entries_[victim].name;
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(victim));
    entries_.push_back(std::move(entry));
    return {PitInsertStatus::InsertedAfterEvicting, std::move(evicted)};
}

PitEntry* PitTable::find(const Name& name, SimTime now) {
    purge_expired(now);
    for (auto& e : entries_)
        if (e.name == name)
            return &e;
    return nullptr;
}

std::optional<std::vector<FaceId>> PitTable::lookup_consume(const Name& name, SimTime now) {
    purge_expired(now);
    for (auto it = entries_.begin(); it != entries_.end(); ++it) {
        if (it->name == name) {
            std::vector<FaceId> faces = std::move(it->downstream);
            entries_.erase(it);
            return faces;
        }
    }
    return std::nullopt;
}

bool CsTable::decide(ServiceLevel level, bool has_pit, Rng& rng) const {
    if (strategy_ == CacheStrategy::Always)
        return has_pit || level.marked();
    return rng.chance(level.reliable() ? p_rel_ : p_reg_);
}

CsInsertResult CsTable::insert(CsEntry entry) {
    for (auto& e : entries_) {
        if (e.name == entry.name) { // refresh in place
            e = std::move(entry);
            return {CsInsertStatus::Stored, std::nullopt};
        }
    }

    if (entries_.size() < capacity_) {
        entries_.push_back(std::move(entry));
        return {CsInsertStatus::Stored, std::nullopt};
    }
    if (capacity_ == 0)
        return {CsInsertStatus::Rejected, std::nullopt};

    // Victim among entries not outranking the newcomer: lowest priority
    // first, PIT-less before regular residents of the same rank, then LRU.
    const int incoming = cs_priority(entry.level);
    std::ptrdiff_t victim = -1;
    auto key = [this](std::size_t i) {
        const CsEntry& e = entries_[i];
        return std::tuple<int, int, SimTime>(cs_priority(e.level), e.pitless ? 0 : 1, e.last_used);
    };
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (cs_priority(entries_[i].level) > incoming)
            continue;
        if (victim < 0 || key(i) < key(static_cast<std::size_t>(victim)))
            victim = static_cast<std::ptrdiff_t>(i);
    }
    if (victim < 0)
        return {CsInsertStatus::Rejected, std::nullopt};

    Name evicted = entries_[static_cast<std::size_t>(victim)].name;
    entries_.erase(entries_.begin() + victim);
    entries_.push_back(std::move(entry));
    return {CsInsertStatus::StoredAfterEvicting, std::move(evicted)};
}

const Data* CsTable::lookup(const Name& name, SimTime now) {
    for (auto& e : entries_) {
        if (e.name == name) {
            e.last_used = now;
            return &e.data;
        }
    }
    return nullptr;
}

} // namespace ndnqos
