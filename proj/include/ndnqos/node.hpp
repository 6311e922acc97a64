#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <vector>

#include "ndnqos/egress.hpp"
#include "ndnqos/metrics.hpp"
#include "ndnqos/names.hpp"
#include "ndnqos/packets.hpp"
#include "ndnqos/rng.hpp"
#include "ndnqos/tables.hpp"
#include "ndnqos/types.hpp"

namespace ndnqos {

class Simulation;

struct FibEntry {
    Name prefix;
    NodeId next_hop;
};

/// Prefix -> single next hop (one parent toward the root, one child per
/// sensor subtree). Longest prefix match.
class Fib {
public:
    bool add(Name prefix, NodeId next_hop);
    const FibEntry* longest_match(const Name& name) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<FibEntry> entries_;
};

/// Ring of the last 64 (name, nonce) pairs for duplicate suppression.
class NonceRing {
public:
    bool seen(std::uint64_t name_hash, std::uint32_t nonce) const {
        for (std::size_t i = 0; i < count_; ++i)
            if (slots_[i] == std::pair{name_hash, nonce})
                return true;
        return false;
    }
    void remember(std::uint64_t name_hash, std::uint32_t nonce) {
        slots_[next_] = {name_hash, nonce};
        next_ = (next_ + 1) % slots_.size();
        count_ = std::min(count_ + 1, slots_.size());
    }

private:
    std::array<std::pair<std::uint64_t, std::uint32_t>, 64> slots_{};
    std::size_t next_ = 0;
    std::size_t count_ = 0;
};

/// Token bucket gating how often PIT-less Data may enter the cache.
struct TokenBucket {
    double rate_per_s = 2.0;
    double burst = 2.0;
    double tokens = 2.0;
    SimTime last = 0;

    bool try_take(SimTime now) {
        tokens = std::min(burst, tokens + rate_per_s * static_cast<double>(now - last) / 1000.0);
        last = now;
        if (tokens >= 1.0) {
            tokens -= 1.0;
            return true;
        }
        return false;
    }
};

enum class TxState { Idle, RetryPending, Transmitting };

/// Per-node forwarder state. Owned and driven by exactly one Simulation;
/// every operation runs on the engine's event loop.
struct NodeState {
    NodeId id = 0;
    bool qos_enabled = false;
    std::shared_ptr<const ClassTable> class_table;
    Fib fib;
    PitTable pit{5};
    CsTable cs{5};
    EgressQueue egress{8};
    std::vector<Name> produced_prefixes;
    NonceRing recent_nonces;
    TokenBucket pitless_limiter;
    SimTime pit_lifetime = 12000;
    NodeCounters counters;
    std::map<Name, std::vector<std::uint32_t>> open_requests;
    Rng fwd_rng{0};

    // transmitter runtime (engine-managed)
    SimTime busy_until = 0;
    TxState tx = TxState::Idle;

    ServiceLevel classify(const Name& name) const {
        return qos_enabled && class_table ? class_table->classify(name) : kRegular;
    }
    bool produces(const Name& name) const {
        return std::any_of(produced_prefixes.begin(), produced_prefixes.end(),
                           [&](const Name& p) { return is_prefix_of(p, name); });
    }
};

/// The forwarding pipeline: cache lookup, duplicate suppression, PIT
/// aggregation (a re-request from a face already waiting is a consumer
/// retransmission and is forwarded again), priority PIT admission, then
/// producer or FIB dispatch.
void on_interest(Simulation& sim, NodeState& node, FaceId from, const Interest& interest);

/// Data path: consume the PIT entry and forward to every waiting face, then
/// run the caching decision; PIT-less Data is only considered for the cache
/// when marked and admitted by the rate limiter.
void on_data(Simulation& sim, NodeState& node, FaceId from, const Data& data);

/// Opens a request record, sends the first Interest from the local face and
/// schedules the retransmission ladder (fresh nonce every 2 s, four times);
/// the request fails 10 s after the first transmission.
std::uint32_t consumer_request(Simulation& sim, NodeState& node, const Name& name,
                               TrafficKind traffic, int rank);

void on_retransmit(Simulation& sim, NodeState& node, std::uint32_t request_id, int attempt);
void on_pit_expiry(Simulation& sim, NodeState& node, const Name& name);

} // namespace ndnqos
