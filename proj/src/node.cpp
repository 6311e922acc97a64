#include "ndnqos/node.hpp"

#include "ndnqos/engine.hpp"
#include "ndnqos/scenario.hpp"

namespace ndnqos {

bool Fib::add(Name prefix, NodeId next_hop) {
    for (const auto& e : entries_)
        if (e.prefix == prefix)
            return false;
    entries_.push_back({std::move(prefix), next_hop});
    return true;
}

const FibEntry* Fib::longest_match(const Name& name) const {
    const FibEntry* best = nullptr;
    for (const auto& e : entries_) {
        if (!is_prefix_of(e.prefix, name))
            continue;
        if (best == nullptr || e.prefix.size() > best->prefix.size())
            best = &e;
    }
    return best;
}

namespace {

void count_cs_hit(NodeCounters& c, const Name& name) {
    ++c.cs_hits;
    if (const auto t = traffic_of(name)) {
        if (*t == TrafficKind::Actuator)
            ++c.cs_hits_actuator;
        else
            ++c.cs_hits_gateway;
    }
}

void count_eviction(NodeCounters& c, const CsInsertResult& res) {
    if (res.status == CsInsertStatus::StoredAfterEvicting)
        ++c.cs_evictions;
}

void send_data_toward(Simulation& sim, NodeState& node, FaceId face, const Data& data,
                      ServiceLevel level, bool* prompt_queue_drop) {
    if (face == kLocalFace) {
        sim.deliver_local(node, data);
        return;
    }
    const auto st = sim.enqueue_egress(node, static_cast<NodeId>(face), data, level);
    if (st == EnqueueStatus::DroppedFull && level.prompt() && prompt_queue_drop)
        *prompt_queue_drop = true;
}

} // namespace

void on_interest(Simulation& sim, NodeState& node, FaceId from, const Interest& interest) {
    const SimTime now = sim.now();
    const ServiceLevel level = node.classify(interest.name);

    if (const Data* cached = node.cs.lookup(interest.name, now)) {
        if (from != kLocalFace)
            count_cs_hit(node.counters, interest.name);
        send_data_toward(sim, node, from, *cached, level, nullptr);
        return;
    }

    const std::uint64_t h = hash_value(interest.name);
    if (node.recent_nonces.seen(h, interest.nonce)) {
        ++node.counters.dup_drops;
        return;
    }
    node.recent_nonces.remember(h, interest.nonce);

    if (PitEntry* entry = node.pit.find(interest.name, now)) {
        entry->expires_at = now + node.pit_lifetime;
        sim.schedule_pit_expiry(node.id, interest.name, entry->expires_at);
        if (!entry->has_face(from)) {
            entry->add_face(from); // aggregation: a new consumer joins the entry
            return;
        }
        // Same face asking again: a retransmission. The upstream copy may
        // have been lost or evicted, so it must be forwarded again.
    } else {
        PitEntry fresh{interest.name, level, {from}, now, now + node.pit_lifetime};
        const auto res = node.pit.insert(std::move(fresh));
        if (res.status == PitInsertStatus::Dropped) {
            ++node.counters.pit_drops;
            return;
        }
        if (res.status == PitInsertStatus::InsertedAfterEvicting)
            ++node.counters.pit_evictions;
        sim.schedule_pit_expiry(node.id, interest.name, now + node.pit_lifetime);
    }

    if (node.produces(interest.name)) {
        Data produced{interest.name, sim.config().payload_bytes};
        on_data(sim, node, kLocalFace, produced);
        return;
    }
    if (const FibEntry* route = node.fib.longest_match(interest.name)) {
        sim.enqueue_egress(node, route->next_hop, interest, level);
        return;
    }
    ++node.counters.no_route;
}

void on_data(Simulation& sim, NodeState& node, FaceId from, const Data& data) {
    (void)from; // Data is routed by the PIT trail alone
    const SimTime now = sim.now();
    const ServiceLevel level = node.classify(data.name);

    const auto faces = node.pit.lookup_consume(data.name, now);
    if (faces) {
        bool prompt_queue_drop = false;
        for (const FaceId f : *faces)
            send_data_toward(sim, node, f, data, level, &prompt_queue_drop);
        if (prompt_queue_drop) {
            // Exhausted priority queue: keep the prompt payload available at
            // the highest cache priority instead.
            count_eviction(node.counters,
                           node.cs.insert({data.name, data, kPromptReliable, now, false}));
        } else if (node.cs.decide(level, true, node.fwd_rng)) {
            count_eviction(node.counters, node.cs.insert({data.name, data, level, now, false}));
        }
        return;
    }

    // No PIT entry. Marked Data may still be cached, throttled per node.
    if (node.qos_enabled && level.marked() && node.pitless_limiter.try_take(now)) {
        if (node.cs.decide(level, false, node.fwd_rng)) {
            const auto res = node.cs.insert({data.name, data, level, now, true});
            count_eviction(node.counters, res);
            if (res.status != CsInsertStatus::Rejected) {
                ++node.counters.pitless_cached;
                return;
            }
        }
    }
    ++node.counters.pitless_dropped;
}

std::uint32_t consumer_request(Simulation& sim, NodeState& node, const Name& name,
                               TrafficKind traffic, int rank) {
    const SimTime now = sim.now();
    MetricsLog& log = sim.metrics();

    RequestRecord rec;
    rec.id = static_cast<std::uint32_t>(log.requests.size());
    rec.requester = node.id;
    rec.name = name;
    rec.level = node.classify(name);
    rec.traffic = traffic;
    rec.rank = rank;
    rec.first_sent = now;
    log.requests.push_back(rec);
    node.open_requests[name].push_back(rec.id);

    const SimTime interval = sim.config().retransmit_interval;
    const int retries = sim.config().max_retransmissions;
    for (int k = 1; k <= retries; ++k)
        sim.schedule_retransmit(node.id, rec.id, k, now + k * interval);
    // One interval after the last retransmission the request has failed.
    sim.schedule_retransmit(node.id, rec.id, retries + 1, now + (retries + 1) * interval);

    on_interest(sim, node, kLocalFace, Interest{name, node.fwd_rng.u32()});
    return rec.id;
}

void on_retransmit(Simulation& sim, NodeState& node, std::uint32_t request_id, int attempt) {
    RequestRecord& rec = sim.metrics().requests[request_id];
    if (rec.completed() || rec.failed)
        return; // satisfied or already settled; ladder is cancelled lazily

    if (attempt > sim.config().max_retransmissions) {
        rec.failed = true;
        auto it = node.open_requests.find(rec.name);
        if (it != node.open_requests.end()) {
            std::erase(it->second, request_id);
            if (it->second.empty())
                node.open_requests.erase(it);
        }
        return;
    }
    rec.retransmissions = attempt;
    on_interest(sim, node, kLocalFace, Interest{rec.name, node.fwd_rng.u32()});
}

void on_pit_expiry(Simulation& sim, NodeState& node, const Name& name) {
    (void)name; // refreshed entries survive; the purge checks actual expiry
    node.pit.purge_expired(sim.now());
}

} // namespace ndnqos
