#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <queue>
#include <variant>
#include <vector>

#include "ndnqos/metrics.hpp"
#include "ndnqos/node.hpp"
#include "ndnqos/scenario.hpp"
#include "ndnqos/tables.hpp"
#include "ndnqos/topology.hpp"
#include "ndnqos/types.hpp"

namespace ndnqos {

/// Lossy wireless edge: fixed per-hop transmission time with delivery
/// jitter, independent per-transmission loss, and a uniform backoff window
/// retried while either endpoint's medium is busy.
struct LinkModel {
    SimTime base_delay = 5;
    SimTime delay_jitter = 2;
    double loss_prob = 0.10;
    SimTime backoff_min = 1;
    SimTime backoff_max = 8;

    bool draw_delivery(Rng& rng) const { return !rng.chance(loss_prob); }
    SimTime draw_jitter(Rng& rng) const { return rng.uniform(-delay_jitter, delay_jitter); }
    SimTime draw_backoff(Rng& rng) const { return rng.uniform(backoff_min, backoff_max); }
};

/// Test hook: one medium occupation (transmit or receive) of one node.
struct MediaHold {
    NodeId node;
    bool transmitting;
    SimTime start;
    SimTime end;
};

/// Full description of one run; identical configs (including the seed)
/// produce identical logs and traces.
struct SimConfig {
    std::uint64_t seed = 1;
    int duration_min = 18;
    Scenario scenario = Scenario::S1;
    QosMode qos = QosMode::Regular;
    CacheStrategy cache = CacheStrategy::Always;
    double p_reg = 0.30;
    double p_rel = 0.70;
    std::size_t pit_size = 5;
    std::size_t gateway_pit = 50;
    std::size_t cs_size = 5;
    std::size_t queue_depth = 8;
    SimTime pit_lifetime = 12000;
    SimTime retransmit_interval = 2000;
    int max_retransmissions = 4;
    double limiter_rate = 2.0;
    double limiter_burst = 2.0;
    std::uint32_t payload_bytes = 32;
    int warmup_min = 8; ///< actuator traffic start; 0 starts both flows together
    Topology topology = Topology::builtin();
    TrafficSpec traffic;
    LinkModel link; ///< uniform model; per-link overrides below
    std::map<std::pair<NodeId, NodeId>, LinkModel> link_overrides;
    std::ostream* trace = nullptr;            ///< optional event dump
    std::vector<MediaHold>* media_holds = nullptr; ///< optional test hook
};

/// Validates the configuration and executes the run to its duration.
MetricsLog run(const SimConfig& config);

// ---------------------------------------------------------------------------
// Event machinery (exposed for the pipeline and the scenario installer)
// ---------------------------------------------------------------------------

struct EvAppRequest {
    NodeId node;
    Name name;
    TrafficKind traffic;
    int rank;
};
struct EvRetransmit {
    NodeId node;
    std::uint32_t request_id;
    int attempt;
};
struct EvLinkDeliver {
    NodeId to;
    NodeId from;
    Packet packet;
};
struct EvMediaFree {
    NodeId node;
    bool retry; ///< true for a contention backoff recheck
};
struct EvPitExpiry {
    NodeId node;
    Name name;
};
struct EvMetricsTick {
    int minute;
};

using EventAction =
    std::variant<EvAppRequest, EvRetransmit, EvLinkDeliver, EvMediaFree, EvPitExpiry, EvMetricsTick>;

struct Event {
    SimTime at;
    std::uint64_t seq; ///< schedule order; the tie-break at equal times
    EventAction action;
};

class Simulation {
public:
    explicit Simulation(const SimConfig& config);

    /// Runs all events in (at, seq) order up to the duration and finalizes
    /// the log (in-flight requests become censored).
    MetricsLog take_log();

    SimTime now() const { return now_; }
    const SimConfig& config() const { return config_; }
    SimTime duration_ms() const { return static_cast<SimTime>(config_.duration_min) * 60000; }

    /// Scheduling in the past is a programming error and aborts the run.
    void schedule(SimTime at, EventAction action);

    NodeState& node(NodeId id);
    MetricsLog& metrics() { return log_; }

    /// Places a packet on the node's egress queue and kicks the transmitter;
    /// DroppedFull is reported back so the caller can apply the prompt-Data
    /// caching rule.
    EnqueueStatus enqueue_egress(NodeState& node, NodeId to, Packet packet, ServiceLevel level);

    /// Hands Data to the local application: completes every open request for
    /// that name.
    void deliver_local(NodeState& node, const Data& data);

    void schedule_pit_expiry(NodeId node, const Name& name, SimTime at);
    void schedule_retransmit(NodeId node, std::uint32_t request_id, int attempt, SimTime at);

private:
    struct LinkState {
        LinkModel model;
        Rng rng;
    };

    void run_loop();
    void execute(const Event& ev);
    void try_start_transmit(NodeState& node);
    void on_media_free(NodeState& node, bool retry);
    LinkState& link_between(NodeId from, NodeId to);
    void trace_event(const Event& ev);
    void count_transmission(NodeState& node, const Packet& packet);
    int minute_of(SimTime t) const;

    const SimConfig config_;
    SimTime now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::vector<NodeState> nodes_;
    std::map<NodeId, std::size_t> node_index_;
    std::map<std::pair<NodeId, NodeId>, LinkState> links_;
    MetricsLog log_;
    bool finished_ = false;

    struct EventAfter {
        bool operator()(const Event& a, const Event& b) const {
            return a.at > b.at || (a.at == b.at && a.seq > b.seq);
        }
    };
    std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
};

} // namespace ndnqos
