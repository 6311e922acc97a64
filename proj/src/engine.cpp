#include "ndnqos/engine.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace ndnqos {

namespace {

void validate(const SimConfig& c) {
    auto fail = [](const std::string& what) { throw ConfigError("config: " + what); };
    if (c.duration_min < 1) fail("duration must be at least one minute");
    if (c.pit_size == 0 || c.gateway_pit == 0) fail("PIT capacity must be positive");
    if (c.cs_size == 0) fail("CS capacity must be positive");
    if (c.queue_depth == 0) fail("queue depth must be positive");
    if (c.p_reg < 0.0 || c.p_reg > c.p_rel || c.p_rel > 1.0) fail("need 0 <= p_reg <= p_rel <= 1");
    if (c.link.base_delay < 1) fail("base_delay must be positive");
    if (c.link.delay_jitter < 0 || c.link.delay_jitter > c.link.base_delay)
        fail("delay_jitter must be in [0, base_delay]");
    if (c.link.loss_prob < 0.0 || c.link.loss_prob > 1.0) fail("loss_prob must be in [0,1]");
    if (c.link.backoff_min < 1 || c.link.backoff_max < c.link.backoff_min)
        fail("backoff window must satisfy 1 <= min <= max");
    if (c.limiter_rate <= 0.0 || c.limiter_burst < 1.0) fail("bad PIT-less rate limiter");
    if (c.traffic.sensor_period < 1 || c.traffic.actuator_period < 1) fail("periods must be positive");
    if (c.traffic.sensor_jitter < 0 || c.traffic.sensor_jitter >= c.traffic.sensor_period)
        fail("sensor jitter must be below the period");
    if (c.traffic.actuator_jitter < 0 || c.traffic.actuator_jitter >= c.traffic.actuator_period)
        fail("actuator jitter must be below the period");
    if (c.traffic.group_count < 1) fail("group count must be positive");
    if (c.warmup_min < 0 || c.warmup_min > c.duration_min) fail("warmup outside the run duration");
    if (c.retransmit_interval < 1 || c.max_retransmissions < 0) fail("bad retransmission policy");
    if (c.payload_bytes == 0) fail("payload must be nonempty");
    if (c.topology.nodes.empty() || !c.topology.has_node(c.topology.gateway))
        fail("topology has no gateway");
}


} // namespace

Simulation::Simulation(const SimConfig& config) : config_(config) {
    validate(config_);
    const Topology& topo = config_.topology;

    log_.info.scenario = to_string(config_.scenario);
    log_.info.qos = to_string(config_.qos);
    log_.info.cache = config_.cache == CacheStrategy::Always ? "always" : "prob";
    log_.info.pit_size = config_.pit_size;
    log_.info.gateway_pit = config_.gateway_pit;
    log_.info.cs_size = config_.cs_size;
    log_.info.seed = config_.seed;
    log_.info.duration_min = config_.duration_min;
    log_.info.warmup_min = config_.warmup_min;
    log_.info.p_reg = config_.p_reg;
    log_.info.p_rel = config_.p_rel;
    log_.gw_out_per_min.assign(static_cast<std::size_t>(config_.duration_min), 0);
    log_.gw_in_per_min.assign(static_cast<std::size_t>(config_.duration_min), 0);

    const auto class_table = std::make_shared<const ClassTable>(default_class_table(config_.qos));

    nodes_.reserve(topo.nodes.size());
    for (const NodeId id : topo.nodes) {
        NodeState n;
        n.id = id;
        n.qos_enabled = config_.qos != QosMode::Regular;
        n.class_table = class_table;
        n.pit = PitTable(id == topo.gateway ? config_.gateway_pit : config_.pit_size);
        n.cs = CsTable(config_.cs_size, config_.cache, config_.p_reg, config_.p_rel);
        n.egress = EgressQueue(config_.queue_depth);
        n.pit_lifetime = config_.pit_lifetime;
        n.pitless_limiter = TokenBucket{config_.limiter_rate, config_.limiter_burst,
                                        config_.limiter_burst, 0};
        n.fwd_rng = Rng(mix64(config_.seed, mix64(2, id)));
        node_index_[id] = nodes_.size();
        nodes_.push_back(std::move(n));

        log_.node_ids.push_back(id);
        log_.node_ranks.push_back(topo.rank.at(id));
        log_.counters.emplace_back();
    }

    // Routing: everything under /a goes up toward the gateway producer; each
    // sensor prefix is routed down the unique path to its owner.
    const Name actuator_prefix{{"a"}};
    for (auto& n : nodes_) {
        if (n.id == topo.gateway) {
            n.produced_prefixes.push_back(actuator_prefix);
        } else {
            n.fib.add(actuator_prefix, topo.parent.at(n.id));
            n.produced_prefixes.push_back(Name{{"s", std::to_string(n.id)}});
        }
    }
    for (const NodeId sensor : topo.nodes) {
        if (sensor == topo.gateway)
            continue;
        const Name prefix{{"s", std::to_string(sensor)}};
        NodeId hop = sensor;
        NodeId at = topo.parent.at(sensor);
        while (true) {
            node(at).fib.add(prefix, hop);
            if (at == topo.gateway)
                break;
            hop = at;
            at = topo.parent.at(at);
        }
    }

    for (const auto& [child, parent] : topo.parent) {
        for (const auto& [a, b] : {std::pair{child, parent}, std::pair{parent, child}}) {
            LinkModel model = config_.link;
            if (const auto it = config_.link_overrides.find({a, b}); it != config_.link_overrides.end())
                model = it->second;
            links_.emplace(std::pair{a, b},
                           LinkState{model, Rng(mix64(config_.seed,
                                                      mix64(3, (static_cast<std::uint64_t>(a) << 32) | b)))});
        }
    }

    install_traffic(*this);
    for (int m = 1; m <= config_.duration_min; ++m)
        schedule(static_cast<SimTime>(m) * 60000, EvMetricsTick{m});
}

NodeState& Simulation::node(NodeId id) {
    return nodes_[node_index_.at(id)];
}

void Simulation::schedule(SimTime at, EventAction action) {
    if (at < now_)
        throw std::logic_error("event scheduled in the past");
    queue_.push(Event{at, next_seq_++, std::move(action)});
}

int Simulation::minute_of(SimTime t) const {
    const auto m = t / 60000;
    return static_cast<int>(std::clamp<SimTime>(m, 0, config_.duration_min - 1));
}

void Simulation::trace_event(const Event& ev) {
    if (!config_.trace)
        return;
    std::ostream& out = *config_.trace;
    out << ev.at << ' ';
    struct Visitor {
        std::ostream& out;
        const Simulation& sim;
        void operator()(const EvAppRequest& e) const {
            out << e.node << " AppRequest " << e.name.str() << " traffic="
                << to_string(e.traffic) << " rank=" << e.rank;
        }
        void operator()(const EvRetransmit& e) const {
            out << e.node << " Retransmit "
                << sim.log_.requests[e.request_id].name.str() << " attempt=" << e.attempt;
        }
        void operator()(const EvLinkDeliver& e) const {
            out << e.to << " LinkDeliver " << packet_name(e.packet).str() << " from=" << e.from
                << " type=" << (is_interest(e.packet) ? "interest" : "data");
        }
        void operator()(const EvMediaFree& e) const {
            out << e.node << " MediaFree - retry=" << (e.retry ? 1 : 0);
        }
        void operator()(const EvPitExpiry& e) const {
            out << e.node << " PitExpiry " << e.name.str() << " -";
        }
        void operator()(const EvMetricsTick& e) const {
            out << sim.config_.topology.gateway << " MetricsTick - minute=" << e.minute;
        }
    };
    std::visit(Visitor{out, *this}, ev.action);
    out << '\n';
}

void Simulation::count_transmission(NodeState& n, const Packet& packet) {
    NodeCounters& c = n.counters;
    if (is_interest(packet)) {
        ++c.interests_out;
        if (n.id == config_.topology.gateway)
            ++log_.gw_out_per_min[static_cast<std::size_t>(minute_of(now_))];
    } else {
        ++c.data_out;
    }
}

Simulation::LinkState& Simulation::link_between(NodeId from, NodeId to) {
    const auto it = links_.find({from, to});
    if (it == links_.end())
        throw std::logic_error("transmit over a nonexistent link");
    return it->second;
}

void Simulation::try_start_transmit(NodeState& n) {
    if (n.tx != TxState::Idle || n.egress.empty())
        return;
    if (n.busy_until > now_)
        return; // our own MediaFree will retry

    // The head decides the destination; it stays queued while we back off,
    // so a prompt packet may still overtake it.
    auto head = n.egress.dequeue();
    const NodeId to = head->to;
    LinkState& link = link_between(n.id, to);
    NodeState& dest = node(to);

    if (dest.busy_until > now_) {
        // Re-stage the packet and retry after the contention backoff.
        n.egress.enqueue(std::move(*head)); // queue had room: cannot drop
        n.tx = TxState::RetryPending;
        ++n.counters.media_backoffs;
        schedule(now_ + link.model.draw_backoff(link.rng), EvMediaFree{n.id, true});
        return;
    }

    n.tx = TxState::Transmitting;
    const SimTime end = now_ + link.model.base_delay;
    n.busy_until = end;
    dest.busy_until = std::max(dest.busy_until, end);
    count_transmission(n, head->packet);
    if (config_.media_holds) {
        config_.media_holds->push_back({n.id, true, now_, end});
        config_.media_holds->push_back({dest.id, false, now_, end});
    }
    schedule(end, EvMediaFree{n.id, false});
    schedule(end, EvMediaFree{dest.id, false});
    if (link.model.draw_delivery(link.rng)) {
        const SimTime arrival = std::max(now_, end + link.model.draw_jitter(link.rng));
        schedule(arrival, EvLinkDeliver{dest.id, n.id, std::move(head->packet)});
    }
}

void Simulation::on_media_free(NodeState& n, bool retry) {
    if (retry) {
        if (n.tx == TxState::RetryPending) {
            n.tx = TxState::Idle;
            try_start_transmit(n);
        }
        return;
    }
    if (n.busy_until > now_)
        return; // superseded by a later transmission
    if (n.tx == TxState::Transmitting)
        n.tx = TxState::Idle;
    if (n.tx == TxState::Idle)
        try_start_transmit(n);
}

EnqueueStatus Simulation::enqueue_egress(NodeState& n, NodeId to, Packet packet, ServiceLevel level) {
    const auto st = n.egress.enqueue({std::move(packet), level, to});
    if (st == EnqueueStatus::DroppedFull) {
        ++n.counters.queue_drops;
        return st;
    }
    if (n.tx == TxState::Idle)
        try_start_transmit(n);
    return st;
}

void Simulation::deliver_local(NodeState& n, const Data& data) {
    const auto it = n.open_requests.find(data.name);
    if (it == n.open_requests.end())
        return;
    for (const std::uint32_t id : it->second) {
        RequestRecord& rec = log_.requests[id];
        if (rec.completed() || rec.failed)
            continue;
        rec.completed_at = now_;
        rec.bytes = data.payload_bytes;
    }
    n.open_requests.erase(it);
}

void Simulation::schedule_pit_expiry(NodeId node, const Name& name, SimTime at) {
    schedule(at, EvPitExpiry{node, name});
}

void Simulation::schedule_retransmit(NodeId node, std::uint32_t request_id, int attempt, SimTime at) {
    schedule(at, EvRetransmit{node, request_id, attempt});
}

void Simulation::execute(const Event& ev) {
    struct Visitor {
        Simulation& sim;
        void operator()(const EvAppRequest& e) const {
            consumer_request(sim, sim.node(e.node), e.name, e.traffic, e.rank);
        }
        void operator()(const EvRetransmit& e) const {
            on_retransmit(sim, sim.node(e.node), e.request_id, e.attempt);
        }
        void operator()(const EvLinkDeliver& e) const {
            NodeState& n = sim.node(e.to);
            NodeCounters& c = n.counters;
            const auto traffic = traffic_of(packet_name(e.packet));
            if (is_interest(e.packet)) {
                ++c.interests_in;
                if (traffic == TrafficKind::Actuator)
                    ++c.interests_in_actuator;
                else if (traffic == TrafficKind::Gateway)
                    ++c.interests_in_gateway;
                on_interest(sim, n, face_of(e.from), std::get<Interest>(e.packet));
            } else {
                ++c.data_in;
                if (e.to == sim.config_.topology.gateway)
                    ++sim.log_.gw_in_per_min[static_cast<std::size_t>(sim.minute_of(sim.now_))];
                on_data(sim, n, face_of(e.from), std::get<Data>(e.packet));
            }
        }
        void operator()(const EvMediaFree& e) const { sim.on_media_free(sim.node(e.node), e.retry); }
        void operator()(const EvPitExpiry& e) const { on_pit_expiry(sim, sim.node(e.node), e.name); }
        void operator()(const EvMetricsTick&) const {}
    };
    std::visit(Visitor{*this}, ev.action);
}

void Simulation::run_loop() {
    const SimTime end = duration_ms();
    while (!queue_.empty()) {
        const Event& top = queue_.top();
        if (top.at > end)
            break;
        Event ev = top;
        queue_.pop();
        now_ = ev.at;
        trace_event(ev);
        execute(ev);
    }
    now_ = end;
}

MetricsLog Simulation::take_log() {
    if (!finished_) {
        run_loop();
        for (auto& rec : log_.requests)
            if (!rec.completed() && !rec.failed)
                rec.censored = true; // still in flight at the cutoff
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            log_.counters[i] = nodes_[i].counters;
        finished_ = true;
    }
    return std::move(log_);
}

MetricsLog run(const SimConfig& config) {
    Simulation sim(config);
    return sim.take_log();
}

} // namespace ndnqos
