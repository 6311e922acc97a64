#include "ndnqos/scenario.hpp"

#include "ndnqos/engine.hpp"

namespace ndnqos {

std::string to_string(Scenario s) {
    return s == Scenario::S1 ? "s1" : "s2";
}

std::string to_string(QosMode m) {
    switch (m) {
    case QosMode::Regular: return "regular";
    case QosMode::PromptReliable: return "prompt_reliable";
    case QosMode::ReliableOnly: return "reliable_only";
    case QosMode::PromptOnly: return "prompt_only";
    }
    return "regular";
}

std::optional<Scenario> scenario_from_string(const std::string& s) {
    if (s == "s1") return Scenario::S1;
    if (s == "s2") return Scenario::S2;
    return std::nullopt;
}

std::optional<QosMode> qos_from_string(const std::string& s) {
    if (s == "regular") return QosMode::Regular;
    if (s == "prompt_reliable") return QosMode::PromptReliable;
    if (s == "reliable_only") return QosMode::ReliableOnly;
    if (s == "prompt_only") return QosMode::PromptOnly;
    return std::nullopt;
}

ClassTable default_class_table(QosMode mode) {
    ClassTable table;
    const Name actuators{{"a"}};
    switch (mode) {
    case QosMode::Regular:
        break;
    case QosMode::PromptReliable:
        table.add(actuators, kPromptReliable);
        break;
    case QosMode::ReliableOnly:
        table.add(actuators, {Latency::Regular, Reliability::Reliable});
        break;
    case QosMode::PromptOnly:
        table.add(actuators, {Latency::Prompt, Reliability::Regular});
        break;
    }
    return table;
}

std::optional<TrafficKind> traffic_of(const Name& name) {
    if (name.empty())
        return std::nullopt;
    if (name.components.front() == "a")
        return TrafficKind::Actuator;
    if (name.components.front() == "s")
        return TrafficKind::Gateway;
    return std::nullopt;
}

Name sensor_name(NodeId sensor, std::uint64_t seq) {
    return Name{{"s", std::to_string(sensor), std::to_string(seq)}};
}

Name actuator_name_s1(NodeId actuator, std::uint64_t seq) {
    return Name{{"a", std::to_string(actuator), std::to_string(seq)}};
}

Name actuator_name_s2(int group, std::uint64_t epoch) {
    return Name{{"a", "g" + std::to_string(group), std::to_string(epoch)}};
}

void install_traffic(Simulation& sim) {
    const SimConfig& cfg = sim.config();
    const Topology& topo = cfg.topology;
    const SimTime end = sim.duration_ms();
    const SimTime actuator_start = static_cast<SimTime>(cfg.warmup_min) * 60000;

    for (const NodeId device : topo.nodes) {
        if (device == topo.gateway)
            continue;
        const int rank = topo.rank.at(device);

        // Gateway polls this sensor: staggered start, then jittered period.
        {
            Rng rng(mix64(cfg.seed, mix64(10, device)));
            SimTime t = rng.uniform(0, cfg.traffic.sensor_period - 1);
            std::uint64_t seq = 0;
            while (t <= end) {
                sim.schedule(t, EvAppRequest{topo.gateway, sensor_name(device, seq++),
                                             TrafficKind::Gateway, rank});
                t += cfg.traffic.sensor_period +
                     rng.uniform(-cfg.traffic.sensor_jitter, cfg.traffic.sensor_jitter);
            }
        }

        // The device requests its actuator state from the gateway. In S2 the
        // name is shared by everyone who drew the same group in the same
        // period epoch.
        {
            Rng rng(mix64(cfg.seed, mix64(11, device)));
            SimTime t = actuator_start + rng.uniform(0, cfg.traffic.actuator_period - 1);
            std::uint64_t seq = 0;
            while (t <= end) {
                Name name;
                if (cfg.scenario == Scenario::S1) {
                    name = actuator_name_s1(device, seq++);
                } else {
                    const int group = static_cast<int>(rng.uniform(1, cfg.traffic.group_count));
                    const auto epoch =
                        static_cast<std::uint64_t>((t - actuator_start) / cfg.traffic.actuator_period);
                    name = actuator_name_s2(group, epoch);
                }
                sim.schedule(t, EvAppRequest{device, name, TrafficKind::Actuator, rank});
                t += cfg.traffic.actuator_period +
                     rng.uniform(-cfg.traffic.actuator_jitter, cfg.traffic.actuator_jitter);
            }
        }
    }
}

} // namespace ndnqos
