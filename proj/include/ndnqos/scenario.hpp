#pragma once

#include <optional>
#include <string>

#include "ndnqos/metrics.hpp"
#include "ndnqos/names.hpp"
#include "ndnqos/types.hpp"

namespace ndnqos {

class Simulation;

enum class Scenario { S1, S2 };

/// The four experiment configurations: no QoS, both dimensions on the
/// actuator prefix, or a single dimension.
enum class QosMode { Regular, PromptReliable, ReliableOnly, PromptOnly };

std::string to_string(Scenario s);
std::string to_string(QosMode m);
std::optional<Scenario> scenario_from_string(const std::string& s);
std::optional<QosMode> qos_from_string(const std::string& s);

/// Request timing: sensor readings every 10 s (+-2 s), actuator state every
/// 5 s (+-1 s), jitter drawn per request.
struct TrafficSpec {
    SimTime sensor_period = 10000;
    SimTime sensor_jitter = 2000;
    SimTime actuator_period = 5000;
    SimTime actuator_jitter = 1000;
    int group_count = 5; ///< S2 lighting groups
};

/// Marks the actuator prefix /a according to the mode; the sensor prefix /s
/// stays unmarked and classifies as (regular, regular).
ClassTable default_class_table(QosMode mode);

/// Traffic family by naming scheme: /s/... is gateway-initiated, /a/... is
/// actuator-initiated.
std::optional<TrafficKind> traffic_of(const Name& name);

Name sensor_name(NodeId sensor, std::uint64_t seq);
Name actuator_name_s1(NodeId actuator, std::uint64_t seq);
Name actuator_name_s2(int group, std::uint64_t epoch);

/// Schedules every application request of the run as AppRequest events:
/// the gateway polls each sensor on its jittered 10 s period from t=0;
/// every device requests actuator state on its jittered 5 s period starting
/// at the warmup boundary. In S2 the name carries a group drawn uniformly
/// per request and the owning 5 s epoch, so group members collide on names.
void install_traffic(Simulation& sim);

} // namespace ndnqos
