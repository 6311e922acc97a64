#pragma once

#include <cstdint>
#include <variant>

#include "ndnqos/names.hpp"

namespace ndnqos {

/// Request packet. Carries no QoS field; classification is table-driven at
/// every hop. The nonce only serves duplicate suppression.
struct Interest {
    Name name;
    std::uint32_t nonce = 0;
};

/// Response packet. Only the payload length matters for the metrics, so the
/// simulated payload is its size in bytes.
struct Data {
    Name name;
    std::uint32_t payload_bytes = 0;
};

using Packet = std::variant<Interest, Data>;

inline const Name& packet_name(const Packet& p) {
    return std::visit([](const auto& x) -> const Name& { return x.name; }, p);
}

inline bool is_interest(const Packet& p) { return std::holds_alternative<Interest>(p); }

} // namespace ndnqos
