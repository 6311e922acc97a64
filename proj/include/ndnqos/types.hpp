#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ndnqos {

/// Simulation time in milliseconds.
using SimTime = std::int64_t;

/// Node identifiers double as face identifiers toward that neighbor.
using NodeId = std::uint32_t;

/// A face is either a neighbor node or the local application.
using FaceId = std::int32_t;
constexpr FaceId kLocalFace = -1;

inline FaceId face_of(NodeId n) { return static_cast<FaceId>(n); }

/// Invalid run configuration (bad topology file, out-of-range parameter, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ndnqos
