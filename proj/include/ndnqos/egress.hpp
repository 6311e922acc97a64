#pragma once

#include <deque>
#include <optional>

#include "ndnqos/names.hpp"
#include "ndnqos/packets.hpp"
#include "ndnqos/types.hpp"

namespace ndnqos {

struct QueuedPacket {
    Packet packet;
    ServiceLevel level;
    NodeId to = 0;
};

enum class EnqueueStatus { Queued, QueuedAheadOfStage, DroppedFull };

/// Bounded egress queue with the single-packet reorder stage on the entry
/// side: the most recent packet is held in the stage and a later prompt
/// packet may be placed ahead of it. Reordering is therefore pairwise: a
/// packet is only ever overtaken while it sits in the stage, and never by a
/// packet of equal or lower priority. The transmitter drains the FIFO first,
/// then the stage.
class EgressQueue {
public:
    explicit EgressQueue(std::size_t depth) : depth_(depth) {}

    EnqueueStatus enqueue(QueuedPacket qp);

    /// Next packet to transmit, or nullopt when empty.
    std::optional<QueuedPacket> dequeue();

    std::size_t size() const { return fifo_.size() + (stage_ ? 1 : 0); }
    bool empty() const { return size() == 0; }
    std::size_t depth() const { return depth_; }

private:
    std::optional<QueuedPacket> stage_;
    std::deque<QueuedPacket> fifo_;
    std::size_t depth_;
};

} // namespace ndnqos
