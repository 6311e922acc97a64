#include "ndnqos/egress.hpp"

#include <utility>

namespace ndnqos {

EnqueueStatus EgressQueue::enqueue(QueuedPacket qp) {
    if (size() >= depth_)
        return EnqueueStatus::DroppedFull;

    if (!stage_) {
        stage_ = std::move(qp);
        return EnqueueStatus::Queued;
    }
    if (qp.level.prompt() && !stage_->level.prompt()) {
        // Pairwise overtake: the newcomer goes ahead of the staged packet,
        // which stays staged (and may be overtaken again).
        fifo_.push_back(std::move(qp));
        return EnqueueStatus::QueuedAheadOfStage;
    }
    // FIFO order: flush the staged (older) packet, stage the newcomer.
    fifo_.push_back(std::move(*stage_));
    stage_ = std::move(qp);
    return EnqueueStatus::Queued;
}

std::optional<QueuedPacket> EgressQueue::dequeue() {
    if (!fifo_.empty()) {
        QueuedPacket qp = std::move(fifo_.front());
        fifo_.pop_front();
        return qp;
    }
    if (stage_) {
        std::optional<QueuedPacket> qp = std::move(stage_);
        stage_.reset();
        return qp;
    }
    return std::nullopt;
}

} // namespace ndnqos
