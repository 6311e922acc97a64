#pragma once

#include <filesystem>
#include <map>
#include <vector>

#include "ndnqos/types.hpp"

namespace ndnqos {

/// Convergecast tree rooted at the gateway (DODAG with a single parent per
/// node). Rank is the hop distance from the gateway.
struct Topology {
    NodeId gateway = 0;
    std::vector<NodeId> nodes;          ///< all ids, sorted
    std::map<NodeId, NodeId> parent;    ///< child -> parent (gateway absent)
    std::map<NodeId, int> rank;

    /// The 31-node tree used by the experiments: gateway plus 30 devices,
    /// 60% of them within rank 5, and two elongated wings (chains of 6 and
    /// 12 nodes) reaching down to rank 12.
    static Topology builtin();

    /// Line-oriented file: `gateway <id>` once, then `child parent` pairs.
    /// '#' starts a comment. Throws ConfigError on malformed input or on a
    /// graph that is not a single tree rooted at the gateway.
    static Topology from_file(const std::filesystem::path& path);
    static Topology from_edges(NodeId gateway, const std::vector<std::pair<NodeId, NodeId>>& child_parent);

    std::vector<NodeId> children(NodeId n) const;
    bool has_node(NodeId n) const;

    /// First hop from `from` toward `target`, where `target` is in the
    /// subtree below `from`.
    NodeId next_hop_down(NodeId from, NodeId target) const;

    /// Longest root-to-leaf chain length in nodes, per subtree of the
    /// gateway; sorted descending. Used to check the two-wing shape.
    std::vector<int> wing_chain_lengths() const;

    int max_rank() const;
    std::string to_file_text() const;

private:
    void compute_ranks(); ///< validates tree structure, throws ConfigError
};

} // namespace ndnqos
