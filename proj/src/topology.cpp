#include "ndnqos/topology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ndnqos {

Topology Topology::builtin() {
    // Gateway 0 with five rank-1 children. Node 1 roots the short wing
    // (spine 1-6-7-8-9-10 with side leaves), node 2 roots the long wing
    // (spine 2-16-...-26 with side leaves down to rank 12).
    return from_edges(0, {
        {1, 0},  {2, 0},  {3, 0},  {4, 0},  {5, 0},
        {6, 1},  {11, 1},
        {7, 6},  {12, 6},
        {13, 11},
        {8, 7},  {14, 7},
        {15, 12},
        {9, 8},
        {10, 9},
        {16, 2}, {17, 16}, {18, 17}, {19, 18}, {20, 19}, {21, 20},
        {22, 21}, {27, 21},
        {23, 22}, {28, 22},
        {24, 23},
        {25, 24}, {29, 24},
        {26, 25}, {30, 25},
    });
}

Topology Topology::from_edges(NodeId gateway, const std::vector<std::pair<NodeId, NodeId>>& child_parent) {
    Topology t;
    t.gateway = gateway;
    for (const auto& [child, parent] : child_parent) {
        if (child == gateway)
            throw ConfigError("topology: gateway cannot have a parent");
        if (t.parent.count(child))
            throw ConfigError("topology: node " + std::to_string(child) + " has two parents");
        t.parent[child] = parent;
    }
    t.compute_ranks();
    return t;
}

Topology Topology::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("topology: cannot open " + path.string());

    bool have_gateway = false;
    NodeId gateway = 0;
    std::vector<std::pair<NodeId, NodeId>> edges;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first))
            continue;
        const auto where = path.string() + ":" + std::to_string(lineno);
        if (first == "gateway") {
            unsigned long id;
            if (!(ls >> id) || have_gateway)
                throw ConfigError("topology: bad gateway line at " + where);
            gateway = static_cast<NodeId>(id);
            have_gateway = true;
        } else {
            unsigned long child, parent;
            std::istringstream cs(first);
            if (!(cs >> child) || !(ls >> parent))
                throw ConfigError("topology: expected 'child parent' at " + where);
            edges.emplace_back(static_cast<NodeId>(child), static_cast<NodeId>(parent));
        }
        std::string rest;
        if (ls >> rest)
            throw ConfigError("topology: trailing tokens at " + where);
    }
    if (!have_gateway)
        throw ConfigError("topology: missing 'gateway <id>' line in " + path.string());
    return from_edges(gateway, edges);
}

void Topology::compute_ranks() {
    nodes.clear();
    rank.clear();
    nodes.push_back(gateway);
    for (const auto& [child, par] : parent) {
        nodes.push_back(child);
        if (par != gateway && !parent.count(par))
            throw ConfigError("topology: parent " + std::to_string(par) + " of node " +
                              std::to_string(child) + " does not exist");
    }
    std::sort(nodes.begin(), nodes.end());

    rank[gateway] = 0;
    for (const NodeId n : nodes) {
        if (n == gateway)
            continue;
        // Walk up to the gateway; a walk longer than the node count is a cycle.
        int hops = 0;
        NodeId cur = n;
        while (cur != gateway) {
            const auto it = parent.find(cur);
            if (it == parent.end() || ++hops > static_cast<int>(nodes.size()))
                throw ConfigError("topology: node " + std::to_string(n) +
                                  " is not connected to the gateway");
            cur = it->second;
        }
        rank[n] = hops;
    }
}

std::vector<NodeId> Topology::children(NodeId n) const {
    std::vector<NodeId> out;
    for (const auto& [child, par] : parent)
        if (par == n)
            out.push_back(child);
    return out;
}

bool Topology::has_node(NodeId n) const {
    return std::binary_search(nodes.begin(), nodes.end(), n);
}

NodeId Topology::next_hop_down(NodeId from, NodeId target) const {
    NodeId cur = target;
    while (true) {
        const auto it = parent.find(cur);
        if (it == parent.end())
            throw ConfigError("topology: no downward path from " + std::to_string(from) +
                              " to " + std::to_string(target));
        if (it->second == from)
            return cur;
        cur = it->second;
    }
}

std::vector<int> Topology::wing_chain_lengths() const {
    // Depth (in nodes) of the longest chain inside each gateway subtree.
    std::vector<int> out;
    for (const NodeId top : children(gateway)) {
        int best = 0;
        for (const auto& [n, r] : rank) {
            // Is `top` an ancestor of n?
            NodeId cur = n;
            bool under = (n == top);
            while (!under) {
                const auto it = parent.find(cur);
                if (it == parent.end())
                    break;
                cur = it->second;
                under = (cur == top);
            }
            if (under)
                best = std::max(best, r); // chain top..n has length r nodes
        }
        out.push_back(best);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

int Topology::max_rank() const {
    int m = 0;
    for (const auto& [n, r] : rank)
        m = std::max(m, r);
    return m;
}

std::string Topology::to_file_text() const {
    std::ostringstream out;
    out << "gateway " << gateway << "\n";
    for (const NodeId n : nodes)
        if (n != gateway)
            out << n << " " << parent.at(n) << "\n";
    return out.str();
}

} // namespace ndnqos
