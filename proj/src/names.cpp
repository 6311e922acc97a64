#include "ndnqos/names.hpp"

namespace ndnqos {

std::optional<Name> Name::parse(std::string_view text) {
    if (text.size() < 2 || text.front() != '/')
        return std::nullopt;
    Name n;
    std::size_t pos = 1;
    while (pos <= text.size()) {
        const std::size_t next = text.find('/', pos);
        const std::size_t end = (next == std::string_view::npos) ? text.size() : next;
        if (end == pos)
            return std::nullopt; // empty segment ("//" or trailing '/')
        n.components.emplace_back(text.substr(pos, end - pos));
        if (next == std::string_view::npos)
            break;
        pos = next + 1;
    }
    return n;
}

std::string Name::str() const {
    std::string out;
    for (const auto& c : components) {
        out += '/';
        out += c;
    }
    return out;
}

std::uint64_t hash_value(const Name& n) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& c : n.components) {
        for (const char ch : c) {
            h ^= static_cast<unsigned char>(ch);
            h *= 0x100000001b3ULL;
        }
        h ^= 0x2f; // separator
        h *= 0x100000001b3ULL;
    }
    return h;
}

bool is_prefix_of(const Name& prefix, const Name& name) {
    if (prefix.size() > name.size())
        return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
        if (prefix.components[i] != name.components[i])
            return false;
    return true;
}

std::string to_string(ServiceLevel level) {
    if (level.prompt() && level.reliable()) return "prompt_reliable";
    if (level.prompt()) return "prompt";
    if (level.reliable()) return "reliable";
    return "regular";
}

int pit_priority(ServiceLevel level) {
    if (level.prompt()) return 2;
    if (level.reliable()) return 1;
    return 0;
}

int cs_priority(ServiceLevel level) {
    if (level.reliable()) return level.prompt() ? 3 : 2;
    return level.prompt() ? 1 : 0;
}

bool ClassTable::add(Name prefix, ServiceLevel level) {
    for (const auto& [p, l] : entries_)
        if (p == prefix)
            return false;
    entries_.emplace_back(std::move(prefix), level);
    return true;
}

ServiceLevel ClassTable::classify(const Name& name) const {
    const std::pair<Name, ServiceLevel>* best = nullptr;
    for (const auto& entry : entries_) {
        if (!is_prefix_of(entry.first, name))
            continue;
        if (best == nullptr || entry.first.size() > best->first.size())
            best = &entry;
    }
    return best ? best->second : kRegular;
}

} // namespace ndnqos
