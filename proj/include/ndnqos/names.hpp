#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ndnqos {

/// Hierarchical content name: a nonempty list of nonempty components.
/// Textual form is '/'-separated ("/HK/ACM/ICN"). Components are opaque
/// bytes; the textual round trip assumes printable segments without '/'.
struct Name {
    std::vector<std::string> components;

    /// Parses "/seg/seg/..."; rejects empty input, a missing leading '/',
    /// and empty segments ("//", trailing '/').
    static std::optional<Name> parse(std::string_view text);

    std::string str() const;

    std::size_t size() const { return components.size(); }
    bool empty() const { return components.empty(); }

    bool operator==(const Name&) const = default;
    auto operator<=>(const Name&) const = default;
};

/// FNV-1a over components with separators; used for the duplicate-nonce ring.
std::uint64_t hash_value(const Name& n);

/// True iff every component of `prefix` matches the corresponding leading
/// component of `name` (prefix may equal name).
bool is_prefix_of(const Name& prefix, const Name& name);

enum class Latency : std::uint8_t { Regular = 0, Prompt = 1 };
enum class Reliability : std::uint8_t { Regular = 0, Reliable = 1 };

/// One cell of the 2x2 service-level matrix. Default is fully regular,
/// i.e. unmarked traffic.
struct ServiceLevel {
    Latency latency = Latency::Regular;
    Reliability reliability = Reliability::Regular;

    bool prompt() const { return latency == Latency::Prompt; }
    bool reliable() const { return reliability == Reliability::Reliable; }
    /// Marked in at least one quality dimension.
    bool marked() const { return prompt() || reliable(); }

    bool operator==(const ServiceLevel&) const = default;
};

constexpr ServiceLevel kRegular{};
constexpr ServiceLevel kPromptReliable{Latency::Prompt, Reliability::Reliable};

/// "regular", "prompt", "reliable" or "prompt_reliable" (CSV class column).
std::string to_string(ServiceLevel level);

/// PIT admission/eviction order: regular < reliable < prompt. The mixed
/// (prompt, reliable) class ranks as prompt; latency is what PIT residency
/// serves.
int pit_priority(ServiceLevel level);

/// CS replacement order with reliability dominant:
/// (reliable,prompt)=3 > (reliable,regular)=2 > (regular,prompt)=1 > regular=0.
int cs_priority(ServiceLevel level);

/// Prefix -> service level table; classification is longest prefix match
/// with (regular, regular) as the default for unmatched names.
class ClassTable {
public:
    /// Returns false (table unchanged) when the prefix is already present;
    /// duplicate prefixes would make longest-match ambiguous.
    bool add(Name prefix, ServiceLevel level);

    ServiceLevel classify(const Name& name) const;

    std::size_t size() const { return entries_.size(); }
    const std::vector<std::pair<Name, ServiceLevel>>& entries() const { return entries_; }

private:
    std::vector<std::pair<Name, ServiceLevel>> entries_;
};

} // namespace ndnqos
