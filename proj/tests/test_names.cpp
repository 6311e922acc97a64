#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "ndnqos/names.hpp"
#include "ndnqos/rng.hpp"

using namespace ndnqos;

namespace {

// Independent longest-prefix-match oracle: scan every entry, keep the
// longest prefix of the name.
ServiceLevel classify_oracle(const std::vector<std::pair<Name, ServiceLevel>>& entries,
                             const Name& name) {
    const std::pair<Name, ServiceLevel>* best = nullptr;
    for (const auto& e : entries) {
        if (e.first.size() > name.size())
            continue;
        bool match = true;
        for (std::size_t i = 0; i < e.first.size(); ++i)
            if (e.first.components[i] != name.components[i]) {
                match = false;
                break;
            }
        if (match && (best == nullptr || e.first.size() > best->first.size()))
            best = &e;
    }
    return best ? best->second : kRegular;
}

Name random_name(Rng& rng, int max_len = 5, int alphabet = 3) {
    Name n;
    const auto len = 1 + rng.uniform(0, max_len - 1);
    for (int i = 0; i < len; ++i)
        n.components.push_back(std::string(1, static_cast<char>('a' + rng.uniform(0, alphabet - 1))));
    return n;
}

ServiceLevel random_level(Rng& rng) {
    return {rng.chance(0.5) ? Latency::Prompt : Latency::Regular,
            rng.chance(0.5) ? Reliability::Reliable : Reliability::Regular};
}

const ServiceLevel kReliableRegular{Latency::Regular, Reliability::Reliable};
const ServiceLevel kPromptRegular{Latency::Prompt, Reliability::Regular};

ClassTable example_table() {
    // The three-row traffic class table used to introduce the scheme.
    ClassTable t;
    REQUIRE(t.add(*Name::parse("/HK/ACM/ICN"), kReliableRegular));
    REQUIRE(t.add(*Name::parse("/HK/ACM/ICN/site/A/alarm"), kPromptReliable));
    REQUIRE(t.add(*Name::parse("/HK/ACM/ICN/site/B/temp"), kPromptRegular));
    return t;
}

} // namespace

TEST_CASE("parse accepts slash-separated names") {
    const auto n = Name::parse("/HK/ACM/ICN");
    REQUIRE(n.has_value());
    CHECK(n->components == std::vector<std::string>{"HK", "ACM", "ICN"});
    CHECK(Name::parse("/a")->components == std::vector<std::string>{"a"});
}

TEST_CASE("parse rejects malformed names") {
    CHECK_FALSE(Name::parse("").has_value());
    CHECK_FALSE(Name::parse("/").has_value());
    CHECK_FALSE(Name::parse("a/b").has_value());
    CHECK_FALSE(Name::parse("/a//b").has_value());
    CHECK_FALSE(Name::parse("/a/").has_value());
}

TEST_CASE("textual round trip over random names") {
    Rng rng(7);
    for (int i = 0; i < 2000; ++i) {
        Name n;
        const auto len = 1 + rng.uniform(0, 5);
        for (int c = 0; c < len; ++c) {
            std::string comp;
            const auto clen = 1 + rng.uniform(0, 7);
            for (int k = 0; k < clen; ++k) {
                // printable, '/' excluded
                char ch;
                do {
                    ch = static_cast<char>(rng.uniform(33, 126));
                } while (ch == '/');
                comp.push_back(ch);
            }
            n.components.push_back(comp);
        }
        const auto back = Name::parse(n.str());
        REQUIRE(back.has_value());
        CHECK(*back == n);
    }
}

TEST_CASE("is_prefix_of") {
    const Name full = *Name::parse("/HK/ACM/ICN/site/C");
    CHECK(is_prefix_of(*Name::parse("/HK/ACM/ICN"), full));
    CHECK(is_prefix_of(full, full));
    CHECK_FALSE(is_prefix_of(*Name::parse("/HK/ACM/ICN/site/A/alarm"), *Name::parse("/HK/ACM/ICN")));
    CHECK_FALSE(is_prefix_of(*Name::parse("/HK/ACM/X"), full));
}

TEST_CASE("classify follows the longest matching prefix") {
    const ClassTable t = example_table();
    CHECK(t.classify(*Name::parse("/HK/ACM/ICN/site/C/x")) == kReliableRegular);
    CHECK(t.classify(*Name::parse("/HK/ACM/ICN/site/A/alarm/7")) == kPromptReliable);
    CHECK(t.classify(*Name::parse("/HK/ACM/ICN/site/B/temp/3")) == kPromptRegular);
    CHECK(t.classify(*Name::parse("/other/name")) == kRegular);
}

TEST_CASE("duplicate prefixes are a construction error") {
    ClassTable t;
    CHECK(t.add(*Name::parse("/a/b"), kPromptReliable));
    CHECK_FALSE(t.add(*Name::parse("/a/b"), kRegular));
    CHECK(t.size() == 1);
}

TEST_CASE("classify matches the brute-force oracle and ignores entry order") {
    Rng rng(42);
    for (int round = 0; round < 3000; ++round) {
        ClassTable table;
        std::vector<std::pair<Name, ServiceLevel>> entries;
        const auto count = rng.uniform(0, 6);
        for (int i = 0; i < count; ++i) {
            Name p = random_name(rng);
            const ServiceLevel lvl = random_level(rng);
            if (table.add(p, lvl))
                entries.emplace_back(std::move(p), lvl);
        }
        // A permuted copy must classify identically.
        ClassTable shuffled;
        for (std::size_t i = entries.size(); i-- > 0;)
            shuffled.add(entries[i].first, entries[i].second);

        for (int q = 0; q < 10; ++q) {
            const Name name = random_name(rng);
            const ServiceLevel expect = classify_oracle(entries, name);
            CHECK(table.classify(name) == expect);
            CHECK(shuffled.classify(name) == expect);
        }
    }
}

TEST_CASE("pit priority order: regular before reliable before prompt") {
    CHECK(pit_priority(kPromptReliable) == 2);
    CHECK(pit_priority(kPromptRegular) == 2);
    CHECK(pit_priority(kReliableRegular) == 1);
    CHECK(pit_priority(kRegular) == 0);
}

TEST_CASE("cs priority order favors reliability") {
    CHECK(cs_priority(kPromptReliable) == 3);
    CHECK(cs_priority(kReliableRegular) == 2);
    CHECK(cs_priority(kPromptRegular) == 1);
    CHECK(cs_priority(kRegular) == 0);
    // reliable content with regular latency may displace prompt content
    CHECK(cs_priority(kReliableRegular) > cs_priority(kPromptRegular));
}

TEST_CASE("priorities are total orders, monotone in each dimension") {
    const std::vector<ServiceLevel> all{kRegular, kPromptRegular, kReliableRegular, kPromptReliable};
    for (const auto lvl : all) {
        ServiceLevel up_lat = lvl;
        up_lat.latency = Latency::Prompt;
        ServiceLevel up_rel = lvl;
        up_rel.reliability = Reliability::Reliable;
        CHECK(pit_priority(up_lat) >= pit_priority(lvl));
        CHECK(pit_priority(up_rel) >= pit_priority(lvl));
        CHECK(cs_priority(up_lat) >= cs_priority(lvl));
        CHECK(cs_priority(up_rel) >= cs_priority(lvl));
    }
    // total over the four values
    CHECK(cs_priority(all[0]) < cs_priority(all[1]));
    CHECK(cs_priority(all[1]) < cs_priority(all[2]));
    CHECK(cs_priority(all[2]) < cs_priority(all[3]));
}
