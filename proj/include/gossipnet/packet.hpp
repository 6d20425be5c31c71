#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>

namespace gossipnet {

// Where a packet's information originated. There is no third provenance:
// every packet in the network descends from one of the two sources.
enum class ReliabilityTag : std::uint8_t { reliable = 0, unreliable = 1 };

// What a node holds: the provenance tag and the event version the packet
// describes. Version age is always derived against the global event
// version, never stored, so ages of all nodes advance together when the
// event updates.
struct Packet {
  ReliabilityTag tag = ReliabilityTag::reliable;
  std::uint64_t version = 0;

  friend bool operator==(const Packet&, const Packet&) = default;
};

enum class Policy : std::uint8_t {
  reliability_first,  // prefer reliable unless it trails by two or more versions
  freshness_first,    // prefer the lower age; reliable wins exact cross-tag ties
};

// A packet viewed as (tag, age) relative to the current event version.
struct TaggedAge {
  ReliabilityTag tag = ReliabilityTag::reliable;
  std::uint64_t age = 0;

  friend bool operator==(const TaggedAge&, const TaggedAge&) = default;
};

// Merge over a node set: disengaged only for the empty set, whose age
// compares as infinite.
using MergeOutcome = std::optional<TaggedAge>;

inline std::uint64_t age_of(const Packet& p, std::uint64_t event_version) {
  assert(p.version <= event_version && "packet version ahead of the event");
  return event_version - p.version;
}

// Acceptance decision for one incoming packet against the resident one.
// Returns one of the two inputs; ties keep the resident.
inline TaggedAge accept_decision(TaggedAge incoming, TaggedAge resident,
                                 Policy policy) {
  if (policy == Policy::reliability_first) {
    if (incoming.tag == resident.tag)
      return incoming.age < resident.age ? incoming : resident;
    if (incoming.tag == ReliabilityTag::reliable)
      return incoming.age <= resident.age + 1 ? incoming : resident;
    // incoming unreliable against a resident reliable packet
    return resident.age <= incoming.age + 1 ? resident : incoming;
  }
  // freshness first
  if (incoming.age != resident.age)
    return incoming.age < resident.age ? incoming : resident;
  if (incoming.tag == resident.tag) return resident;
  return incoming.tag == ReliabilityTag::reliable ? incoming : resident;
}

// Policy merge over a whole set, phrased through the freshest member of
// each tag class. Kept independent of accept_decision on purpose: the two
// routes are checked against each other in the tests.
inline MergeOutcome merge_set(std::span<const TaggedAge> members,
                              Policy policy) {
  std::optional<std::uint64_t> best_reliable;
  std::optional<std::uint64_t> best_unreliable;
  for (const TaggedAge& m : members) {
    auto& best =
        m.tag == ReliabilityTag::reliable ? best_reliable : best_unreliable;
    if (!best || m.age < *best) best = m.age;
  }
  if (!best_reliable && !best_unreliable) return std::nullopt;
  if (!best_unreliable)
    return TaggedAge{ReliabilityTag::reliable, *best_reliable};
  if (!best_reliable)
    return TaggedAge{ReliabilityTag::unreliable, *best_unreliable};
  // reliability-first tolerates a reliable packet one version older
  const std::uint64_t slack = policy == Policy::reliability_first ? 1 : 0;
  if (*best_reliable <= *best_unreliable + slack)
    return TaggedAge{ReliabilityTag::reliable, *best_reliable};
  return TaggedAge{ReliabilityTag::unreliable, *best_unreliable};
}

}  // namespace gossipnet
