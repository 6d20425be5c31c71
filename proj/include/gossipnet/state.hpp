#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "gossipnet/packet.hpp"

namespace gossipnet {

// One atomic transition of the network. Gossip carries an ordered
// (source, target) pair; the source-to-node deliveries carry a target only.
struct Transition {
  enum class Kind : std::uint8_t {
    event_update,
    from_unreliable,
    from_reliable,
    gossip,
  };

  Kind kind = Kind::event_update;
  int source = -1;  // gossip only
  int target = -1;

  static Transition event_update() { return {}; }
  static Transition from_unreliable(int target) {
    return {Kind::from_unreliable, -1, target};
  }
  static Transition from_reliable(int target) {
    return {Kind::from_reliable, -1, target};
  }
  static Transition gossip(int source, int target) {
    return {Kind::gossip, source, target};
  }
};

// Full network state: the global event version and one packet per node.
// All nodes start with a reliable version-0 packet.
struct NetworkState {
  std::uint64_t event_version = 0;
  std::vector<Packet> packets;
  double clock = 0.0;

  explicit NetworkState(int n) : packets(static_cast<std::size_t>(n)) {
    assert(n >= 1);
  }

  std::uint64_t age(int node) const {
    return age_of(packets[static_cast<std::size_t>(node)], event_version);
  }
};

// Applies one transition in place. The state is treated as exclusively
// owned by the caller; nothing here is shared.
inline void apply_transition(NetworkState& s, const Transition& t,
                             Policy policy) {
  switch (t.kind) {
    case Transition::Kind::event_update:
      ++s.event_version;  // every derived age rises by one
      break;
    case Transition::Kind::from_reliable: {
      assert(t.target >= 0 && t.target < static_cast<int>(s.packets.size()));
      s.packets[static_cast<std::size_t>(t.target)] = {
          ReliabilityTag::reliable, s.event_version};
      break;
    }
    case Transition::Kind::from_unreliable: {
      assert(t.target >= 0 && t.target < static_cast<int>(s.packets.size()));
      Packet& res = s.packets[static_cast<std::size_t>(t.target)];
      const TaggedAge win =
          accept_decision({ReliabilityTag::unreliable, 0},
                          {res.tag, age_of(res, s.event_version)}, policy);
      res = {win.tag, s.event_version - win.age};
      break;
    }
    case Transition::Kind::gossip: {
      assert(t.source >= 0 && t.source < static_cast<int>(s.packets.size()));
      assert(t.target >= 0 && t.target < static_cast<int>(s.packets.size()));
      assert(t.source != t.target);
      const Packet& src = s.packets[static_cast<std::size_t>(t.source)];
      Packet& res = s.packets[static_cast<std::size_t>(t.target)];
      const TaggedAge win =
          accept_decision({src.tag, age_of(src, s.event_version)},
                          {res.tag, age_of(res, s.event_version)}, policy);
      res = {win.tag, s.event_version - win.age};
      break;
    }
  }
}

}  // namespace gossipnet
