#pragma once

#include <sug/error.hpp>
#include <sug/timestamp.hpp>
#include <sug/version_order.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace sug {

/// Identity of a release: exact (name, release) string pair. No version
/// normalisation is applied, so "1.0" and "1.0.0" are different releases.
struct NodeKey {
  std::string name;
  std::string release;

  friend auto operator<=>(const NodeKey&, const NodeKey&) = default;
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

inline std::string to_string(const NodeKey& key) { return key.name + "@" + key.release; }

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& key) const noexcept {
    const std::size_t h1 = std::hash<std::string>{}(key.name);
    const std::size_t h2 = std::hash<std::string>{}(key.release);
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};

using KeySet = std::set<NodeKey>;

/// One project release.
struct ReleaseNode {
  std::string name;
  std::string release;
  Timestamp time{};

  [[nodiscard]] NodeKey key() const { return {name, release}; }
  friend bool operator==(const ReleaseNode&, const ReleaseNode&) = default;
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

/// Order used along update chains: time first, releases sharing a timestamp
/// fall back to numeric-aware version order.
inline bool release_precedes(const ReleaseNode& a, const ReleaseNode& b) {
  if (a.time != b.time) return a.time < b.time;
  return compare_versions(a.release, b.release) < 0;
}

/// The Software Universe Graph: releases joined by dependency edges
/// (u depends on v) and update edges (v is the immediate successor of u).
///
/// Node ids are dense and stable for the lifetime of the object. Building is
/// single-writer; a fully built Universe is only read and may be shared
/// across threads.
class Universe {
 public:
  Universe() = default;

  NodeId add_node(ReleaseNode node) {
    if (node.name.empty() || node.release.empty()) {
      throw error(errc::invalid_argument, "release node needs a non-empty name and release");
    }
    NodeKey key = node.key();
    if (index_.contains(key)) throw error(errc::duplicate_node, to_string(key));
    const auto id = static_cast<NodeId>(nodes_.size());
    index_.emplace(std::move(key), id);
    nodes_.push_back(std::move(node));
    out_.emplace_back();
    in_.emplace_back();
    successor_.push_back(kNoNode);
    predecessor_.push_back(kNoNode);
    return id;
  }

  void add_dependency(const NodeKey& from, const NodeKey& to) { add_dependency(id_of(from), id_of(to)); }

  void add_dependency(NodeId from, NodeId to) {
    check_id(from);
    check_id(to);
    if (from == to) throw error(errc::self_dependency, to_string(nodes_[from].key()));
    if (!dep_index_.insert(edge_code(from, to)).second) {
      throw error(errc::duplicate_edge, to_string(nodes_[from].key()) + " -> " + to_string(nodes_[to].key()));
    }
    out_[from].push_back(to);
    in_[to].push_back(from);
  }

  void add_update(const NodeKey& from, const NodeKey& to) { add_update(id_of(from), id_of(to)); }

  void add_update(NodeId from, NodeId to) {
    check_id(from);
    check_id(to);
    const ReleaseNode& a = nodes_[from];
    const ReleaseNode& b = nodes_[to];
    if (a.name != b.name) {
      throw error(errc::name_mismatch, to_string(a.key()) + " => " + to_string(b.key()));
    }
    if (!release_precedes(a, b)) {
      throw error(errc::time_order_violation, to_string(a.key()) + " => " + to_string(b.key()));
    }
    if (successor_[from] != kNoNode || predecessor_[to] != kNoNode) {
      throw error(errc::chain_conflict, to_string(a.key()) + " => " + to_string(b.key()));
    }
    successor_[from] = to;
    predecessor_[to] = from;
    ++update_edge_count_;
  }

  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
  [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }
  [[nodiscard]] std::size_t dependency_edge_count() const noexcept { return dep_index_.size(); }
  [[nodiscard]] std::size_t update_edge_count() const noexcept { return update_edge_count_; }

  [[nodiscard]] const ReleaseNode& node(NodeId id) const {
    check_id(id);
    return nodes_[id];
  }
  [[nodiscard]] std::span<const ReleaseNode> nodes() const noexcept { return nodes_; }

  [[nodiscard]] std::optional<NodeId> find(const NodeKey& key) const {
    const auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] bool contains(const NodeKey& key) const { return index_.contains(key); }

  [[nodiscard]] NodeId id_of(const NodeKey& key) const {
    const auto it = index_.find(key);
    if (it == index_.end()) throw error(errc::unknown_node, to_string(key));
    return it->second;
  }

  /// Direct dependency targets of `id`, in insertion order.
  [[nodiscard]] std::span<const NodeId> dependencies(NodeId id) const {
    check_id(id);
    return out_[id];
  }
  /// Direct dependents of `id`, in insertion order.
  [[nodiscard]] std::span<const NodeId> dependents(NodeId id) const {
    check_id(id);
    return in_[id];
  }

  [[nodiscard]] bool has_dependency(NodeId from, NodeId to) const { return dep_index_.contains(edge_code(from, to)); }

  [[nodiscard]] std::optional<NodeId> successor(NodeId id) const {
    check_id(id);
    if (successor_[id] == kNoNode) return std::nullopt;
    return successor_[id];
  }
  [[nodiscard]] std::optional<NodeId> predecessor(NodeId id) const {
    check_id(id);
    if (predecessor_[id] == kNoNode) return std::nullopt;
    return predecessor_[id];
  }

  /// First release of the update chain containing `id`. Two nodes share a
  /// project iff they share a chain head.
  [[nodiscard]] NodeId chain_head(NodeId id) const {
    check_id(id);
    while (predecessor_[id] != kNoNode) id = predecessor_[id];
    return id;
  }

  /// Chain heads for every node, in O(N).
  [[nodiscard]] std::vector<NodeId> chain_heads() const {
    std::vector<NodeId> heads(nodes_.size(), kNoNode);
    for (NodeId id = 0; id < nodes_.size(); ++id) {
      if (predecessor_[id] != kNoNode) continue;
      for (NodeId cur = id; cur != kNoNode; cur = successor_[cur]) heads[cur] = id;
    }
    return heads;
  }

  /// Members of the update chain containing `id`, oldest first.
  [[nodiscard]] std::vector<NodeId> chain_of(NodeId id) const {
    std::vector<NodeId> members;
    for (NodeId cur = chain_head(id); cur != kNoNode; cur = successor_[cur]) members.push_back(cur);
    return members;
  }

  /// Sub-graph of everything published at or before `t`: nodes with
  /// time <= t and every edge whose endpoints both survive.
  [[nodiscard]] Universe timed_subgraph(Timestamp t) const {
    Universe out;
    std::vector<NodeId> remap(nodes_.size(), kNoNode);
    for (NodeId id = 0; id < nodes_.size(); ++id) {
      if (nodes_[id].time <= t) remap[id] = out.add_node(nodes_[id]);
    }
    for (NodeId id = 0; id < nodes_.size(); ++id) {
      if (remap[id] == kNoNode) continue;
      for (const NodeId to : out_[id]) {
        if (remap[to] != kNoNode) out.add_dependency(remap[id], remap[to]);
      }
      if (successor_[id] != kNoNode && remap[successor_[id]] != kNoNode) {
        out.add_update(remap[id], remap[successor_[id]]);
      }
    }
    return out;
  }

  /// Graph equality independent of insertion order.
  friend bool operator==(const Universe& a, const Universe& b) {
    if (a.size() != b.size() || a.dependency_edge_count() != b.dependency_edge_count() ||
        a.update_edge_count() != b.update_edge_count()) {
      return false;
    }
    for (const ReleaseNode& n : a.nodes_) {
      const auto other = b.find(n.key());
      if (!other || b.nodes_[*other] != n) return false;
    }
    for (NodeId id = 0; id < a.size(); ++id) {
      const NodeId mapped = *b.find(a.nodes_[id].key());
      for (const NodeId to : a.out_[id]) {
        if (!b.has_dependency(mapped, *b.find(a.nodes_[to].key()))) return false;
      }
      if (a.successor_[id] != kNoNode) {
        const NodeId succ = *b.find(a.nodes_[a.successor_[id]].key());
        if (b.successor_[mapped] != succ) return false;
      }
    }
    return true;
  }

 private:
  static std::uint64_t edge_code(NodeId from, NodeId to) noexcept {
    return (static_cast<std::uint64_t>(from) << 32) | to;
  }

  void check_id(NodeId id) const {
    if (id >= nodes_.size()) throw error(errc::unknown_node, "node id " + std::to_string(id));
  }

  std::vector<ReleaseNode> nodes_;
  std::unordered_map<NodeKey, NodeId, NodeKeyHash> index_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::unordered_set<std::uint64_t> dep_index_;
  std::vector<NodeId> successor_;
  std::vector<NodeId> predecessor_;
  std::size_t update_edge_count_ = 0;
};

// Key-level queries.

inline KeySet depend(const Universe& u, const NodeKey& key) {
  KeySet out;
  for (const NodeId to : u.dependencies(u.id_of(key))) out.insert(u.node(to).key());
  return out;
}

inline KeySet rev_depend(const Universe& u, const NodeKey& key) {
  KeySet out;
  for (const NodeId from : u.dependents(u.id_of(key))) out.insert(u.node(from).key());
  return out;
}

/// Every release reachable from `key` over update edges in either
/// direction, including `key` itself.
inline KeySet project_of(const Universe& u, const NodeKey& key) {
  KeySet out;
  for (const NodeId id : u.chain_of(u.id_of(key))) out.insert(u.node(id).key());
  return out;
}

/// Number of distinct projects among `ids`.
inline std::size_t project_count(const Universe& u, std::span<const NodeId> ids) {
  std::unordered_set<NodeId> heads;
  for (const NodeId id : ids) heads.insert(u.chain_head(id));
  return heads.size();
}

inline std::size_t project_count(const Universe& u, const KeySet& keys) {
  std::vector<NodeId> ids;
  ids.reserve(keys.size());
  for (const NodeKey& key : keys) ids.push_back(u.id_of(key));
  return project_count(u, ids);
}

}  // namespace sug
