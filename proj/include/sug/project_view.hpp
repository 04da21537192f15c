#pragma once

#include <sug/error.hpp>
#include <sug/universe.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sug {

using ProjectIndex = std::uint32_t;

/// One update-chain equivalence class.
struct Project {
  /// The project name, or `name@first-release` when several disjoint chains
  /// carry the same name.
  std::string id;
  std::string name;
  /// Member releases, oldest first.
  std::vector<NodeId> members;
};

/// Project-level aggregation of a Universe: one vertex per project, one
/// edge per ordered project pair with at least one underlying dependency,
/// intra-project dependencies dropped, no update edges.
///
/// Projects are indexed in ascending id order. Adjacency lists are sorted.
class ProjectView {
 public:
  [[nodiscard]] std::size_t size() const noexcept { return projects_.size(); }
  [[nodiscard]] std::span<const Project> projects() const noexcept { return projects_; }
  [[nodiscard]] const Project& project(ProjectIndex p) const {
    check(p);
    return projects_[p];
  }

  [[nodiscard]] std::optional<ProjectIndex> find(std::string_view id) const {
    const auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] ProjectIndex index_of(std::string_view id) const {
    const auto found = find(id);
    if (!found) throw error(errc::unknown_project, std::string(id));
    return *found;
  }

  [[nodiscard]] ProjectIndex project_of(NodeId node) const {
    if (node >= node_project_.size()) throw error(errc::unknown_node, "node id " + std::to_string(node));
    return node_project_[node];
  }
  [[nodiscard]] std::span<const ProjectIndex> node_projects() const noexcept { return node_project_; }

  [[nodiscard]] std::span<const ProjectIndex> dependencies(ProjectIndex p) const {
    check(p);
    return out_[p];
  }
  [[nodiscard]] std::span<const ProjectIndex> dependents(ProjectIndex p) const {
    check(p);
    return in_[p];
  }
  [[nodiscard]] std::size_t dependency_edge_count() const noexcept { return edge_count_; }

  friend ProjectView aggregate(const Universe& u);

 private:
  void check(ProjectIndex p) const {
    if (p >= projects_.size()) throw error(errc::unknown_project, "project index " + std::to_string(p));
  }

  std::vector<Project> projects_;
  std::vector<ProjectIndex> node_project_;
  std::unordered_map<std::string, ProjectIndex> by_id_;
  std::vector<std::vector<ProjectIndex>> out_;
  std::vector<std::vector<ProjectIndex>> in_;
  std::size_t edge_count_ = 0;
};

inline ProjectView aggregate(const Universe& u) {
  ProjectView view;
  std::vector<NodeId> heads;
  for (NodeId id = 0; id < u.size(); ++id) {
    if (!u.predecessor(id)) heads.push_back(id);
  }

  std::unordered_map<std::string, std::size_t> chains_per_name;
  for (const NodeId h : heads) ++chains_per_name[u.node(h).name];

  std::vector<Project> projects;
  projects.reserve(heads.size());
  for (const NodeId h : heads) {
    const ReleaseNode& head = u.node(h);
    Project p;
    p.name = head.name;
    p.id = chains_per_name[head.name] > 1 ? head.name + "@" + head.release : head.name;
    p.members = u.chain_of(h);
    projects.push_back(std::move(p));
  }
  std::sort(projects.begin(), projects.end(), [](const Project& a, const Project& b) { return a.id < b.id; });

  view.node_project_.assign(u.size(), 0);
  for (ProjectIndex p = 0; p < projects.size(); ++p) {
    view.by_id_.emplace(projects[p].id, p);
    for (const NodeId n : projects[p].members) view.node_project_[n] = p;
  }
  view.projects_ = std::move(projects);

  view.out_.assign(view.projects_.size(), {});
  view.in_.assign(view.projects_.size(), {});
  for (NodeId from = 0; from < u.size(); ++from) {
    const ProjectIndex pf = view.node_project_[from];
    for (const NodeId to : u.dependencies(from)) {
      const ProjectIndex pt = view.node_project_[to];
      if (pf != pt) view.out_[pf].push_back(pt);
    }
  }
  for (ProjectIndex p = 0; p < view.out_.size(); ++p) {
    auto& targets = view.out_[p];
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    view.edge_count_ += targets.size();
    for (const ProjectIndex t : targets) view.in_[t].push_back(p);
  }
  return view;
}

}  // namespace sug
