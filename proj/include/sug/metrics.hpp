#pragma once

#include <sug/error.hpp>
#include <sug/project_view.hpp>
#include <sug/universe.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sug {

enum class MetricKind { popularity, variety };

constexpr std::string_view to_string(MetricKind kind) noexcept {
  return kind == MetricKind::popularity ? "popularity" : "variety";
}

// ---------------------------------------------------------------------------
// Release-level popularity and variety

/// Number of releases that directly depend on `id`.
inline std::size_t popularity(const Universe& u, NodeId id) { return u.dependents(id).size(); }
inline std::size_t popularity(const Universe& u, const NodeKey& key) { return popularity(u, u.id_of(key)); }

/// Number of distinct projects among the direct dependents of `id`.
inline std::size_t variety(const Universe& u, NodeId id) { return project_count(u, u.dependents(id)); }
inline std::size_t variety(const Universe& u, const NodeKey& key) { return variety(u, u.id_of(key)); }

/// popularity of `id` inside timed_subgraph(u, t); 0 before the release exists.
inline std::size_t popularity_at(const Universe& u, NodeId id, Timestamp t) {
  if (t < u.node(id).time) return 0;
  std::size_t count = 0;
  for (const NodeId d : u.dependents(id)) {
    if (u.node(d).time <= t) ++count;
  }
  return count;
}
inline std::size_t popularity_at(const Universe& u, const NodeKey& key, Timestamp t) {
  return popularity_at(u, u.id_of(key), t);
}

// Update chains are time ordered, so the surviving part of a chain at any t
// is a prefix and project membership never changes under time slicing.
inline std::size_t variety_at(const Universe& u, NodeId id, Timestamp t) {
  if (t < u.node(id).time) return 0;
  std::unordered_set<NodeId> heads;
  for (const NodeId d : u.dependents(id)) {
    if (u.node(d).time <= t) heads.insert(u.chain_head(d));
  }
  return heads.size();
}
inline std::size_t variety_at(const Universe& u, const NodeKey& key, Timestamp t) {
  return variety_at(u, u.id_of(key), t);
}

inline std::size_t metric_at(const Universe& u, NodeId id, MetricKind kind, Timestamp t) {
  return kind == MetricKind::popularity ? popularity_at(u, id, t) : variety_at(u, id, t);
}

// ---------------------------------------------------------------------------
// Diffusion series

struct Sample {
  Timestamp time;
  std::size_t value = 0;
  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Piecewise-constant metric history of one release. The value holds from a
/// sample's time up to the next sample; it is 0 before the first sample.
struct TimeSeries {
  NodeKey subject;
  MetricKind kind = MetricKind::popularity;
  std::vector<Sample> samples;

  [[nodiscard]] std::size_t value_at(Timestamp t) const {
    const auto it = std::upper_bound(samples.begin(), samples.end(), t,
                                     [](Timestamp lhs, const Sample& s) { return lhs < s.time; });
    if (it == samples.begin()) return 0;
    return std::prev(it)->value;
  }
  [[nodiscard]] std::size_t final_value() const { return samples.empty() ? 0 : samples.back().value; }
};

/// Times at which a dependency edge into `id` becomes visible: a dependent's
/// timestamp, clamped to the release's own timestamp. Sorted, distinct.
inline std::vector<Timestamp> dependency_event_times(const Universe& u, NodeId id) {
  const Timestamp born = u.node(id).time;
  std::vector<Timestamp> times;
  for (const NodeId d : u.dependents(id)) times.push_back(std::max(u.node(d).time, born));
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

/// One sample per event time at which the metric changes.
inline TimeSeries diffusion_series(const Universe& u, NodeId id, MetricKind kind) {
  const Timestamp born = u.node(id).time;
  struct Event {
    Timestamp time;
    NodeId dependent;
  };
  std::vector<Event> events;
  for (const NodeId d : u.dependents(id)) events.push_back({std::max(u.node(d).time, born), d});
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.time < b.time; });

  TimeSeries series{u.node(id).key(), kind, {}};
  std::unordered_set<NodeId> heads;
  std::size_t count = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < events.size();) {
    const Timestamp t = events[i].time;
    for (; i < events.size() && events[i].time == t; ++i) {
      ++count;
      heads.insert(u.chain_head(events[i].dependent));
    }
    const std::size_t value = kind == MetricKind::popularity ? count : heads.size();
    if (value != last) {
      series.samples.push_back({t, value});
      last = value;
    }
  }
  return series;
}
inline TimeSeries diffusion_series(const Universe& u, const NodeKey& key, MetricKind kind) {
  return diffusion_series(u, u.id_of(key), kind);
}

// ---------------------------------------------------------------------------
// Superseding points

struct SupersedingPoint {
  NodeKey predecessor;
  NodeKey successor;
  MetricKind kind = MetricKind::popularity;
  Timestamp time;
  friend bool operator==(const SupersedingPoint&, const SupersedingPoint&) = default;
};

namespace detail {

inline void check_supersede_pair(const Universe& u, NodeId older, NodeId newer) {
  if (u.chain_head(older) != u.chain_head(newer)) {
    throw error(errc::not_same_project, to_string(u.node(older).key()) + " vs " + to_string(u.node(newer).key()));
  }
  if (!release_precedes(u.node(older), u.node(newer))) {
    throw error(errc::invalid_argument,
                to_string(u.node(older).key()) + " does not precede " + to_string(u.node(newer).key()));
  }
}

}  // namespace detail

/// Every time the newer release moves strictly above the older one, after
/// having been at or below it (or at the very first such time).
inline std::vector<SupersedingPoint> superseding_crossings(const Universe& u, NodeId older, NodeId newer,
                                                           MetricKind kind) {
  detail::check_supersede_pair(u, older, newer);
  const TimeSeries a = diffusion_series(u, older, kind);
  const TimeSeries b = diffusion_series(u, newer, kind);
  std::vector<Timestamp> times;
  for (const Sample& s : a.samples) times.push_back(s.time);
  for (const Sample& s : b.samples) times.push_back(s.time);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::vector<SupersedingPoint> points;
  bool ahead = false;
  for (const Timestamp t : times) {
    const bool now_ahead = b.value_at(t) > a.value_at(t);
    if (now_ahead && !ahead) points.push_back({u.node(older).key(), u.node(newer).key(), kind, t});
    ahead = now_ahead;
  }
  return points;
}

/// Earliest time at which `newer` strictly exceeds `older` in the metric.
inline std::optional<SupersedingPoint> superseding_point(const Universe& u, NodeId older, NodeId newer,
                                                        MetricKind kind) {
  auto points = superseding_crossings(u, older, newer, kind);
  if (points.empty()) return std::nullopt;
  return points.front();
}
inline std::optional<SupersedingPoint> superseding_point(const Universe& u, const NodeKey& older,
                                                        const NodeKey& newer, MetricKind kind) {
  return superseding_point(u, u.id_of(older), u.id_of(newer), kind);
}

// ---------------------------------------------------------------------------
// Co-dependency

/// Number of releases that depend on both `x` and `y`.
inline std::size_t pair_popularity(const Universe& u, NodeId x, NodeId y) {
  if (x == y) throw error(errc::same_pair_member, to_string(u.node(x).key()));
  if (u.dependents(x).size() > u.dependents(y).size()) std::swap(x, y);
  std::size_t count = 0;
  for (const NodeId d : u.dependents(x)) {
    if (u.has_dependency(d, y)) ++count;
  }
  return count;
}
inline std::size_t pair_popularity(const Universe& u, const NodeKey& x, const NodeKey& y) {
  return pair_popularity(u, u.id_of(x), u.id_of(y));
}

/// Number of distinct projects that depend, at project level, on both.
inline std::size_t project_pair_popularity(const ProjectView& pv, ProjectIndex px, ProjectIndex py) {
  if (px == py) throw error(errc::same_pair_member, pv.project(px).id);
  const auto a = pv.dependents(px);
  const auto b = pv.dependents(py);
  std::size_t count = 0;
  // Both lists are sorted.
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}
inline std::size_t project_pair_popularity(const ProjectView& pv, std::string_view px, std::string_view py) {
  return project_pair_popularity(pv, pv.index_of(px), pv.index_of(py));
}

/// project_pair_popularity over every ordered pair of a project set. The
/// diagonal is left at zero.
struct ProjectPairTable {
  std::vector<ProjectIndex> axis;
  std::vector<std::vector<std::size_t>> counts;
  std::size_t max_count = 0;

  /// counts normalised by the largest off-diagonal count; 0/0 is 0.
  [[nodiscard]] double intensity(std::size_t i, std::size_t j) const {
    if (i == j || max_count == 0) return 0.0;
    return static_cast<double>(counts[i][j]) / static_cast<double>(max_count);
  }
};

inline ProjectPairTable project_pair_table(const ProjectView& pv, std::span<const ProjectIndex> set) {
  ProjectPairTable table;
  table.axis.assign(set.begin(), set.end());
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (set[i] == set[j]) throw error(errc::invalid_argument, "duplicate project " + pv.project(set[i]).id);
    }
  }
  const std::size_t n = set.size();
  table.counts.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t c = project_pair_popularity(pv, set[i], set[j]);
      table.counts[i][j] = table.counts[j][i] = c;
      table.max_count = std::max(table.max_count, c);
    }
  }
  return table;
}

/// Pair popularity of (px, py) relative to the most popular pair in `set`.
inline double intensity(const ProjectView& pv, ProjectIndex px, ProjectIndex py, std::span<const ProjectIndex> set) {
  (void)pv.project(px);
  (void)pv.project(py);
  if (set.size() < 2) throw error(errc::need_two_projects, "intensity needs at least two projects");
  const auto in_set = [&](ProjectIndex p) { return std::find(set.begin(), set.end(), p) != set.end(); };
  if (!in_set(px)) throw error(errc::pair_not_in_set, pv.project(px).id);
  if (!in_set(py)) throw error(errc::pair_not_in_set, pv.project(py).id);
  if (px == py) throw error(errc::same_pair_member, pv.project(px).id);

  std::size_t max_count = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (set[i] != set[j]) max_count = std::max(max_count, project_pair_popularity(pv, set[i], set[j]));
    }
  }
  if (max_count == 0) return 0.0;
  return static_cast<double>(project_pair_popularity(pv, px, py)) / static_cast<double>(max_count);
}

/// Co-dependency count of `x` with every release outside the projects of
/// both `x` and `y`.
inline std::size_t outside(const Universe& u, NodeId x, NodeId y) {
  const NodeId hx = u.chain_head(x);
  const NodeId hy = u.chain_head(y);
  if (hx == hy) {
    throw error(errc::same_project, to_string(u.node(x).key()) + " and " + to_string(u.node(y).key()));
  }
  // sum_n |rev(x) & rev(n)| == number of (dependent of x, other target) pairs.
  std::size_t total = 0;
  for (const NodeId d : u.dependents(x)) {
    for (const NodeId n : u.dependencies(d)) {
      const NodeId hn = u.chain_head(n);
      if (hn != hx && hn != hy) ++total;
    }
  }
  return total;
}
inline std::size_t outside(const Universe& u, const NodeKey& x, const NodeKey& y) {
  return outside(u, u.id_of(x), u.id_of(y));
}

/// Release-by-release co-dependency grid between two projects.
struct PairMatrix {
  std::vector<NodeId> axis_x;
  std::vector<NodeId> axis_y;
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::size_t> outside_x;
  std::vector<std::size_t> outside_y;
  std::vector<std::vector<double>> intensity;
};

inline PairMatrix release_pair_matrix(const Universe& u, const ProjectView& pv, ProjectIndex px, ProjectIndex py) {
  if (px == py) throw error(errc::same_pair_member, pv.project(px).id);
  PairMatrix m;
  m.axis_x = pv.project(px).members;
  m.axis_y = pv.project(py).members;
  m.counts.assign(m.axis_x.size(), std::vector<std::size_t>(m.axis_y.size(), 0));
  std::size_t max_count = 0;
  for (std::size_t i = 0; i < m.axis_x.size(); ++i) {
    for (std::size_t j = 0; j < m.axis_y.size(); ++j) {
      m.counts[i][j] = pair_popularity(u, m.axis_x[i], m.axis_y[j]);
      max_count = std::max(max_count, m.counts[i][j]);
    }
  }
  for (const NodeId x : m.axis_x) m.outside_x.push_back(outside(u, x, m.axis_y.front()));
  for (const NodeId y : m.axis_y) m.outside_y.push_back(outside(u, y, m.axis_x.front()));
  m.intensity.assign(m.axis_x.size(), std::vector<double>(m.axis_y.size(), 0.0));
  if (max_count > 0) {
    for (std::size_t i = 0; i < m.axis_x.size(); ++i) {
      for (std::size_t j = 0; j < m.axis_y.size(); ++j) {
        m.intensity[i][j] = static_cast<double>(m.counts[i][j]) / static_cast<double>(max_count);
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Repository-wide

/// Number of distinct projects in the union of all reverse-dependency sets,
/// i.e. projects that depend on at least one release.
inline std::size_t reuse(const Universe& u) {
  std::unordered_set<NodeId> heads;
  for (NodeId id = 0; id < u.size(); ++id) {
    if (!u.dependencies(id).empty()) heads.insert(u.chain_head(id));
  }
  return heads.size();
}

}  // namespace sug
