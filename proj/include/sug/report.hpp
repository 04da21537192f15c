#pragma once

#include <sug/csv.hpp>
#include <sug/metrics.hpp>
#include <sug/project_view.hpp>
#include <sug/recommend.hpp>
#include <sug/summary.hpp>
#include <sug/svg.hpp>
#include <sug/universe.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

// CSV tables and SVG renderings of the metrics. Every number written here is
// taken from a metrics/recommend call; nothing is recomputed locally.

namespace sug {

struct TimeWindow {
  Timestamp start = kBeginningOfTime;
  Timestamp end = kEndOfTime;
  [[nodiscard]] bool contains(Timestamp t) const { return start <= t && t <= end; }
};

// ---------------------------------------------------------------------------
// Diffusion

struct DiffusionRow {
  Timestamp time;
  NodeId release = kNoNode;
  std::size_t popularity = 0;
  std::size_t variety = 0;
};

/// One row per release per dependency event time (where either metric may
/// change), releases in the given order, times ascending.
inline std::vector<DiffusionRow> diffusion_rows(const Universe& u, std::span<const NodeId> releases,
                                                const TimeWindow& window = {}) {
  std::vector<DiffusionRow> rows;
  for (const NodeId r : releases) {
    for (const Timestamp t : dependency_event_times(u, r)) {
      if (!window.contains(t)) continue;
      rows.push_back({t, r, popularity_at(u, r, t), variety_at(u, r, t)});
    }
  }
  return rows;
}

inline void write_diffusion_csv(std::ostream& out, const Universe& u, std::span<const DiffusionRow> rows) {
  csv::Writer w(out);
  w.row({"time", "release", "popularity", "variety"});
  for (const DiffusionRow& r : rows) {
    w.row({format_timestamp(r.time), to_string(u.node(r.release).key()), csv::format_number(r.popularity),
           csv::format_number(r.variety)});
  }
}

/// Superseding points between consecutive selected releases of one project.
inline std::vector<SupersedingPoint> selection_superseding_points(const Universe& u, std::span<const NodeId> releases,
                                                                  MetricKind kind) {
  std::vector<SupersedingPoint> points;
  for (std::size_t i = 0; i + 1 < releases.size(); ++i) {
    const NodeId a = releases[i];
    const NodeId b = releases[i + 1];
    if (u.chain_head(a) != u.chain_head(b) || !release_precedes(u.node(a), u.node(b))) continue;
    if (auto p = superseding_point(u, a, b, kind)) points.push_back(*p);
  }
  return points;
}

namespace detail {

inline std::vector<Timestamp> month_ticks(Timestamp lo, Timestamp hi, std::size_t max_ticks) {
  using namespace std::chrono;
  std::vector<Timestamp> ticks;
  if (hi <= lo) return ticks;
  const year_month_day first{floor<days>(lo)};
  year_month ym = first.year() / first.month();
  if (sys_days{ym / 1} < floor<days>(lo)) ym += months{1};
  const year_month_day last{floor<days>(hi)};
  const int span = (static_cast<int>(last.year()) - static_cast<int>(ym.year())) * 12 +
                   (static_cast<int>(static_cast<unsigned>(last.month())) - static_cast<int>(static_cast<unsigned>(ym.month()))) + 1;
  const int step = std::max(1, static_cast<int>(std::ceil(static_cast<double>(span) / static_cast<double>(max_ticks))));
  for (; time_point_cast<milliseconds>(sys_days{ym / 1}) <= hi; ym += months{step}) {
    ticks.push_back(time_point_cast<milliseconds>(sys_days{ym / 1}));
  }
  return ticks;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double px_lo = 0.0;
  double px_hi = 1.0;
  [[nodiscard]] double map(double v) const {
    if (hi == lo) return px_lo;
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

inline double ms(Timestamp t) { return static_cast<double>(t.time_since_epoch().count()); }

}  // namespace detail

/// Two stacked panels (popularity, variety) with one step line per release
/// and a marker at each superseding point.
inline void write_diffusion_svg(std::ostream& out, const Universe& u, std::span<const NodeId> releases,
                                const TimeWindow& window = {}) {
  svg::Document doc("Diffusion plot");
  std::vector<TimeSeries> pop;
  std::vector<TimeSeries> var;
  Timestamp lo = kEndOfTime;
  Timestamp hi = kBeginningOfTime;
  for (const NodeId r : releases) {
    pop.push_back(diffusion_series(u, r, MetricKind::popularity));
    var.push_back(diffusion_series(u, r, MetricKind::variety));
    lo = std::min(lo, u.node(r).time);
    hi = std::max(hi, u.node(r).time);
    if (!pop.back().samples.empty()) hi = std::max(hi, pop.back().samples.back().time);
  }
  lo = std::max(lo, window.start);
  hi = std::min(hi, window.end);
  if (releases.empty() || hi < lo) {
    doc.text({svg::kWidth / 2, svg::kHeight / 2}, "no data", "middle");
    doc.write(out);
    return;
  }
  if (hi == lo) hi = lo + std::chrono::hours(24);

  const double left = 70.0;
  const double right = 760.0;
  const detail::Axis x{detail::ms(lo), detail::ms(hi), left, right};
  const auto clamp_t = [&](Timestamp t) { return std::clamp(t, lo, hi); };

  struct Panel {
    MetricKind kind;
    const std::vector<TimeSeries>* series;
    double top;
    double bottom;
  };
  const Panel panels[] = {{MetricKind::popularity, &pop, 40.0, 250.0}, {MetricKind::variety, &var, 300.0, 510.0}};
  for (const Panel& panel : panels) {
    std::size_t ymax = 1;
    for (const TimeSeries& s : *panel.series) ymax = std::max(ymax, s.value_at(hi));
    const detail::Axis y{0.0, static_cast<double>(ymax), panel.bottom, panel.top};
    doc.line({left, panel.bottom}, {right, panel.bottom}, "#444");
    doc.line({left, panel.top}, {left, panel.bottom}, "#444");
    doc.text({left - 50, (panel.top + panel.bottom) / 2}, std::string(to_string(panel.kind)), "middle", "#222", -90);
    doc.text({left - 6, panel.bottom + 4}, "0", "end");
    doc.text({left - 6, panel.top + 4}, std::to_string(ymax), "end");
    for (const Timestamp tick : detail::month_ticks(lo, hi, 10)) {
      const double px = x.map(detail::ms(tick));
      doc.line({px, panel.bottom}, {px, panel.bottom + 4}, "#444");
      std::string label = format_timestamp(tick).substr(0, 7);
      doc.text({px, panel.bottom + 16}, label, "middle");
    }
    for (std::size_t i = 0; i < panel.series->size(); ++i) {
      const TimeSeries& s = (*panel.series)[i];
      const Timestamp born = clamp_t(u.node(releases[i]).time);
      std::vector<svg::Point> pts;
      std::size_t value = s.value_at(born);
      pts.push_back({x.map(detail::ms(born)), y.map(static_cast<double>(value))});
      for (const Sample& sample : s.samples) {
        if (sample.time <= born || sample.time > hi) continue;
        const double px = x.map(detail::ms(sample.time));
        pts.push_back({px, y.map(static_cast<double>(value))});
        value = sample.value;
        pts.push_back({px, y.map(static_cast<double>(value))});
      }
      pts.push_back({right, y.map(static_cast<double>(value))});
      doc.polyline(pts, svg::palette(i));
    }
    for (const SupersedingPoint& p : selection_superseding_points(u, releases, panel.kind)) {
      if (!window.contains(p.time) || p.time < lo || p.time > hi) continue;
      const std::size_t v = metric_at(u, u.id_of(p.successor), panel.kind, p.time);
      doc.circle({x.map(detail::ms(p.time)), y.map(static_cast<double>(v))}, 5.0, "none", "#000");
    }
  }
  for (std::size_t i = 0; i < releases.size(); ++i) {
    const double ly = 50.0 + 18.0 * static_cast<double>(i);
    doc.line({775, ly - 4}, {795, ly - 4}, svg::palette(i), 2.0);
    doc.text({800, ly}, to_string(u.node(releases[i]).key()));
  }
  doc.write(out);
}

// ---------------------------------------------------------------------------
// Project pairs

inline void write_pairs_csv(std::ostream& out, const ProjectView& pv, const ProjectPairTable& table) {
  csv::Writer w(out);
  std::vector<std::string> header{"project"};
  for (const ProjectIndex p : table.axis) header.push_back(pv.project(p).id);
  w.row(header);
  for (std::size_t i = 0; i < table.axis.size(); ++i) {
    std::vector<std::string> row{pv.project(table.axis[i]).id};
    for (std::size_t j = 0; j < table.axis.size(); ++j) {
      row.push_back(i == j ? std::string() : csv::format_number(table.intensity(i, j)));
    }
    w.row(row);
  }
}

/// Heat map: cell shading proportional to intensity, count annotated.
inline void write_pairs_svg(std::ostream& out, const ProjectView& pv, const ProjectPairTable& table) {
  svg::Document doc("Project pair plot");
  const std::size_t n = table.axis.size();
  const double left = 260.0;
  const double top = 150.0;
  const double cell = std::min(40.0, std::min((svg::kWidth - left - 20.0), (svg::kHeight - top - 20.0)) /
                                         static_cast<double>(std::max<std::size_t>(n, 1)));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& id = pv.project(table.axis[i]).id;
    doc.text({left - 6, top + cell * (static_cast<double>(i) + 0.5) + 4}, id, "end");
    doc.text({left + cell * (static_cast<double>(i) + 0.5), top - 6}, id, "start", "#222", -45);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = left + cell * static_cast<double>(j);
      const double y = top + cell * static_cast<double>(i);
      if (i == j) {
        doc.rect(x, y, cell, cell, "#ddd", 1.0, "#fff");
        continue;
      }
      const double v = table.intensity(i, j);
      doc.rect(x, y, cell, cell, "#fff", 1.0, "#ccc");
      if (v > 0.0) doc.rect(x, y, cell, cell, "#08306b", v);
      doc.text({x + cell / 2, y + cell / 2 + 4}, std::to_string(table.counts[i][j]), "middle",
               v > 0.5 ? "#fff" : "#222");
    }
  }
  doc.write(out);
}

// ---------------------------------------------------------------------------
// Release pairs

inline void write_release_pairs_csv(std::ostream& out, const Universe& u, const PairMatrix& m) {
  csv::Writer w(out);
  w.row({"cell", "x_release", "y_release", "popularity", "intensity"});
  for (std::size_t i = 0; i < m.axis_x.size(); ++i) {
    for (std::size_t j = 0; j < m.axis_y.size(); ++j) {
      w.row({"pair", to_string(u.node(m.axis_x[i]).key()), to_string(u.node(m.axis_y[j]).key()),
             csv::format_number(m.counts[i][j]), csv::format_number(m.intensity[i][j])});
    }
  }
  for (std::size_t i = 0; i < m.axis_x.size(); ++i) {
    w.row({"outside-x", to_string(u.node(m.axis_x[i]).key()), "", csv::format_number(m.outside_x[i]), ""});
  }
  for (std::size_t j = 0; j < m.axis_y.size(); ++j) {
    w.row({"outside-y", "", to_string(u.node(m.axis_y[j]).key()), csv::format_number(m.outside_y[j]), ""});
  }
}

/// Grid of release pairings annotated with popularity; outside counts sit
/// one step past the end of each axis.
inline void write_release_pairs_svg(std::ostream& out, const Universe& u, const PairMatrix& m) {
  svg::Document doc("Release pair plot");
  const double left = 160.0;
  const double bottom = 440.0;
  const std::size_t nx = m.axis_x.size();
  const std::size_t ny = m.axis_y.size();
  const double dx = (svg::kWidth - left - 60.0) / static_cast<double>(nx + 1);
  const double dy = (bottom - 40.0) / static_cast<double>(ny + 1);
  const auto px = [&](std::size_t i) { return left + dx * (static_cast<double>(i) + 0.5); };
  const auto py = [&](std::size_t j) { return bottom - dy * (static_cast<double>(j) + 0.5); };

  doc.line({left, bottom}, {left + dx * static_cast<double>(nx + 1), bottom}, "#444");
  doc.line({left, bottom}, {left, bottom - dy * static_cast<double>(ny + 1)}, "#444");
  for (std::size_t i = 0; i < nx; ++i) {
    doc.text({px(i), bottom + 14}, u.node(m.axis_x[i]).release, "end", "#222", -45);
  }
  for (std::size_t j = 0; j < ny; ++j) doc.text({left - 6, py(j) + 4}, u.node(m.axis_y[j]).release, "end");
  doc.text({px(nx), bottom + 14}, "outside", "end", "#222", -45);
  doc.text({left - 6, py(ny) + 4}, "outside", "end");
  if (nx > 0) doc.text({left + dx * static_cast<double>(nx + 1) / 2, svg::kHeight - 8}, u.node(m.axis_x[0]).name, "middle");
  if (ny > 0) doc.text({20, bottom / 2}, u.node(m.axis_y[0]).name, "middle", "#222", -90);

  const double rmax = std::min(dx, dy) * 0.45;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      if (m.counts[i][j] == 0) {
        doc.circle({px(i), py(j)}, 1.5, "#bbb");
        continue;
      }
      doc.circle({px(i), py(j)}, std::max(3.0, rmax * std::sqrt(m.intensity[i][j])), "#08306b");
      doc.text({px(i), py(j) - 4 - rmax * std::sqrt(m.intensity[i][j])}, std::to_string(m.counts[i][j]), "middle");
    }
  }
  for (std::size_t i = 0; i < nx; ++i) {
    doc.line({px(i), py(ny) + 8}, {px(i), bottom}, "#eee", 1.0, true);
    doc.text({px(i), py(ny) + 4}, std::to_string(m.outside_x[i]), "middle", "#d62728");
  }
  for (std::size_t j = 0; j < ny; ++j) {
    doc.text({px(nx), py(j) + 4}, std::to_string(m.outside_y[j]), "middle", "#d62728");
  }
  doc.write(out);
}

// ---------------------------------------------------------------------------
// Recommendation and accuracy tables

inline void write_ranked_csv(std::ostream& out, const RankedList& list) {
  csv::Writer w(out);
  w.row({"anchor", "rank", "project", "score"});
  for (std::size_t i = 0; i < list.entries.size(); ++i) {
    w.row({list.anchor, std::to_string(i + 1), list.entries[i].project, csv::format_number(list.entries[i].score)});
  }
}

inline void write_accuracy_csv(std::ostream& out, const CrossRepoReport& report) {
  csv::Writer w(out);
  w.row({"system", "libraries", "hits", "accuracy"});
  for (const AccuracyResult& r : report.systems) {
    w.row({r.system, csv::format_number(r.libraries), csv::format_number(r.hits), csv::format_number(r.accuracy)});
  }
}

inline void write_summary_csv(std::ostream& out, const Summary& s) {
  csv::Writer w(out);
  w.row({"statistic", "value"});
  w.row({"count", csv::format_number(s.count)});
  w.row({"min", csv::format_number(s.min)});
  w.row({"q1", csv::format_number(s.q1)});
  w.row({"median", csv::format_number(s.median)});
  w.row({"mean", csv::format_number(s.mean)});
  w.row({"q3", csv::format_number(s.q3)});
  w.row({"max", csv::format_number(s.max)});
}

// ---------------------------------------------------------------------------
// Repository statistics

struct UniverseStats {
  std::size_t nodes = 0;
  std::size_t dependency_edges = 0;
  std::size_t update_edges = 0;
  std::size_t projects = 0;
  std::size_t project_dependency_edges = 0;
  std::size_t reuse = 0;
  /// Project-level popularity over projects used at least once.
  Summary reused_project_popularity;
  std::string most_popular_project;
  std::size_t most_popular_project_popularity = 0;
};

inline UniverseStats universe_stats(const Universe& u, const ProjectView& pv) {
  UniverseStats s;
  s.nodes = u.size();
  s.dependency_edges = u.dependency_edge_count();
  s.update_edges = u.update_edge_count();
  s.projects = pv.size();
  s.project_dependency_edges = pv.dependency_edge_count();
  s.reuse = reuse(u);
  std::vector<double> pops;
  for (ProjectIndex p = 0; p < pv.size(); ++p) {
    const std::size_t pop = pv.dependents(p).size();
    if (pop == 0) continue;
    pops.push_back(static_cast<double>(pop));
    if (pop > s.most_popular_project_popularity) {
      s.most_popular_project_popularity = pop;
      s.most_popular_project = pv.project(p).id;
    }
  }
  s.reused_project_popularity = summarize(std::move(pops));
  return s;
}

inline void write_stats_csv(std::ostream& out, const UniverseStats& s) {
  csv::Writer w(out);
  w.row({"metric", "value"});
  w.row({"nodes", csv::format_number(s.nodes)});
  w.row({"dependency_edges", csv::format_number(s.dependency_edges)});
  w.row({"update_edges", csv::format_number(s.update_edges)});
  w.row({"projects", csv::format_number(s.projects)});
  w.row({"project_dependency_edges", csv::format_number(s.project_dependency_edges)});
  w.row({"reuse", csv::format_number(s.reuse)});
  w.row({"reused_projects", csv::format_number(s.reused_project_popularity.count)});
  w.row({"project_popularity_min", csv::format_number(s.reused_project_popularity.min)});
  w.row({"project_popularity_q1", csv::format_number(s.reused_project_popularity.q1)});
  w.row({"project_popularity_median", csv::format_number(s.reused_project_popularity.median)});
  w.row({"project_popularity_mean", csv::format_number(s.reused_project_popularity.mean)});
  w.row({"project_popularity_q3", csv::format_number(s.reused_project_popularity.q3)});
  w.row({"project_popularity_max", csv::format_number(s.reused_project_popularity.max)});
  w.row({"most_popular_project", s.most_popular_project});
}

}  // namespace sug
