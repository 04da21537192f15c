#pragma once

#include <sug/error.hpp>
#include <sug/timestamp.hpp>
#include <sug/universe.hpp>
#include <sug/version_order.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sug {

/// One release as described by repository metadata.
struct ManifestRecord {
  std::string name;
  std::string release;
  Timestamp time{};
  std::vector<NodeKey> deps;

  [[nodiscard]] NodeKey key() const { return {name, release}; }
  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

struct Warning {
  std::string locator;
  std::string reason;
  friend bool operator==(const Warning&, const Warning&) = default;
};

struct IngestReport {
  std::size_t records_read = 0;
  std::size_t nodes_created = 0;
  std::size_t dep_edges_created = 0;
  std::size_t up_edges_created = 0;
  std::size_t skipped_implicit_versions = 0;
  std::size_t skipped_unresolvable = 0;
  std::vector<Warning> warnings;
};

inline constexpr std::string_view kUniverseFormatHeader = "# sug-universe v1";

/// Splits "name@release" at the last '@'. Both halves must be non-empty.
inline std::optional<NodeKey> parse_dep_ref(std::string_view ref) {
  const auto at = ref.rfind('@');
  if (at == std::string_view::npos || at == 0 || at + 1 == ref.size()) return std::nullopt;
  return NodeKey{std::string(ref.substr(0, at)), std::string(ref.substr(at + 1))};
}

struct UniverseFileOptions {
  /// Abort with errc::fatal_syntax on the first malformed line instead of
  /// skipping it with a warning.
  bool strict = false;
};

struct ParsedUniverseFile {
  std::vector<ManifestRecord> records;
  std::vector<Warning> warnings;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline const nlohmann::json& require_string(const nlohmann::json& obj, const char* field) {
  const auto it = obj.find(field);
  if (it == obj.end() || !it->is_string()) throw std::invalid_argument(std::string("missing string field '") + field + "'");
  return *it;
}

/// Throws std::invalid_argument with a reason on malformed input; reports
/// recoverable problems through `warn`.
template <typename Warn>
ManifestRecord parse_record_line(std::string_view line, Warn&& warn) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw std::invalid_argument("record is not a JSON object");
  ManifestRecord rec;
  rec.name = require_string(obj, "name").get<std::string>();
  rec.release = require_string(obj, "release").get<std::string>();
  if (rec.name.empty() || rec.release.empty()) throw std::invalid_argument("empty name or release");
  const auto time_text = require_string(obj, "time").get<std::string>();
  const auto time = parse_timestamp(time_text);
  if (!time) throw std::invalid_argument("unparseable time '" + time_text + "'");
  rec.time = *time;

  const auto deps = obj.find("deps");
  if (deps == obj.end() || !deps->is_array()) throw std::invalid_argument("missing array field 'deps'");
  std::set<NodeKey> seen;
  for (const auto& dep : *deps) {
    if (!dep.is_string()) throw std::invalid_argument("dependency entry is not a string");
    const auto ref = dep.get<std::string>();
    auto key = parse_dep_ref(ref);
    if (!key) throw std::invalid_argument("dependency '" + ref + "' is not of the form name@release");
    if (!seen.insert(*key).second) {
      warn("duplicate dependency " + ref + " dropped");
      continue;
    }
    rec.deps.push_back(std::move(*key));
  }
  return rec;
}

}  // namespace detail

/// Reads the line-oriented universe format: one JSON object per line with
/// name, release, time (ISO-8601) and deps ("name@release" strings). Blank
/// lines and lines starting with '#' are skipped.
inline ParsedUniverseFile parse_universe_file(std::istream& in, UniverseFileOptions options = {}) {
  ParsedUniverseFile out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = detail::trim(line);
    const std::string locator = "line " + std::to_string(line_no);
    if (text.empty()) continue;
    if (text.front() == '#') {
      if (text.starts_with("# sug-universe ") && text != kUniverseFormatHeader) {
        throw error(errc::fatal_syntax, locator + ": unsupported format header '" + std::string(text) + "'");
      }
      continue;
    }
    try {
      out.records.push_back(detail::parse_record_line(
          text, [&](std::string reason) { out.warnings.push_back({locator, std::move(reason)}); }));
    } catch (const std::invalid_argument& e) {
      if (options.strict) throw error(errc::fatal_syntax, locator + ": " + e.what());
      out.warnings.push_back({locator, std::string("skipped: ") + e.what()});
    }
  }
  if (in.bad()) throw error(errc::io, "read failure");
  return out;
}

inline std::string serialize_record(const ManifestRecord& rec) {
  nlohmann::ordered_json obj;
  obj["name"] = rec.name;
  obj["release"] = rec.release;
  obj["time"] = format_timestamp(rec.time);
  auto deps = nlohmann::ordered_json::array();
  for (const NodeKey& d : rec.deps) deps.push_back(to_string(d));
  obj["deps"] = std::move(deps);
  return obj.dump();
}

inline void write_universe_file(std::ostream& out, std::span<const ManifestRecord> records) {
  out << kUniverseFormatHeader << '\n';
  for (const ManifestRecord& rec : records) out << serialize_record(rec) << '\n';
  if (!out) throw error(errc::io, "write failure");
}

/// Canonical record list for a universe: releases grouped by name in chain
/// order, dependencies sorted.
inline std::vector<ManifestRecord> universe_records(const Universe& u) {
  std::vector<NodeId> order(u.size());
  for (NodeId id = 0; id < u.size(); ++id) order[id] = id;
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const ReleaseNode& na = u.node(a);
    const ReleaseNode& nb = u.node(b);
    if (na.name != nb.name) return na.name < nb.name;
    return release_precedes(na, nb);
  });
  std::vector<ManifestRecord> records;
  records.reserve(u.size());
  for (const NodeId id : order) {
    const ReleaseNode& n = u.node(id);
    ManifestRecord rec{n.name, n.release, n.time, {}};
    for (const NodeId to : u.dependencies(id)) rec.deps.push_back(u.node(to).key());
    std::sort(rec.deps.begin(), rec.deps.end());
    records.push_back(std::move(rec));
  }
  return records;
}

struct BuiltUniverse {
  Universe universe;
  IngestReport report;
};

/// Folds records into a Universe. Duplicate keys keep the first record;
/// dependencies on releases that are not in the record set are dropped and
/// counted; each name's releases are chained by time, ties broken by
/// version order.
inline BuiltUniverse build_universe(std::span<const ManifestRecord> records) {
  BuiltUniverse out;
  IngestReport& report = out.report;
  report.records_read = records.size();

  std::vector<const ManifestRecord*> kept;
  std::set<NodeKey> seen;
  for (const ManifestRecord& rec : records) {
    if (!seen.insert(rec.key()).second) {
      report.warnings.push_back({to_string(rec.key()), "duplicate release record ignored"});
      continue;
    }
    kept.push_back(&rec);
  }
  std::sort(kept.begin(), kept.end(), [](const ManifestRecord* a, const ManifestRecord* b) {
    if (a->name != b->name) return a->name < b->name;
    if (a->time != b->time) return a->time < b->time;
    return compare_versions(a->release, b->release) < 0;
  });

  Universe& u = out.universe;
  for (const ManifestRecord* rec : kept) u.add_node({rec->name, rec->release, rec->time});
  report.nodes_created = u.size();

  for (NodeId id = 1; id < u.size(); ++id) {
    if (u.node(id - 1).name == u.node(id).name) {
      u.add_update(id - 1, id);
      ++report.up_edges_created;
    }
  }

  for (NodeId id = 0; id < kept.size(); ++id) {
    const ManifestRecord& rec = *kept[id];
    std::set<NodeKey> declared;
    for (const NodeKey& dep : rec.deps) {
      if (!declared.insert(dep).second) continue;
      if (dep == rec.key()) {
        report.warnings.push_back({to_string(rec.key()), "self dependency ignored"});
        continue;
      }
      const auto target = u.find(dep);
      if (!target) {
        ++report.skipped_unresolvable;
        report.warnings.push_back({to_string(rec.key()), "unresolvable dependency " + to_string(dep)});
        continue;
      }
      u.add_dependency(id, *target);
      ++report.dep_edges_created;
    }
  }
  return out;
}

}  // namespace sug
