#pragma once

#include <sug/csv.hpp>
#include <sug/error.hpp>
#include <sug/manifest.hpp>
#include <sug/timestamp.hpp>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sug {

// Supported subset of the Maven project model: coordinates, one parent,
// dependencies and dependencyManagement. No property interpolation.

struct PomDependency {
  std::string group_id;
  std::string artifact_id;
  std::optional<std::string> version;
  friend bool operator==(const PomDependency&, const PomDependency&) = default;
};

struct PomParent {
  std::string group_id;
  std::string artifact_id;
  std::string version;
  friend bool operator==(const PomParent&, const PomParent&) = default;
};

struct PomModel {
  std::optional<std::string> group_id;
  std::optional<std::string> artifact_id;
  std::optional<std::string> version;
  std::optional<PomParent> parent;
  std::vector<PomDependency> dependencies;
  std::vector<PomDependency> managed_dependencies;

  /// groupId, falling back to the one declared in <parent>.
  [[nodiscard]] std::optional<std::string> effective_group_id() const {
    if (group_id) return group_id;
    if (parent) return parent->group_id;
    return std::nullopt;
  }
  [[nodiscard]] std::optional<std::string> effective_version() const {
    if (version) return version;
    if (parent) return parent->version;
    return std::nullopt;
  }
};

namespace detail {

using boost::property_tree::ptree;

inline std::string trimmed(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::optional<std::string> child_text(const ptree& node, const char* name) {
  const auto child = node.get_child_optional(name);
  if (!child) return std::nullopt;
  std::string text = trimmed(child->data());
  if (text.empty()) return std::nullopt;
  return text;
}

inline std::vector<PomDependency> read_dependencies(const ptree& deps_node) {
  std::vector<PomDependency> deps;
  for (const auto& [tag, dep] : deps_node) {
    if (tag != "dependency") continue;
    PomDependency d;
    d.group_id = child_text(dep, "groupId").value_or("");
    d.artifact_id = child_text(dep, "artifactId").value_or("");
    d.version = child_text(dep, "version");
    deps.push_back(std::move(d));
  }
  return deps;
}

inline bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

inline bool icontains(std::string_view hay, std::string_view needle) {
  if (needle.size() > hay.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
    if (iequals(hay.substr(i, needle.size()), needle)) return true;
  }
  return false;
}

}  // namespace detail

/// Why a dependency version cannot be used as an explicit release reference.
/// Empty when the version is usable.
inline std::optional<std::string> implicit_version_reason(std::string_view version) {
  if (version.find("${") != std::string_view::npos) return "property reference";
  if (detail::icontains(version, "SNAPSHOT")) return "SNAPSHOT version";
  if (detail::iequals(version, "latest") || detail::iequals(version, "release")) return "floating version";
  if (!version.empty() && (version.front() == '[' || version.front() == '(')) return "version range";
  return std::nullopt;
}

inline PomModel parse_pom_model(std::string_view xml) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw error(errc::malformed_xml, e.what());
  }
  const auto project = tree.get_child_optional("project");
  if (!project) throw error(errc::malformed_xml, "no <project> root element");

  PomModel model;
  model.group_id = detail::child_text(*project, "groupId");
  model.artifact_id = detail::child_text(*project, "artifactId");
  model.version = detail::child_text(*project, "version");
  if (const auto parent = project->get_child_optional("parent")) {
    PomParent p;
    p.group_id = detail::child_text(*parent, "groupId").value_or("");
    p.artifact_id = detail::child_text(*parent, "artifactId").value_or("");
    p.version = detail::child_text(*parent, "version").value_or("");
    model.parent = std::move(p);
  }
  if (const auto deps = project->get_child_optional("dependencies")) {
    model.dependencies = detail::read_dependencies(*deps);
  }
  if (const auto mgmt = project->get_child_optional("dependencyManagement.dependencies")) {
    model.managed_dependencies = detail::read_dependencies(*mgmt);
  }
  return model;
}

/// Applies one level of inheritance: missing groupId/version come from the
/// parent, and dependencies without a version take it from the parent's
/// dependencyManagement.
inline PomModel resolve_parent(const PomModel& child, const PomModel& parent) {
  const auto pg = parent.effective_group_id();
  const auto pv = parent.effective_version();
  if (!child.parent || !pg || !parent.artifact_id || !pv || child.parent->group_id != *pg ||
      child.parent->artifact_id != *parent.artifact_id || child.parent->version != *pv) {
    const std::string declared =
        child.parent ? child.parent->group_id + ":" + child.parent->artifact_id + ":" + child.parent->version
                     : std::string("<none>");
    throw error(errc::parent_mismatch, "declared parent " + declared + " does not match supplied parent " +
                                           pg.value_or("?") + ":" + parent.artifact_id.value_or("?") + ":" +
                                           pv.value_or("?"));
  }
  PomModel out = child;
  if (!out.group_id) out.group_id = pg;
  if (!out.version) out.version = pv;
  for (PomDependency& dep : out.dependencies) {
    if (dep.version) continue;
    const auto managed = [&](const std::vector<PomDependency>& list) -> std::optional<std::string> {
      for (const PomDependency& m : list) {
        if (m.group_id == dep.group_id && m.artifact_id == dep.artifact_id && m.version) return m.version;
      }
      return std::nullopt;
    };
    // The child's own management section wins over the parent's.
    dep.version = managed(child.managed_dependencies);
    if (!dep.version) dep.version = managed(parent.managed_dependencies);
  }
  return out;
}

struct PomRecord {
  ManifestRecord record;
  std::size_t skipped_implicit_versions = 0;
  std::vector<std::string> warnings;
};

/// Turns a (possibly parent-resolved) model into a record named
/// "groupId:artifactId". Dependencies whose version is not an explicit
/// release are skipped and counted.
inline PomRecord to_record(const PomModel& model, Timestamp artifact_time) {
  const auto group = model.effective_group_id();
  const auto version = model.effective_version();
  if (!group || !model.artifact_id || !version) {
    throw error(errc::missing_coordinates, "POM lacks groupId, artifactId or version");
  }
  if (const auto why = implicit_version_reason(*version)) {
    throw error(errc::missing_coordinates, "project version '" + *version + "' is not explicit (" + *why + ")");
  }
  PomRecord out;
  out.record.name = *group + ":" + *model.artifact_id;
  out.record.release = *version;
  out.record.time = artifact_time;

  std::map<std::string, std::string> chosen;
  for (const PomDependency& dep : model.dependencies) {
    const std::string coord = dep.group_id + ":" + dep.artifact_id;
    std::optional<std::string> v = dep.version;
    if (!v) {
      for (const PomDependency& m : model.managed_dependencies) {
        if (m.group_id == dep.group_id && m.artifact_id == dep.artifact_id && m.version) {
          v = m.version;
          break;
        }
      }
    }
    if (dep.group_id.empty() || dep.artifact_id.empty()) {
      out.warnings.push_back("dependency without groupId/artifactId skipped");
      continue;
    }
    if (coord.find("${") != std::string::npos) {
      ++out.skipped_implicit_versions;
      out.warnings.push_back("dependency " + coord + " skipped: property reference in coordinates");
      continue;
    }
    if (!v) {
      ++out.skipped_implicit_versions;
      out.warnings.push_back("dependency " + coord + " skipped: no explicit version");
      continue;
    }
    if (const auto why = implicit_version_reason(*v)) {
      ++out.skipped_implicit_versions;
      out.warnings.push_back("dependency " + coord + " skipped: " + *why + " '" + *v + "'");
      continue;
    }
    const auto [it, inserted] = chosen.emplace(coord, *v);
    if (!inserted) {
      if (it->second != *v) {
        out.warnings.push_back("dependency " + coord + " declared with several versions; kept " + it->second);
      }
      continue;
    }
    out.record.deps.push_back({coord, *v});
  }
  return out;
}

inline PomRecord parse_pom(std::string_view xml, Timestamp artifact_time) {
  return to_record(parse_pom_model(xml), artifact_time);
}

// ---------------------------------------------------------------------------
// Directory ingestion

/// path -> upload time, read from a two-column CSV (path,ISO-timestamp).
/// Relative paths are taken relative to `base`.
inline std::map<std::filesystem::path, Timestamp> read_time_index(const std::filesystem::path& file,
                                                                  const std::filesystem::path& base) {
  std::ifstream in(file);
  if (!in) throw error(errc::io, "cannot open time index " + file.string());
  std::map<std::filesystem::path, Timestamp> index;
  std::vector<std::string> row;
  std::size_t line = 0;
  while (csv::read_row(in, row)) {
    ++line;
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() < 2) throw error(errc::fatal_syntax, file.string() + ":" + std::to_string(line) + ": expected path,time");
    const auto t = parse_timestamp(detail::trimmed(row[1]));
    if (!t) {
      if (line == 1) continue;  // header
      throw error(errc::fatal_syntax, file.string() + ":" + std::to_string(line) + ": bad timestamp '" + row[1] + "'");
    }
    std::filesystem::path p = detail::trimmed(row[0]);
    if (p.is_relative()) p = base / p;
    index[p.lexically_normal()] = *t;
  }
  return index;
}

struct PomTreeOptions {
  std::optional<std::filesystem::path> time_index;
  /// Stop at the first unreadable or malformed POM.
  bool strict = false;
};

struct PomTreeResult {
  std::vector<ManifestRecord> records;
  IngestReport report;
};

inline bool is_pom_file(const std::filesystem::path& p) {
  return p.extension() == ".pom" || p.filename() == "pom.xml";
}

/// Walks `root` for *.pom and pom.xml files, resolves parents found in the
/// same tree (one level) and produces one record per usable POM. The report
/// carries the skip counters and warnings; node/edge counters are filled in
/// by build_universe.
inline PomTreeResult read_pom_tree(const std::filesystem::path& root, const PomTreeOptions& options = {}) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw error(errc::io, "not a directory: " + root.string());

  std::map<fs::path, Timestamp> times;
  if (options.time_index) times = read_time_index(*options.time_index, root);

  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && is_pom_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  PomTreeResult result;
  IngestReport& report = result.report;
  report.records_read = files.size();

  struct Loaded {
    fs::path path;
    PomModel model;
  };
  std::vector<Loaded> loaded;
  std::map<std::string, std::size_t> by_coordinate;
  for (const fs::path& file : files) {
    const std::string locator = file.lexically_relative(root).generic_string();
    std::ifstream in(file, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    if (!in && !in.eof()) {
      if (options.strict) throw error(errc::io, "cannot read " + file.string());
      report.warnings.push_back({locator, "unreadable file skipped"});
      continue;
    }
    try {
      PomModel model = parse_pom_model(text.str());
      const auto g = model.effective_group_id();
      const auto v = model.effective_version();
      if (g && model.artifact_id && v) by_coordinate.emplace(*g + ":" + *model.artifact_id + ":" + *v, loaded.size());
      loaded.push_back({file, std::move(model)});
    } catch (const error& e) {
      if (options.strict) throw error(errc::fatal_syntax, locator + ": " + e.what());
      report.warnings.push_back({locator, std::string("skipped: ") + e.what()});
    }
  }

  for (const Loaded& item : loaded) {
    const std::string locator = item.path.lexically_relative(root).generic_string();
    PomModel model = item.model;
    if (model.parent) {
      const auto& p = *model.parent;
      const auto found = by_coordinate.find(p.group_id + ":" + p.artifact_id + ":" + p.version);
      if (found != by_coordinate.end()) {
        model = resolve_parent(model, loaded[found->second].model);
      } else {
        report.warnings.push_back(
            {locator, "parent " + p.group_id + ":" + p.artifact_id + ":" + p.version + " not in tree"});
      }
    }

    Timestamp time{};
    if (const auto it = times.find(item.path.lexically_normal()); it != times.end()) {
      time = it->second;
    } else {
      const auto mtime = fs::last_write_time(item.path);
      time = std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::file_clock::to_sys(mtime));
      report.warnings.push_back({locator, "no upload time indexed; using file modification time"});
    }

    try {
      PomRecord rec = to_record(model, time);
      report.skipped_implicit_versions += rec.skipped_implicit_versions;
      for (std::string& w : rec.warnings) report.warnings.push_back({locator, std::move(w)});
      result.records.push_back(std::move(rec.record));
    } catch (const error& e) {
      if (options.strict) throw error(errc::fatal_syntax, locator + ": " + e.what());
      report.warnings.push_back({locator, std::string("skipped: ") + e.what()});
    }
  }
  return result;
}

}  // namespace sug
