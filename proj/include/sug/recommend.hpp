#pragma once

#include <sug/error.hpp>
#include <sug/metrics.hpp>
#include <sug/project_view.hpp>
#include <sug/summary.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sug {

/// Libraries used by one system in another repository.
struct SystemProfile {
  std::string system;
  /// Project identifiers, duplicates removed, input order kept.
  std::vector<std::string> libraries;
};

struct RankedEntry {
  std::string project;
  std::size_t score = 0;
  friend bool operator==(const RankedEntry&, const RankedEntry&) = default;
};

/// Co-dependency candidates for one anchor project, best first.
struct RankedList {
  std::string anchor;
  std::size_t k = 0;
  std::vector<RankedEntry> entries;
};

/// Top-k projects by project-level pair popularity with `anchor`. Ties are
/// broken by project id ascending and the list is cut at exactly k.
inline RankedList codependency_rank(const ProjectView& pv, ProjectIndex anchor, std::size_t k) {
  if (k == 0) throw error(errc::invalid_argument, "k must be at least 1");
  RankedList list{pv.project(anchor).id, k, {}};

  // Each dependent project contributes one to every other project it uses.
  std::vector<std::size_t> score(pv.size(), 0);
  for (const ProjectIndex d : pv.dependents(anchor)) {
    for (const ProjectIndex c : pv.dependencies(d)) {
      if (c != anchor) ++score[c];
    }
  }
  // Project indices follow id order, so index order is the tie-break.
  std::vector<ProjectIndex> candidates;
  for (ProjectIndex c = 0; c < score.size(); ++c) {
    if (score[c] > 0) candidates.push_back(c);
  }
  const std::size_t keep = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep), candidates.end(),
                    [&](ProjectIndex a, ProjectIndex b) { return score[a] != score[b] ? score[a] > score[b] : a < b; });
  for (std::size_t i = 0; i < keep; ++i) {
    list.entries.push_back({pv.project(candidates[i]).id, score[candidates[i]]});
  }
  return list;
}

inline RankedList codependency_rank(const ProjectView& pv, std::string_view anchor, std::size_t k) {
  return codependency_rank(pv, pv.index_of(anchor), k);
}

/// 1 when the list names any library of the profile other than the anchor.
inline int sys_match(const RankedList& list, const SystemProfile& profile) {
  const auto in_profile = [&](const std::string& id) {
    return std::find(profile.libraries.begin(), profile.libraries.end(), id) != profile.libraries.end();
  };
  if (!in_profile(list.anchor)) throw error(errc::anchor_not_in_profile, list.anchor + " in " + profile.system);
  for (const RankedEntry& e : list.entries) {
    if (e.project != list.anchor && in_profile(e.project)) return 1;
  }
  return 0;
}

struct AccuracyResult {
  std::string system;
  std::size_t libraries = 0;
  std::size_t hits = 0;
  double accuracy = 0.0;
};

/// Share of the profile's libraries whose top-k list hits another library of
/// the same profile, in percent. Libraries unknown to `pv` count as misses.
inline AccuracyResult accuracy_detail(const ProjectView& pv, const SystemProfile& profile, std::size_t k) {
  if (profile.libraries.empty()) throw error(errc::empty_profile, profile.system);
  if (k == 0) throw error(errc::invalid_argument, "k must be at least 1");
  AccuracyResult r{profile.system, profile.libraries.size(), 0, 0.0};
  for (const std::string& lib : profile.libraries) {
    const auto p = pv.find(lib);
    if (!p) continue;
    r.hits += static_cast<std::size_t>(sys_match(codependency_rank(pv, *p, k), profile));
  }
  r.accuracy = static_cast<double>(r.hits) / static_cast<double>(r.libraries) * 100.0;
  return r;
}

inline double accuracy(const ProjectView& pv, const SystemProfile& profile, std::size_t k) {
  return accuracy_detail(pv, profile, k).accuracy;
}

struct CrossRepoReport {
  std::vector<AccuracyResult> systems;
  /// Profiles with no libraries; left out of `systems` and the summary.
  std::vector<std::string> skipped;
  Summary summary;
};

inline CrossRepoReport cross_repo_report(const ProjectView& pv, std::span<const SystemProfile> profiles,
                                         std::size_t k) {
  CrossRepoReport report;
  std::vector<double> values;
  for (const SystemProfile& profile : profiles) {
    if (profile.libraries.empty()) {
      report.skipped.push_back(profile.system);
      continue;
    }
    report.systems.push_back(accuracy_detail(pv, profile, k));
    values.push_back(report.systems.back().accuracy);
  }
  report.summary = summarize(std::move(values));
  return report;
}

/// Reads system profiles, one JSON object per line:
/// {"system": "...", "libraries": ["groupId:artifactId", ...]}. Blank lines
/// and '#' comments are skipped; duplicate libraries are dropped.
inline std::vector<SystemProfile> parse_profiles(std::istream& in) {
  std::vector<SystemProfile> profiles;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string where = "profiles line " + std::to_string(line_no);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw error(errc::fatal_syntax, where + ": " + e.what());
    }
    const auto system = obj.is_object() ? obj.find("system") : obj.end();
    const auto libs = obj.is_object() ? obj.find("libraries") : obj.end();
    if (system == obj.end() || !system->is_string() || libs == obj.end() || !libs->is_array()) {
      throw error(errc::fatal_syntax, where + ": expected {\"system\": string, \"libraries\": [string...]}");
    }
    SystemProfile profile{system->get<std::string>(), {}};
    for (const auto& lib : *libs) {
      if (!lib.is_string()) throw error(errc::fatal_syntax, where + ": library entry is not a string");
      auto id = lib.get<std::string>();
      if (std::find(profile.libraries.begin(), profile.libraries.end(), id) == profile.libraries.end()) {
        profile.libraries.push_back(std::move(id));
      }
    }
    profiles.push_back(std::move(profile));
  }
  if (in.bad()) throw error(errc::io, "read failure");
  return profiles;
}

}  // namespace sug
