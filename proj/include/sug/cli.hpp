#pragma once

#include <sug/error.hpp>
#include <sug/manifest.hpp>
#include <sug/metrics.hpp>
#include <sug/pom.hpp>
#include <sug/project_view.hpp>
#include <sug/recommend.hpp>
#include <sug/report.hpp>
#include <sug/universe.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace sug::cli {

enum exit_code : int {
  kOk = 0,
  kIo = 1,
  kInputSyntax = 2,
  kUnknownEntity = 3,
};

inline int exit_code_for(errc code) {
  switch (code) {
    case errc::io: return kIo;
    case errc::unknown_node:
    case errc::unknown_project: return kUnknownEntity;
    default: return kInputSyntax;
  }
}

struct GlobalOptions {
  std::string universe;
  std::string output;
  std::string format = "csv";
  bool strict = false;
};

namespace detail {

inline ParsedUniverseFile read_universe_path(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw error(errc::io, "cannot open universe file " + path);
  return parse_universe_file(in, {strict});
}

/// Snapshots are loaded strictly: any malformed line or foreign header is a
/// syntax error.
inline Universe load_snapshot(const GlobalOptions& g) {
  if (g.universe.empty()) throw error(errc::invalid_argument, "--universe is required");
  const ParsedUniverseFile parsed = read_universe_path(g.universe, true);
  return build_universe(parsed.records).universe;
}

/// Sends output to --output when given, otherwise to `fallback`.
template <typename Fn>
void emit(const GlobalOptions& g, std::ostream& fallback, Fn&& write) {
  if (g.output.empty() || g.output == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(g.output, std::ios::binary | std::ios::trunc);
  if (!file) throw error(errc::io, "cannot open output " + g.output);
  write(file);
  file.flush();
  if (!file) throw error(errc::io, "write failure on " + g.output);
}

inline void require_csv(const GlobalOptions& g, const char* command) {
  if (g.format != "csv") throw error(errc::invalid_argument, std::string(command) + " only writes csv");
}

inline NodeKey parse_release_selector(const std::string& text) {
  const auto key = parse_dep_ref(text);
  if (!key) throw error(errc::invalid_argument, "release selector '" + text + "' is not name@release");
  return *key;
}

inline std::optional<Timestamp> parse_optional_time(const std::string& text, const char* flag) {
  if (text.empty()) return std::nullopt;
  const auto t = parse_timestamp(text);
  if (!t) throw error(errc::invalid_argument, std::string(flag) + " expects an ISO-8601 date");
  return t;
}

inline void print_report(std::ostream& err, const IngestReport& r) {
  err << "records_read=" << r.records_read << " nodes_created=" << r.nodes_created
      << " dep_edges_created=" << r.dep_edges_created << " up_edges_created=" << r.up_edges_created
      << " skipped_implicit_versions=" << r.skipped_implicit_versions
      << " skipped_unresolvable=" << r.skipped_unresolvable << " warnings=" << r.warnings.size() << '\n';
  for (const Warning& w : r.warnings) err << "warning: " << w.locator << ": " << w.reason << '\n';
}

}  // namespace detail

/// Runs the command line `args` (without the program name). Never throws;
/// returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Software universe graph analysis", "sug"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--universe", g.universe, "Universe snapshot (one JSON record per line)");
  app.add_option("-o,--output", g.output, "Output file; standard output when omitted");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "svg"}));
  app.add_flag("--strict", g.strict, "Treat malformed input records as fatal");

  // ingest
  std::string pom_dir;
  std::string time_index;
  auto* ingest = app.add_subcommand("ingest", "Build a universe snapshot from POM files or a universe file");
  ingest->add_option("--pom-dir", pom_dir, "Directory walked for *.pom and pom.xml");
  ingest->add_option("--time-index", time_index, "CSV of path,ISO-timestamp upload times");

  // diffusion
  std::vector<std::string> release_selectors;
  std::vector<std::string> projects;
  std::string from_text;
  std::string to_text;
  auto* diffusion = app.add_subcommand("diffusion", "Popularity and variety over time for releases");
  diffusion->add_option("--release", release_selectors, "Release as name@release (repeatable)");
  diffusion->add_option("--project", projects, "Every release of a project (repeatable)");
  diffusion->add_option("--from", from_text, "Window start (ISO-8601)");
  diffusion->add_option("--to", to_text, "Window end (ISO-8601)");

  auto* pairs = app.add_subcommand("pairs", "Project pair intensity matrix");
  pairs->add_option("--project", projects, "Project id (repeatable, at least two)");

  auto* release_pairs = app.add_subcommand("release-pairs", "Release pair popularity grid for two projects");
  release_pairs->add_option("--project", projects, "Project id (exactly two: x then y)");

  std::string anchor;
  std::size_t k = 10;
  auto* recommend = app.add_subcommand("recommend", "Top-k co-dependency list for one project");
  recommend->add_option("--anchor", anchor, "Anchor project id")->required();
  recommend->add_option("-k", k, "List length")->check(CLI::PositiveNumber);

  std::string profiles_path;
  std::string summary_path;
  auto* accuracy_cmd = app.add_subcommand("accuracy", "Top-k accuracy of system profiles against the universe");
  accuracy_cmd->add_option("--profiles", profiles_path, "System profiles (one JSON object per line)")->required();
  accuracy_cmd->add_option("-k", k, "List length")->check(CLI::PositiveNumber);
  accuracy_cmd->add_option("--summary", summary_path, "Also write the summary statistics as CSV here");

  auto* stats = app.add_subcommand("stats", "Node, project and reuse counts");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("sug");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputSyntax;
  }

  try {
    if (ingest->parsed()) {
      if (pom_dir.empty() && g.universe.empty()) throw error(errc::invalid_argument, "ingest needs --pom-dir or --universe");
      std::vector<ManifestRecord> records;
      IngestReport pom_report;
      if (!pom_dir.empty()) {
        PomTreeOptions opts;
        if (!time_index.empty()) opts.time_index = time_index;
        opts.strict = g.strict;
        PomTreeResult tree = read_pom_tree(pom_dir, opts);
        records = std::move(tree.records);
        pom_report = std::move(tree.report);
      }
      std::vector<Warning> parse_warnings;
      if (!g.universe.empty()) {
        ParsedUniverseFile parsed = detail::read_universe_path(g.universe, g.strict);
        pom_report.records_read += parsed.records.size();
        for (ManifestRecord& r : parsed.records) records.push_back(std::move(r));
        parse_warnings = std::move(parsed.warnings);
      }
      BuiltUniverse built = build_universe(records);
      IngestReport report = built.report;
      if (!pom_dir.empty()) {
        report.records_read = pom_report.records_read;
        report.skipped_implicit_versions = pom_report.skipped_implicit_versions;
      }
      std::vector<Warning> warnings = std::move(pom_report.warnings);
      warnings.insert(warnings.end(), parse_warnings.begin(), parse_warnings.end());
      warnings.insert(warnings.end(), report.warnings.begin(), report.warnings.end());
      report.warnings = std::move(warnings);

      const auto snapshot = universe_records(built.universe);
      detail::emit(g, out, [&](std::ostream& o) { write_universe_file(o, snapshot); });
      detail::print_report(err, report);
      return kOk;
    }

    if (diffusion->parsed()) {
      const Universe u = detail::load_snapshot(g);
      std::vector<NodeId> releases;
      for (const std::string& sel : release_selectors) releases.push_back(u.id_of(detail::parse_release_selector(sel)));
      if (!projects.empty()) {
        const ProjectView pv = aggregate(u);
        for (const std::string& id : projects) {
          const auto& members = pv.project(pv.index_of(id)).members;
          releases.insert(releases.end(), members.begin(), members.end());
        }
      }
      if (releases.empty()) throw error(errc::invalid_argument, "diffusion needs --release or --project");
      TimeWindow window;
      if (auto t = detail::parse_optional_time(from_text, "--from")) window.start = *t;
      if (auto t = detail::parse_optional_time(to_text, "--to")) window.end = *t;
      if (!(window.start < window.end)) throw error(errc::invalid_argument, "--from must be before --to");
      if (g.format == "svg") {
        detail::emit(g, out, [&](std::ostream& o) { write_diffusion_svg(o, u, releases, window); });
      } else {
        const auto rows = diffusion_rows(u, releases, window);
        detail::emit(g, out, [&](std::ostream& o) { write_diffusion_csv(o, u, rows); });
      }
      return kOk;
    }

    if (pairs->parsed()) {
      const Universe u = detail::load_snapshot(g);
      const ProjectView pv = aggregate(u);
      std::vector<ProjectIndex> set;
      for (const std::string& id : projects) set.push_back(pv.index_of(id));
      if (set.size() < 2) throw error(errc::need_two_projects, "pairs needs at least two --project");
      const ProjectPairTable table = project_pair_table(pv, set);
      detail::emit(g, out, [&](std::ostream& o) {
        if (g.format == "svg") {
          write_pairs_svg(o, pv, table);
        } else {
          write_pairs_csv(o, pv, table);
        }
      });
      return kOk;
    }

    if (release_pairs->parsed()) {
      const Universe u = detail::load_snapshot(g);
      const ProjectView pv = aggregate(u);
      if (projects.size() != 2) throw error(errc::need_two_projects, "release-pairs needs exactly two --project");
      const PairMatrix m = release_pair_matrix(u, pv, pv.index_of(projects[0]), pv.index_of(projects[1]));
      detail::emit(g, out, [&](std::ostream& o) {
        if (g.format == "svg") {
          write_release_pairs_svg(o, u, m);
        } else {
          write_release_pairs_csv(o, u, m);
        }
      });
      return kOk;
    }

    if (recommend->parsed()) {
      detail::require_csv(g, "recommend");
      const Universe u = detail::load_snapshot(g);
      const ProjectView pv = aggregate(u);
      const RankedList list = codependency_rank(pv, anchor, k);
      detail::emit(g, out, [&](std::ostream& o) { write_ranked_csv(o, list); });
      return kOk;
    }

    if (accuracy_cmd->parsed()) {
      detail::require_csv(g, "accuracy");
      const Universe u = detail::load_snapshot(g);
      const ProjectView pv = aggregate(u);
      std::ifstream in(profiles_path);
      if (!in) throw error(errc::io, "cannot open profiles " + profiles_path);
      const auto profiles = parse_profiles(in);
      if (g.strict) {
        for (const SystemProfile& p : profiles) {
          if (p.libraries.empty()) throw error(errc::empty_profile, p.system);
        }
      }
      const CrossRepoReport report = cross_repo_report(pv, profiles, k);
      detail::emit(g, out, [&](std::ostream& o) { write_accuracy_csv(o, report); });
      for (const std::string& s : report.skipped) err << "warning: profile " << s << " has no libraries; skipped\n";
      const Summary& s = report.summary;
      err << "systems=" << s.count << " min=" << csv::format_number(s.min) << " q1=" << csv::format_number(s.q1)
          << " median=" << csv::format_number(s.median) << " q3=" << csv::format_number(s.q3)
          << " max=" << csv::format_number(s.max) << '\n';
      if (!summary_path.empty()) {
        GlobalOptions to_summary = g;
        to_summary.output = summary_path;
        detail::emit(to_summary, out, [&](std::ostream& o) { write_summary_csv(o, s); });
      }
      return kOk;
    }

    if (stats->parsed()) {
      detail::require_csv(g, "stats");
      const Universe u = detail::load_snapshot(g);
      const ProjectView pv = aggregate(u);
      const UniverseStats s = universe_stats(u, pv);
      detail::emit(g, out, [&](std::ostream& o) { write_stats_csv(o, s); });
      return kOk;
    }
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  }
  return kInputSyntax;
}

}  // namespace sug::cli
