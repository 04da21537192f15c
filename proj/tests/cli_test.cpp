#include <sug/cli.hpp>

#include "support/fixtures.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sug;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("sug-cli-") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string snapshot(const Universe& u, const std::string& name = "universe.jsonl") {
    const fs::path p = dir_ / name;
    std::ofstream out(p);
    write_universe_file(out, universe_records(u));
    return p.string();
  }

  std::string write_text(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  static std::vector<std::vector<std::string>> rows(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> row;
    while (csv::read_row(in, row)) out.push_back(row);
    return out;
  }

  fs::path dir_;
};

void expect_well_formed_svg(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  ASSERT_NO_THROW(boost::property_tree::read_xml(in, tree));
  EXPECT_TRUE(tree.get_child_optional("svg"));
  EXPECT_EQ(text.find("href"), std::string::npos);
  EXPECT_EQ(text.find("<image"), std::string::npos);
  EXPECT_NE(text.find("viewBox=\"0 0 960 540\""), std::string::npos);
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_F(CliTest, IngestUniverseRoundTrip) {
  const Universe u = sug::testing::example_universe();
  const std::string in = snapshot(u);
  const Outcome r = run({"ingest", "--universe", in});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ostringstream expected;
  write_universe_file(expected, universe_records(u));
  EXPECT_EQ(r.out, expected.str());
  EXPECT_NE(r.err.find("records_read=8 nodes_created=8"), std::string::npos) << r.err;

  // Unordered, commented input comes out canonical.
  const std::string shuffled = write_text("in.jsonl",
                                          "# hand-written\n"
                                          "{\"name\":\"b\",\"release\":\"1\",\"time\":\"2011-01-01\",\"deps\":[\"a@1\"]}\n"
                                          "{\"name\":\"a\",\"release\":\"2\",\"time\":\"2010-05-01T00:00:00Z\",\"deps\":[]}\n"
                                          "{\"name\":\"a\",\"release\":\"1\",\"time\":\"2010-01-01\",\"deps\":[]}\n");
  const fs::path out_path = dir_ / "out.jsonl";
  ASSERT_EQ(run({"ingest", "--universe", shuffled, "-o", out_path.string()}).code, 0);
  std::ifstream produced(out_path);
  std::stringstream text;
  text << produced.rdbuf();
  EXPECT_EQ(text.str(),
            "# sug-universe v1\n"
            "{\"name\":\"a\",\"release\":\"1\",\"time\":\"2010-01-01\",\"deps\":[]}\n"
            "{\"name\":\"a\",\"release\":\"2\",\"time\":\"2010-05-01\",\"deps\":[]}\n"
            "{\"name\":\"b\",\"release\":\"1\",\"time\":\"2011-01-01\",\"deps\":[\"a@1\"]}\n");
  // The canonical snapshot is a fixed point.
  const Outcome again = run({"ingest", "--universe", out_path.string()});
  EXPECT_EQ(again.out, text.str());
}

TEST_F(CliTest, IngestPomTree) {
  const fs::path data(SUG_TEST_DATA_DIR);
  const Outcome r = run({"ingest", "--pom-dir", (data / "poms").string(), "--time-index", (data / "poms-times.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("records_read=7 nodes_created=6 dep_edges_created=5 up_edges_created=1 "
                       "skipped_implicit_versions=3 skipped_unresolvable=1"),
            std::string::npos)
      << r.err;
  EXPECT_NE(r.out.find("\"name\":\"junit:junit\",\"release\":\"4.11\",\"time\":\"2012-11-14\""), std::string::npos);

  EXPECT_EQ(run({"--strict", "ingest", "--pom-dir", (data / "poms").string(), "--time-index",
                 (data / "poms-times.csv").string()})
                .code,
            2);
}

TEST_F(CliTest, DiffusionCsvMatchesMetrics) {
  const Universe u = sug::testing::old_release_universe();
  const std::string snap = snapshot(u);
  const Outcome r = run({"--universe", snap, "diffusion", "--project", "org.lib:lib"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = rows(r.out);
  ASSERT_GT(table.size(), 1u);
  EXPECT_EQ(table[0], (std::vector<std::string>{"time", "release", "popularity", "variety"}));
  for (std::size_t i = 1; i < table.size(); ++i) {
    const auto t = parse_timestamp(table[i][0]);
    ASSERT_TRUE(t);
    const NodeId id = u.id_of(*parse_dep_ref(table[i][1]));
    EXPECT_EQ(table[i][2], std::to_string(popularity_at(u, id, *t)));
    EXPECT_EQ(table[i][3], std::to_string(variety_at(u, id, *t)));
  }

  const Outcome window = run({"--universe", snap, "diffusion", "--release", "org.lib:lib@2.0", "--from", "2011-06-01",
                          "--to", "2012-01-01"});
  ASSERT_EQ(window.code, 0);
  for (const auto& row : rows(window.out)) {
    if (row[0] == "time") continue;
    EXPECT_GE(row[0], "2011-06-01");
    EXPECT_LT(row[0], "2012-01-01");
  }
}

TEST_F(CliTest, DiffusionSvgMarkers) {
  // a1 loses to a2 when enough users move over.
  Universe u;
  u.add_node({"a", "1", make_date(2010, 1, 1)});
  u.add_node({"a", "2", make_date(2011, 1, 1)});
  u.add_update({"a", "1"}, {"a", "2"});
  for (int i = 0; i < 5; ++i) {
    const std::string s = "s" + std::to_string(i);
    u.add_node({s, "1", make_date(2010 + i / 2, 3, 1)});
    u.add_dependency({s, "1"}, {"a", i < 2 ? "1" : "2"});
  }
  const std::string snap = snapshot(u);
  const Outcome two = run({"--universe", snap, "--format", "svg", "diffusion", "--project", "a"});
  ASSERT_EQ(two.code, 0) << two.err;
  expect_well_formed_svg(two.out);
  EXPECT_EQ(count(two.out, "<polyline"), 4u);
  // One crossing per panel.
  EXPECT_EQ(count(two.out, "fill=\"none\" stroke=\"#000\""), 2u);

  const Outcome one = run({"--universe", snap, "--format", "svg", "diffusion", "--release", "a@1"});
  ASSERT_EQ(one.code, 0);
  expect_well_formed_svg(one.out);
  EXPECT_EQ(count(one.out, "<polyline"), 2u);
  EXPECT_EQ(count(one.out, "fill=\"none\" stroke=\"#000\""), 0u);

  // a2 never overtakes when nobody moves.
  Universe flat = u.timed_subgraph(make_date(2010, 12, 31));
  flat.add_node({"a", "2", make_date(2011, 1, 1)});
  flat.add_update({"a", "1"}, {"a", "2"});
  const Outcome none = run({"--universe", snapshot(flat, "flat.jsonl"), "--format", "svg", "diffusion", "--project", "a"});
  ASSERT_EQ(none.code, 0);
  EXPECT_EQ(count(none.out, "fill=\"none\" stroke=\"#000\""), 0u);
}

TEST_F(CliTest, PairsMatrix) {
  const Universe u = sug::testing::commons_universe();
  const ProjectView pv = aggregate(u);
  std::vector<std::string> args{"--universe", snapshot(u), "pairs"};
  for (const auto& id : sug::testing::commons_projects()) {
    args.push_back("--project");
    args.push_back(id);
  }
  const Outcome r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = rows(r.out);
  ASSERT_EQ(table.size(), 9u);
  std::vector<ProjectIndex> set;
  for (const auto& id : sug::testing::commons_projects()) set.push_back(pv.index_of(id));
  for (std::size_t i = 0; i < 8; ++i) {
    ASSERT_EQ(table[i + 1].size(), 9u);
    EXPECT_EQ(table[i + 1][0], sug::testing::commons_projects()[i]);
    EXPECT_EQ(table[0][i + 1], sug::testing::commons_projects()[i]);
    for (std::size_t j = 0; j < 8; ++j) {
      if (i == j) {
        EXPECT_EQ(table[i + 1][j + 1], "");
        continue;
      }
      EXPECT_EQ(std::stod(table[i + 1][j + 1]), intensity(pv, set[i], set[j], set));
      EXPECT_EQ(table[i + 1][j + 1], table[j + 1][i + 1]);
    }
  }
  // logging x collections is the strongest cell.
  EXPECT_EQ(table[8][3], "1");

  args.insert(args.begin(), {"--format", "svg"});
  const Outcome svg = run(args);
  ASSERT_EQ(svg.code, 0);
  expect_well_formed_svg(svg.out);

  const Outcome two = run({"--universe", snapshot(sug::testing::flat_universe({{"s", {"a", "b"}}}), "two.jsonl"), "pairs",
                       "--project", "a", "--project", "b"});
  EXPECT_EQ(two.out, "project,a,b\na,,1\nb,1,\n");
}

TEST_F(CliTest, ReleasePairsGrid) {
  const Universe u = sug::testing::dominant_pair_universe();
  const ProjectView pv = aggregate(u);
  const Outcome r = run({"--universe", snapshot(u), "release-pairs", "--project", "org.x:x", "--project", "org.y:y"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = rows(r.out);
  EXPECT_EQ(table[0], (std::vector<std::string>{"cell", "x_release", "y_release", "popularity", "intensity"}));
  std::size_t pairs_seen = 0;
  for (const auto& row : table) {
    if (row[0] == "pair") {
      ++pairs_seen;
      EXPECT_EQ(row[3], std::to_string(pair_popularity(u, u.id_of(*parse_dep_ref(row[1])), u.id_of(*parse_dep_ref(row[2])))));
    } else if (row[0] == "outside-x") {
      const NodeId x = u.id_of(*parse_dep_ref(row[1]));
      EXPECT_EQ(row[3], std::to_string(outside(u, x, u.id_of({"org.y:y", "1.0"}))));
    } else if (row[0] == "outside-y") {
      const NodeId y = u.id_of(*parse_dep_ref(row[2]));
      EXPECT_EQ(row[3], std::to_string(outside(u, y, u.id_of({"org.x:x", "1.0"}))));
    }
  }
  EXPECT_EQ(pairs_seen, 6u);

  const Outcome svg = run({"--universe", snapshot(u), "--format", "svg", "release-pairs", "--project", "org.x:x",
                       "--project", "org.y:y"});
  ASSERT_EQ(svg.code, 0);
  expect_well_formed_svg(svg.out);

  // No shared users: all-zero grid, still rendered.
  const Universe apart = sug::testing::flat_universe({{"s", {"a"}}, {"t", {"b"}}});
  const Outcome zero = run({"--universe", snapshot(apart, "apart.jsonl"), "release-pairs", "--project", "a", "--project", "b"});
  ASSERT_EQ(zero.code, 0);
  EXPECT_EQ(zero.out,
            "cell,x_release,y_release,popularity,intensity\n"
            "pair,a@1,b@1,0,0\n"
            "outside-x,a@1,,0,\n"
            "outside-y,,b@1,0,\n");
  const Outcome zero_svg = run({"--universe", snapshot(apart, "apart.jsonl"), "--format", "svg", "release-pairs",
                            "--project", "a", "--project", "b"});
  expect_well_formed_svg(zero_svg.out);
}

TEST_F(CliTest, RecommendAndAccuracy) {
  const Universe u = sug::testing::commons_universe();
  const std::string snap = snapshot(u);
  const Outcome r = run({"--universe", snap, "recommend", "--anchor", "commons-logging:commons-logging", "-k", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = rows(r.out);
  ASSERT_EQ(table.size(), 4u);
  EXPECT_EQ(table[1], (std::vector<std::string>{"commons-logging:commons-logging", "1",
                                                "commons-collections:commons-collections", "6"}));

  const std::string profiles = write_text(
      "profiles.jsonl",
      "{\"system\":\"web\",\"libraries\":[\"commons-logging:commons-logging\",\"commons-collections:commons-collections\","
      "\"commons-io:commons-io\",\"junit:junit\"]}\n"
      "{\"system\":\"cli\",\"libraries\":[\"commons-lang:commons-lang\",\"commons-io:commons-io\"]}\n"
      "{\"system\":\"odd\",\"libraries\":[\"commons-codec:commons-codec\",\"commons-digester:commons-digester\"]}\n"
      "{\"system\":\"bare\",\"libraries\":[]}\n");
  const fs::path summary = dir_ / "summary.csv";
  const Outcome acc = run({"--universe", snap, "accuracy", "--profiles", profiles, "-k", "10", "--summary", summary.string()});
  ASSERT_EQ(acc.code, 0) << acc.err;
  const auto acc_rows = rows(acc.out);
  ASSERT_EQ(acc_rows.size(), 4u);
  std::vector<double> values;
  for (std::size_t i = 1; i < acc_rows.size(); ++i) values.push_back(std::stod(acc_rows[i][3]));
  EXPECT_EQ(acc_rows[1][3], "75");
  std::sort(values.begin(), values.end());
  std::ifstream s(summary);
  std::stringstream summary_text;
  summary_text << s.rdbuf();
  const auto summary_rows = rows(summary_text.str());
  EXPECT_EQ(summary_rows[4][0], "median");
  EXPECT_EQ(std::stod(summary_rows[4][1]), values[1]);
  EXPECT_NE(acc.err.find("bare"), std::string::npos);

  EXPECT_EQ(run({"--universe", snap, "--strict", "accuracy", "--profiles", profiles}).code, 2);
}

TEST_F(CliTest, Stats) {
  const Universe u = sug::testing::example_universe();
  const Outcome r = run({"--universe", snapshot(u), "stats"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = rows(r.out);
  std::map<std::string, std::string> values;
  for (const auto& row : table) values[row[0]] = row[1];
  EXPECT_EQ(values["nodes"], "8");
  EXPECT_EQ(values["dependency_edges"], "4");
  EXPECT_EQ(values["update_edges"], "5");
  EXPECT_EQ(values["projects"], "3");
  EXPECT_EQ(values["reuse"], std::to_string(reuse(u)));
  EXPECT_EQ(values["most_popular_project"], "x");
}

TEST_F(CliTest, ExitCodes) {
  const std::string snap = snapshot(sug::testing::example_universe());
  EXPECT_EQ(run({"--universe", (dir_ / "missing.jsonl").string(), "stats"}).code, 1);
  EXPECT_EQ(run({"ingest", "--pom-dir", (dir_ / "nowhere").string()}).code, 1);
  EXPECT_EQ(run({"--universe", snap, "-o", (dir_ / "no" / "such" / "dir.csv").string(), "stats"}).code, 1);
  EXPECT_EQ(run({"--universe", write_text("bad.jsonl", "{\"name\":1}\n"), "stats"}).code, 2);
  EXPECT_EQ(run({"--universe", snap, "diffusion", "--release", "x@9"}).code, 3);
  EXPECT_EQ(run({"--universe", snap, "pairs", "--project", "x", "--project", "nope"}).code, 3);
  EXPECT_EQ(run({"--universe", snap, "recommend", "--anchor", "nope"}).code, 3);
  EXPECT_EQ(run({"--universe", snap, "pairs", "--project", "x"}).code, 2);
  EXPECT_EQ(run({"--universe", snap, "release-pairs", "--project", "x", "--project", "x"}).code, 2);
  EXPECT_EQ(run({"--universe", snap, "recommend"}).code, 2);
  EXPECT_EQ(run({"--universe", snap, "--format", "png", "stats"}).code, 2);
  EXPECT_EQ(run({"--universe", snap, "--format", "svg", "stats"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, ByteIdenticalReruns) {
  const Universe u = sug::testing::commons_universe();
  const std::string snap = snapshot(u);
  const std::string profiles =
      write_text("p.jsonl", "{\"system\":\"a\",\"libraries\":[\"commons-io:commons-io\",\"commons-lang:commons-lang\"]}\n");
  const std::vector<std::vector<std::string>> commands{
      {"ingest", "--universe", snap},
      {"--universe", snap, "diffusion", "--project", "commons-io:commons-io"},
      {"--universe", snap, "pairs", "--project", "commons-io:commons-io", "--project", "commons-lang:commons-lang"},
      {"--universe", snap, "release-pairs", "--project", "commons-io:commons-io", "--project",
       "commons-lang:commons-lang"},
      {"--universe", snap, "recommend", "--anchor", "commons-io:commons-io"},
      {"--universe", snap, "accuracy", "--profiles", profiles},
      {"--universe", snap, "stats"},
  };
  for (const auto& cmd : commands) {
    const Outcome first = run(cmd);
    const Outcome second = run(cmd);
    ASSERT_EQ(first.code, 0) << cmd[2] << ": " << first.err;
    EXPECT_FALSE(first.out.empty());
    EXPECT_EQ(first.out, second.out);
  }
}
