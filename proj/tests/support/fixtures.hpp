#pragma once

#include <sug/universe.hpp>

#include <string>
#include <utility>
#include <vector>

namespace sug::testing {

// Canonical example graph: systems a and q, library x.
//
//   a1 -> x1    q1 -> x1    q2 -> x1    a3 -> x2
//   a1 => a2 => a3    q1 => q2 => q3    x1 => x2
//
// a3 (and its edges) appears only after example_t(); with_a3 = false gives the
// seven-node state at example_t().

inline Timestamp example_t() { return make_date(2012, 1, 1); }
inline Timestamp example_t_prime() { return make_date(2012, 12, 31); }

inline Universe example_universe(bool with_a3 = true) {
  Universe u;
  u.add_node({"x", "1", make_date(2009, 6, 1)});
  u.add_node({"a", "1", make_date(2010, 1, 1)});
  u.add_node({"q", "1", make_date(2010, 2, 1)});
  u.add_node({"q", "2", make_date(2010, 6, 1)});
  u.add_node({"a", "2", make_date(2011, 1, 1)});
  u.add_node({"x", "2", make_date(2011, 3, 1)});
  u.add_node({"q", "3", make_date(2011, 6, 1)});
  if (with_a3) u.add_node({"a", "3", make_date(2012, 6, 1)});

  u.add_dependency({"a", "1"}, {"x", "1"});
  u.add_dependency({"q", "1"}, {"x", "1"});
  u.add_dependency({"q", "2"}, {"x", "1"});
  u.add_update({"a", "1"}, {"a", "2"});
  u.add_update({"q", "1"}, {"q", "2"});
  u.add_update({"q", "2"}, {"q", "3"});
  u.add_update({"x", "1"}, {"x", "2"});
  if (with_a3) {
    u.add_dependency({"a", "3"}, {"x", "2"});
    u.add_update({"a", "2"}, {"a", "3"});
  }
  return u;
}

inline NodeKey key(const char* name, const char* release) { return {name, release}; }

}  // namespace sug::testing

namespace sug::testing {

/// One release per name ("name@1", all on one date) with the given
/// dependencies: {system, {library...}}. Libraries that are not listed as a
/// system are created on demand.
inline Universe flat_universe(const std::vector<std::pair<std::string, std::vector<std::string>>>& systems) {
  Universe u;
  const auto ensure = [&](const std::string& name) {
    if (!u.contains({name, "1"})) u.add_node({name, "1", make_date(2014, 1, 1)});
  };
  for (const auto& [sys, libs] : systems) {
    ensure(sys);
    for (const auto& lib : libs) ensure(lib);
  }
  for (const auto& [sys, libs] : systems) {
    for (const auto& lib : libs) u.add_dependency({sys, "1"}, {lib, "1"});
  }
  return u;
}

}  // namespace sug::testing

namespace sug::testing {

inline const std::vector<std::string>& commons_projects() {
  static const std::vector<std::string> ids{
      "commons-beanutils:commons-beanutils", "commons-codec:commons-codec",
      "commons-collections:commons-collections", "commons-digester:commons-digester",
      "commons-httpclient:commons-httpclient", "commons-io:commons-io",
      "commons-lang:commons-lang", "commons-logging:commons-logging"};
  return ids;
}

// Eight commons libraries used by twelve systems; logging and collections
// are the most frequent pair.
inline Universe commons_universe() {
  const std::string beanutils = "commons-beanutils:commons-beanutils";
  const std::string codec = "commons-codec:commons-codec";
  const std::string collections = "commons-collections:commons-collections";
  const std::string digester = "commons-digester:commons-digester";
  const std::string httpclient = "commons-httpclient:commons-httpclient";
  const std::string io = "commons-io:commons-io";
  const std::string lang = "commons-lang:commons-lang";
  const std::string logging = "commons-logging:commons-logging";
  return flat_universe({
      {"sys:s01", {logging, collections, lang}},
      {"sys:s02", {logging, collections}},
      {"sys:s03", {logging, collections, beanutils}},
      {"sys:s04", {logging, collections, io}},
      {"sys:s05", {logging, collections, digester, beanutils}},
      {"sys:s06", {logging, lang, io}},
      {"sys:s07", {logging, httpclient, codec}},
      {"sys:s08", {io, lang}},
      {"sys:s09", {codec, httpclient}},
      {"sys:s10", {logging, collections, codec}},
      {"sys:s11", {lang}},
      {"sys:s12", {beanutils, digester, logging}},
  });
}

}  // namespace sug::testing

namespace sug::testing {

// lib 1.0 keeps gaining users after 2.0 and 3.0 ship, so the oldest release
// stays the most popular.
inline Universe old_release_universe() {
  Universe u;
  u.add_node({"org.lib:lib", "1.0", make_date(2010, 1, 1)});
  u.add_node({"org.lib:lib", "2.0", make_date(2011, 1, 1)});
  u.add_node({"org.lib:lib", "3.0", make_date(2012, 1, 1)});
  u.add_update({"org.lib:lib", "1.0"}, {"org.lib:lib", "2.0"});
  u.add_update({"org.lib:lib", "2.0"}, {"org.lib:lib", "3.0"});
  const auto add_user = [&](int i, const char* release, Timestamp t) {
    const std::string name = "org.app:app" + std::to_string(i);
    u.add_node({name, "1", t});
    u.add_dependency({name, "1"}, {"org.lib:lib", release});
  };
  int i = 0;
  for (int m = 0; m < 14; ++m) add_user(++i, "1.0", make_date(2010, 2, 1) + std::chrono::days(45 * m));
  for (int m = 0; m < 6; ++m) add_user(++i, "2.0", make_date(2011, 2, 1) + std::chrono::days(60 * m));
  for (int m = 0; m < 3; ++m) add_user(++i, "3.0", make_date(2012, 2, 1) + std::chrono::days(60 * m));
  return u;
}

// Systems pairing x 2.0 with y 1.0 outnumber the uses of either release
// alongside anything outside the two projects.
inline Universe dominant_pair_universe() {
  Universe u;
  const std::string x = "org.x:x";
  const std::string y = "org.y:y";
  const std::string other = "org.other:other";
  u.add_node({x, "1.0", make_date(2010, 1, 1)});
  u.add_node({x, "2.0", make_date(2011, 1, 1)});
  u.add_node({x, "3.0", make_date(2012, 1, 1)});
  u.add_node({y, "1.0", make_date(2010, 6, 1)});
  u.add_node({y, "2.0", make_date(2012, 6, 1)});
  u.add_node({other, "1.0", make_date(2009, 1, 1)});
  u.add_node({"org.more:more", "1.0", make_date(2009, 1, 1)});
  u.add_update({x, "1.0"}, {x, "2.0"});
  u.add_update({x, "2.0"}, {x, "3.0"});
  u.add_update({y, "1.0"}, {y, "2.0"});
  int i = 0;
  const auto add_user = [&](std::vector<NodeKey> deps) {
    const std::string name = "org.sys:sys" + std::to_string(++i);
    u.add_node({name, "1", make_date(2013, 1, 1)});
    for (const NodeKey& d : deps) u.add_dependency({name, "1"}, d);
  };
  for (int n = 0; n < 9; ++n) add_user({{x, "2.0"}, {y, "1.0"}});
  for (int n = 0; n < 2; ++n) add_user({{x, "2.0"}, {y, "1.0"}, {other, "1.0"}});
  for (int n = 0; n < 2; ++n) add_user({{x, "2.0"}, {"org.more:more", "1.0"}});
  add_user({{y, "1.0"}, {other, "1.0"}});
  add_user({{x, "1.0"}, {y, "1.0"}});
  add_user({{x, "3.0"}, {y, "2.0"}, {other, "1.0"}});
  return u;
}

}  // namespace sug::testing
