#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sug {

enum class errc {
  duplicate_node,
  unknown_node,
  self_dependency,
  duplicate_edge,
  name_mismatch,
  time_order_violation,
  chain_conflict,
  not_same_project,
  same_project,
  same_pair_member,
  unknown_project,
  pair_not_in_set,
  need_two_projects,
  anchor_not_in_profile,
  empty_profile,
  parent_mismatch,
  malformed_xml,
  missing_coordinates,
  fatal_syntax,
  io,
  invalid_argument,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::duplicate_node: return "DuplicateNode";
    case errc::unknown_node: return "UnknownNode";
    case errc::self_dependency: return "SelfDependency";
    case errc::duplicate_edge: return "DuplicateEdge";
    case errc::name_mismatch: return "NameMismatch";
    case errc::time_order_violation: return "TimeOrderViolation";
    case errc::chain_conflict: return "ChainConflict";
    case errc::not_same_project: return "NotSameProject";
    case errc::same_project: return "SameProject";
    case errc::same_pair_member: return "SamePairMember";
    case errc::unknown_project: return "UnknownProject";
    case errc::pair_not_in_set: return "PairNotInSet";
    case errc::need_two_projects: return "NeedTwoProjects";
    case errc::anchor_not_in_profile: return "AnchorNotInProfile";
    case errc::empty_profile: return "EmptyProfile";
    case errc::parent_mismatch: return "ParentMismatch";
    case errc::malformed_xml: return "MalformedXml";
    case errc::missing_coordinates: return "MissingCoordinates";
    case errc::fatal_syntax: return "FatalSyntax";
    case errc::io: return "Io";
    case errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the `errc` codes so
/// callers (the CLI in particular) can map it to an exit status.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace sug
