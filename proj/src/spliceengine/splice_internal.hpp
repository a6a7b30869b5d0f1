#pragma once

#include <map>
#include <string>

#include "splice/spliceengine.hpp"

namespace splice::engine::detail {

struct Renamed {
  LinkSpec left;
  LinkSpec right;
  // Surviving label on each side -> label in the splice result.
  std::map<std::string, std::string> left_rename;
  std::map<std::string, std::string> right_rename;
};

Renamed rename_for_splice(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                          const std::string& right_comp);

LinkingMatrix linking_of_disjoint(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                                  const std::string& right_comp);

struct SpliceOutcome {
  LinkSpec spec;
  std::map<std::string, std::string> left_rename;
  std::map<std::string, std::string> right_rename;
};

SpliceOutcome splice_with_renaming(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                                   const std::string& right_comp, bool derive_sublinks);

SpliceOutcome cable_outcome(const LinkSpec& base, const std::string& comp, int p, int q, int d);

SpliceOutcome connected_sum_outcome(const LinkSpec& left, const std::string& left_comp, const LinkSpec& right,
                                    const std::string& right_comp);

}  // namespace splice::engine::detail
