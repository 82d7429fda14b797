#pragma once

#include <vector>

#include "tsplan/model.hpp"

namespace tsplan::testing {

// Reference model used across the suite: two root actions plus two
// bottom-level clusters B (combined cost 2) and G (combined cost 1). The
// optimal plan is <g1, g2, a1, a2, b1, b2> with ECR 4.71; plain ratio
// ordering gives <a1, g1, a2, g2, b1, b2> with ECR 4.83.
inline TroubleshootingModel demo_model() {
  ModelDocument doc;
  doc.clusters = {
      {"root", std::nullopt, 0.0, 0.0},
      {"B", "root", 1.0, 1.0},
      {"G", "root", 0.5, 0.5},
  };
  doc.actions = {
      {"a1", "root", 1.0, 0.14, std::nullopt},
      {"a2", "root", 1.0, 0.11, std::nullopt},
      {"b1", "B", 1.0, 0.20, std::nullopt},
      {"b2", "B", 1.0, 0.10, std::nullopt},
      {"g1", "G", 1.0, 0.25, std::nullopt},
      {"g2", "G", 1.0, 0.20, std::nullopt},
  };
  return build_model(doc);
}

inline std::vector<ActionIndex> ids_to_sequence(
    const TroubleshootingModel& m, const std::vector<std::string>& ids) {
  std::vector<ActionIndex> seq;
  seq.reserve(ids.size());
  for (const auto& id : ids) seq.push_back(m.action_index(id));
  return seq;
}

inline std::vector<std::string> sequence_to_ids(
    const TroubleshootingModel& m, const std::vector<ActionIndex>& seq) {
  std::vector<std::string> ids;
  ids.reserve(seq.size());
  for (ActionIndex a : seq) ids.push_back(m.action(a).id);
  return ids;
}

// Chain root -> M -> N plus a second branch S under the root; exercises
// multi-level opening charges.
inline TroubleshootingModel deep_model() {
  ModelDocument doc;
  doc.clusters = {
      {"root", std::nullopt, 0.0, 0.0},
      {"M", "root", 0.7, 0.3},
      {"N", "M", 0.2, 0.2},
      {"S", "root", 1.5, 0.5},
  };
  doc.actions = {
      {"r1", "root", 1.0, 0.10, std::nullopt},
      {"m1", "M", 0.8, 0.15, std::nullopt},
      {"m2", "M", 1.2, 0.05, std::nullopt},
      {"n1", "N", 0.5, 0.30, std::nullopt},
      {"s1", "S", 2.0, 0.25, std::nullopt},
      {"s2", "S", 1.0, 0.08, std::nullopt},
  };
  return build_model(doc);
}

}  // namespace tsplan::testing
