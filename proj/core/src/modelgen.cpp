#include "tsplan/modelgen.hpp"

#include <random>
#include <string>
#include <vector>

namespace tsplan {

namespace {

// Engine output mapped to [0, 1) by hand so every platform with the same
// mt19937_64 stream produces the same models.
double unit(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

std::string padded(const char* prefix, int i) {
  std::string n = std::to_string(i);
  return prefix + std::string(6 - n.size(), '0') + n;
}

}  // namespace

TroubleshootingModel random_model(const GeneratorParams& params) {
  if (params.actions < 1)
    throw ValidationError("random_model: need at least one action");
  if (params.clusters < 0 || params.max_depth < 1)
    throw ValidationError("random_model: bad cluster parameters");

  std::mt19937_64 rng(params.seed);
  ModelDocument doc;

  doc.clusters.push_back({"root", std::nullopt, 0.0, 0.0});
  std::vector<int> depth{0};
  for (int c = 0; c < params.clusters; ++c) {
    // Uniform parent among earlier clusters that leave room for this one.
    std::vector<int> eligible;
    for (int p = 0; p < int(doc.clusters.size()); ++p)
      if (depth[p] < params.max_depth) eligible.push_back(p);
    const int parent = eligible[std::size_t(unit(rng) * eligible.size())];

    DocCluster cluster;
    cluster.id = padded("k", c);
    cluster.parent = doc.clusters[parent].id;
    const double combined = unit(rng) * params.max_cluster_cost;
    const double split = unit(rng);
    cluster.open_cost = combined * split;
    cluster.close_cost = combined * (1.0 - split);
    doc.clusters.push_back(std::move(cluster));
    depth.push_back(depth[parent] + 1);
  }

  std::vector<double> raw(params.actions);
  double raw_sum = 0.0;
  for (double& r : raw) {
    r = unit(rng);
    raw_sum += r;
  }
  const double mass = 0.5 + 0.5 * unit(rng);

  for (int a = 0; a < params.actions; ++a) {
    DocAction action;
    action.id = padded("a", a);
    action.cluster =
        doc.clusters[std::size_t(unit(rng) * doc.clusters.size())].id;
    action.cost = params.min_action_cost +
                  unit(rng) * (params.max_action_cost - params.min_action_cost);
    action.p = raw[a] / raw_sum * mass;
    doc.actions.push_back(std::move(action));
  }
  return build_model(doc);
}

}  // namespace tsplan
