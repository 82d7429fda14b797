#include "tsplan/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace tsplan {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

// Clamps a probability to [0, 1], tolerating kProbTolerance of drift.
double checked_probability(double p, const std::string& what) {
  if (!std::isfinite(p) || p < -kProbTolerance || p > 1.0 + kProbTolerance) {
    std::ostringstream os;
    os << what << ": probability " << p << " outside [0, 1]";
    fail(os.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

std::vector<int> lexicographic_ranks(const std::vector<std::string>& ids) {
  std::vector<int> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ids[a] < ids[b]; });
  std::vector<int> rank(ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = int(i);
  return rank;
}

}  // namespace

ActionIndex TroubleshootingModel::action_index(const std::string& id) const {
  auto it = action_by_id_.find(id);
  if (it == action_by_id_.end()) fail("unknown action id '" + id + "'");
  return it->second;
}

bool TroubleshootingModel::has_action(const std::string& id) const {
  return action_by_id_.count(id) != 0;
}

ClusterIndex TroubleshootingModel::cluster_index(const std::string& id) const {
  auto it = cluster_by_id_.find(id);
  if (it == cluster_by_id_.end()) fail("unknown cluster id '" + id + "'");
  return it->second;
}

bool TroubleshootingModel::is_ancestor_or_self(ClusterIndex ancestor,
                                               ClusterIndex c) const {
  while (depth_[c] > depth_[ancestor]) c = *clusters_[c].parent;
  return c == ancestor;
}

std::map<std::string, double> repair_probabilities(
    const std::vector<FaultSpec>& faults,
    const std::map<std::string, std::map<std::string, double>>& success) {
  double prior_sum = 0.0;
  std::map<std::string, double> prior_by_fault;
  for (const auto& f : faults) {
    double p = checked_probability(f.prior, "fault '" + f.id + "'");
    if (!prior_by_fault.emplace(f.id, p).second)
      fail("duplicate fault id '" + f.id + "'");
    prior_sum += p;
  }
  if (std::abs(prior_sum - 1.0) > kProbTolerance) {
    std::ostringstream os;
    os << "fault priors sum to " << prior_sum << ", expected 1";
    fail(os.str());
  }

  // Each fault may be addressed (success probability > 0) by one action only.
  std::map<std::string, std::string> addressed_by;
  std::map<std::string, double> result;
  for (const auto& [action_id, row] : success) {
    double p_action = 0.0;
    for (const auto& [fault_id, sp] : row) {
      auto prior = prior_by_fault.find(fault_id);
      if (prior == prior_by_fault.end())
        fail("action '" + action_id + "' references unknown fault '" +
             fault_id + "'");
      double s = checked_probability(
          sp, "action '" + action_id + "' on fault '" + fault_id + "'");
      if (s > 0.0) {
        auto [it, inserted] = addressed_by.emplace(fault_id, action_id);
        if (!inserted)
          fail("fault '" + fault_id + "' addressed by both '" + it->second +
               "' and '" + action_id + "' (actions must be independent)");
        p_action += s * prior->second;
      }
    }
    result[action_id] = checked_probability(p_action, "action '" + action_id +
                                                          "' repair prob");
  }
  return result;
}

TroubleshootingModel build_model(const ModelDocument& doc) {
  TroubleshootingModel m;
  if (doc.clusters.empty()) fail("model has no clusters");
  if (doc.actions.empty()) fail("model has no actions");

  // Clusters: ids, the unique root, parent links.
  std::vector<std::string> cluster_ids;
  for (const auto& c : doc.clusters) {
    if (!m.cluster_by_id_.emplace(c.id, ClusterIndex(cluster_ids.size()))
             .second)
      fail("duplicate cluster id '" + c.id + "'");
    cluster_ids.push_back(c.id);
  }
  m.clusters_.reserve(doc.clusters.size());
  for (const auto& c : doc.clusters) {
    ClusterNode node;
    node.id = c.id;
    if (!std::isfinite(c.open_cost) || c.open_cost < 0.0 ||
        !std::isfinite(c.close_cost) || c.close_cost < 0.0)
      fail("cluster '" + c.id + "': open/close costs must be >= 0");
    node.open_cost = c.open_cost;
    node.close_cost = c.close_cost;
    if (c.parent) {
      auto it = m.cluster_by_id_.find(*c.parent);
      if (it == m.cluster_by_id_.end())
        fail("cluster '" + c.id + "': unknown parent '" + *c.parent + "'");
      node.parent = it->second;
    } else {
      if (m.root_ >= 0)
        fail("two root clusters: '" + m.clusters_[m.root_].id + "' and '" +
             c.id + "'");
      m.root_ = ClusterIndex(m.clusters_.size());
      if (c.open_cost != 0.0 || c.close_cost != 0.0)
        fail("root cluster '" + c.id +
             "' must have zero open and close costs (it is always open)");
    }
    m.clusters_.push_back(std::move(node));
  }
  if (m.root_ < 0) fail("no root cluster (exactly one must omit 'parent')");

  // Depths; a cluster whose walk to the root exceeds the cluster count sits
  // on a parent cycle.
  const int n_clusters = int(m.clusters_.size());
  m.depth_.assign(n_clusters, -1);
  m.depth_[m.root_] = 0;
  for (ClusterIndex c = 0; c < n_clusters; ++c) {
    ClusterIndex walk = c;
    int steps = 0;
    std::vector<ClusterIndex> path;
    while (m.depth_[walk] < 0) {
      if (++steps > n_clusters)
        fail("cluster '" + m.clusters_[c].id + "': parent links form a cycle");
      path.push_back(walk);
      walk = *m.clusters_[walk].parent;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      m.depth_[*it] = m.depth_[walk] + 1 + int(it - path.rbegin());
  }
  m.tree_depth_ = *std::max_element(m.depth_.begin(), m.depth_.end());
  m.children_.assign(n_clusters, {});
  for (ClusterIndex c = 0; c < n_clusters; ++c)
    if (m.clusters_[c].parent) m.children_[*m.clusters_[c].parent].push_back(c);

  // Actions: either every action carries p, or a fault layer is present and
  // every action carries a success row.
  const bool have_faults = !doc.faults.empty();
  bool any_p = false, any_success = false;
  for (const auto& a : doc.actions) {
    any_p |= a.p.has_value();
    any_success |= a.success.has_value();
  }
  if (any_p && (any_success || have_faults))
    fail("model mixes direct repair probabilities with a fault layer; "
         "use exactly one");
  if (!any_p && !have_faults)
    fail("actions carry no repair probabilities and no fault layer is given");

  std::map<std::string, double> derived;
  if (have_faults) {
    std::vector<FaultSpec> faults;
    faults.reserve(doc.faults.size());
    for (const auto& f : doc.faults) faults.push_back({f.id, f.prior});
    std::map<std::string, std::map<std::string, double>> success;
    for (const auto& a : doc.actions) {
      if (!a.success)
        fail("action '" + a.id + "': fault layer present but no success row");
      success[a.id] = *a.success;
    }
    derived = repair_probabilities(faults, success);
  }

  std::vector<std::string> action_ids;
  double prob_sum = 0.0;
  m.actions_.reserve(doc.actions.size());
  for (const auto& a : doc.actions) {
    if (!m.action_by_id_.emplace(a.id, ActionIndex(action_ids.size())).second)
      fail("duplicate action id '" + a.id + "'");
    action_ids.push_back(a.id);

    Action act;
    act.id = a.id;
    if (!std::isfinite(a.cost) || a.cost <= 0.0) {
      std::ostringstream os;
      os << "action '" << a.id << "': cost " << a.cost << " must be > 0";
      fail(os.str());
    }
    act.cost = a.cost;
    auto cl = m.cluster_by_id_.find(a.cluster);
    if (cl == m.cluster_by_id_.end())
      fail("action '" + a.id + "': unknown cluster '" + a.cluster + "'");
    act.cluster = cl->second;
    if (have_faults) {
      act.repair_prob = derived.at(a.id);
    } else {
      if (!a.p) fail("action '" + a.id + "': missing repair probability");
      act.repair_prob = checked_probability(*a.p, "action '" + a.id + "'");
    }
    prob_sum += act.repair_prob;
    m.actions_.push_back(std::move(act));
  }
  if (prob_sum > 1.0 + kProbTolerance) {
    std::ostringstream os;
    os << "repair probabilities sum to " << prob_sum
       << "; the single-fault model requires a sum <= 1";
    fail(os.str());
  }

  if (have_faults) {
    m.faults_.reserve(doc.faults.size());
    for (const auto& f : doc.faults)
      m.faults_.push_back({f.id, std::clamp(f.prior, 0.0, 1.0)});
    m.success_.assign(m.actions_.size(),
                      std::vector<double>(m.faults_.size(), 0.0));
    std::map<std::string, std::size_t> fault_pos;
    for (std::size_t i = 0; i < m.faults_.size(); ++i)
      fault_pos[m.faults_[i].id] = i;
    for (std::size_t ai = 0; ai < doc.actions.size(); ++ai)
      for (const auto& [fid, sp] : *doc.actions[ai].success)
        m.success_[ai][fault_pos.at(fid)] = std::clamp(sp, 0.0, 1.0);
  }

  m.cluster_actions_.assign(n_clusters, {});
  for (ActionIndex a = 0; a < ActionIndex(m.actions_.size()); ++a)
    m.cluster_actions_[m.actions_[a].cluster].push_back(a);

  m.action_rank_ = lexicographic_ranks(action_ids);
  m.cluster_rank_ = lexicographic_ranks(cluster_ids);
  return m;
}

ModelDocument serialize_model(const TroubleshootingModel& model) {
  ModelDocument doc;
  for (const auto& c : model.clusters()) {
    DocCluster dc;
    dc.id = c.id;
    if (c.parent) dc.parent = model.cluster(*c.parent).id;
    dc.open_cost = c.open_cost;
    dc.close_cost = c.close_cost;
    doc.clusters.push_back(std::move(dc));
  }
  for (ActionIndex a = 0; a < ActionIndex(model.action_count()); ++a) {
    const Action& act = model.action(a);
    DocAction da;
    da.id = act.id;
    da.cluster = model.cluster(act.cluster).id;
    da.cost = act.cost;
    if (model.has_fault_layer()) {
      std::map<std::string, double> row;
      auto success = model.success_row(a);
      for (std::size_t f = 0; f < success.size(); ++f)
        if (success[f] != 0.0) row[model.faults()[f].id] = success[f];
      da.success = std::move(row);
    } else {
      da.p = act.repair_prob;
    }
    doc.actions.push_back(std::move(da));
  }
  for (const auto& f : model.faults()) doc.faults.push_back({f.id, f.prior});
  return doc;
}

}  // namespace tsplan
