#include "loopbp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace loopbp {

std::string to_string(GraphClass c) {
  switch (c) {
    case GraphClass::Network: return "network";
    case GraphClass::TensorNetwork: return "tensor-network";
    case GraphClass::Chain: return "chain";
    case GraphClass::General: return "general";
  }
  return "?";
}

FactorGraph::FactorGraph(int alphabet_size, std::vector<std::string> variable_names, std::vector<FactorDescriptor> descriptors,
                         bool require_connected)
    : alphabet_(alphabet_size), var_names_(std::move(variable_names)) {
  if (alphabet_ < 2) throw ShapeMismatch("alphabet size must be at least 2");
  if (var_names_.empty()) throw EmptyGraph("a factor graph needs at least one variable");
  for (std::size_t i = 0; i < var_names_.size(); ++i) {
    auto [it, inserted] = var_index_.emplace(var_names_[i], static_cast<int>(i));
    if (!inserted) throw ValidationError("duplicate variable name: " + var_names_[i]);
  }
  var_factors_.resize(var_names_.size());

  factors_.reserve(descriptors.size());
  for (auto& d : descriptors) {
    if (d.scope.empty()) throw ShapeMismatch("factor '" + d.name + "' has an empty scope");
    Factor f;
    f.name = d.name;
    f.is_delta = d.is_delta;
    std::vector<Axis> axes;
    for (const auto& vn : d.scope) {
      auto it = var_index_.find(vn);
      if (it == var_index_.end()) throw UnknownVariable("factor '" + d.name + "' references unknown variable '" + vn + "'");
      if (std::find(f.scope.begin(), f.scope.end(), it->second) != f.scope.end())
        throw ValidationError("factor '" + d.name + "' repeats variable '" + vn + "' in its scope");
      f.scope.push_back(it->second);
      axes.push_back({it->second, alphabet_});
    }
    std::size_t expect = 1;
    for (std::size_t k = 0; k < f.scope.size(); ++k) expect *= static_cast<std::size_t>(alphabet_);
    if (d.values.size() != expect) throw ShapeMismatch("factor '" + d.name + "' table has wrong size");
    f.table = LabeledTensor(std::move(axes), std::move(d.values));
    f.table.validate_entries(/*require_nonneg=*/true);
    for (int v : f.scope) var_factors_[static_cast<std::size_t>(v)].push_back(static_cast<int>(factors_.size()));
    factors_.push_back(std::move(f));
  }

  if (require_connected && !is_connected()) throw DisconnectedGraph("factor graph is not connected; split it with connected_components");
}

int FactorGraph::variable_index(const std::string& name) const {
  auto it = var_index_.find(name);
  if (it == var_index_.end()) throw UnknownVariable("unknown variable '" + name + "'");
  return it->second;
}

int FactorGraph::max_scope() const {
  int m = 0;
  for (const auto& f : factors_) m = std::max(m, static_cast<int>(f.scope.size()));
  return m;
}

int FactorGraph::max_variable_degree() const {
  int m = 0;
  for (const auto& vf : var_factors_) m = std::max(m, static_cast<int>(vf.size()));
  return m;
}

bool FactorGraph::is_connected() const {
  // BFS over the bipartite graph; isolated variables are disconnected unless
  // the graph is a single variable with factors on it.
  std::size_t n = var_names_.size() + factors_.size();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> q;
  q.push_back(0);  // variable 0
  seen[0] = 1;
  std::size_t count = 0;
  while (!q.empty()) {
    std::size_t x = q.front();
    q.pop_front();
    ++count;
    if (x < var_names_.size()) {
      for (int a : var_factors_[x]) {
        std::size_t y = var_names_.size() + static_cast<std::size_t>(a);
        if (!seen[y]) seen[y] = 1, q.push_back(y);
      }
    } else {
      for (int v : factors_[x - var_names_.size()].scope) {
        std::size_t y = static_cast<std::size_t>(v);
        if (!seen[y]) seen[y] = 1, q.push_back(y);
      }
    }
  }
  return count == n;
}

FactorGraph build_factor_graph(int alphabet_size, std::vector<std::string> variables, std::vector<FactorDescriptor> factors,
                               bool require_connected) {
  return FactorGraph(alphabet_size, std::move(variables), std::move(factors), require_connected);
}

GraphClass classify(const FactorGraph& fg) {
  bool net = fg.max_scope() <= 2;
  bool tn = fg.max_variable_degree() <= 2;
  if (net && tn) return GraphClass::Chain;
  if (net) return GraphClass::Network;
  if (tn) return GraphClass::TensorNetwork;
  return GraphClass::General;
}

std::vector<int> SimpleGraph::neighbors(int node) const {
  std::vector<int> out;
  for (int e : incident.at(static_cast<std::size_t>(node))) {
    int far = edges[static_cast<std::size_t>(e)].other(node);
    if (far >= 0 && far != node && std::find(out.begin(), out.end(), far) == out.end()) out.push_back(far);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SimpleGraph simplified_view(const FactorGraph& fg, ViewMode mode) {
  GraphClass c = classify(fg);
  SimpleGraph sg;
  sg.mode = mode;
  if (mode == ViewMode::NetworkView) {
    if (c != GraphClass::Network && c != GraphClass::Chain) throw ClassMismatch("network view requires factor scopes of size <= 2");
    sg.num_nodes = fg.num_variables();
    sg.incident.resize(static_cast<std::size_t>(sg.num_nodes));
    for (int a = 0; a < fg.num_factors(); ++a) {
      const auto& f = fg.factor(a);
      SimpleGraph::Edge e;
      e.payload = a;
      e.u = f.scope[0];
      e.v = f.scope.size() == 2 ? f.scope[1] : -1;
      int idx = static_cast<int>(sg.edges.size());
      sg.edges.push_back(e);
      sg.incident[static_cast<std::size_t>(e.u)].push_back(idx);
      if (e.v >= 0) sg.incident[static_cast<std::size_t>(e.v)].push_back(idx);
    }
  } else {
    if (c != GraphClass::TensorNetwork && c != GraphClass::Chain) throw ClassMismatch("tensor view requires variable degrees of <= 2");
    sg.num_nodes = fg.num_factors();
    sg.incident.resize(static_cast<std::size_t>(sg.num_nodes));
    for (int v = 0; v < fg.num_variables(); ++v) {
      const auto& owners = fg.factors_of(v);
      SimpleGraph::Edge e;
      e.payload = v;
      e.u = owners.at(0);
      e.v = owners.size() == 2 ? owners[1] : -1;
      int idx = static_cast<int>(sg.edges.size());
      sg.edges.push_back(e);
      sg.incident[static_cast<std::size_t>(e.u)].push_back(idx);
      if (e.v >= 0) sg.incident[static_cast<std::size_t>(e.v)].push_back(idx);
    }
  }
  return sg;
}

std::vector<FactorGraph> connected_components(const FactorGraph& fg) {
  int nv = fg.num_variables();
  std::vector<int> comp(static_cast<std::size_t>(nv), -1);
  int ncomp = 0;
  for (int start = 0; start < nv; ++start) {
    if (comp[static_cast<std::size_t>(start)] >= 0) continue;
    int id = ncomp++;
    std::deque<int> q{start};
    comp[static_cast<std::size_t>(start)] = id;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int a : fg.factors_of(v))
        for (int w : fg.factor(a).scope)
          if (comp[static_cast<std::size_t>(w)] < 0) {
            comp[static_cast<std::size_t>(w)] = id;
            q.push_back(w);
          }
    }
  }
  std::vector<FactorGraph> out;
  for (int id = 0; id < ncomp; ++id) {
    std::vector<std::string> vars;
    for (int v = 0; v < nv; ++v)
      if (comp[static_cast<std::size_t>(v)] == id) vars.push_back(fg.variable_name(v));
    std::vector<FactorDescriptor> descs;
    for (int a = 0; a < fg.num_factors(); ++a) {
      const auto& f = fg.factor(a);
      if (comp[static_cast<std::size_t>(f.scope[0])] != id) continue;
      FactorDescriptor d;
      d.name = f.name;
      for (int v : f.scope) d.scope.push_back(fg.variable_name(v));
      d.values.assign(f.table.values().begin(), f.table.values().end());
      d.is_delta = f.is_delta;
      descs.push_back(std::move(d));
    }
    out.emplace_back(fg.alphabet_size(), std::move(vars), std::move(descs), /*require_connected=*/false);
  }
  return out;
}

namespace {

struct CycleSearch {
  const SimpleGraph& sg;
  std::uint64_t steps = 0;
  std::uint64_t max_steps;
  int best = 0;
  std::vector<char> on_path;
  std::vector<char> edge_used;

  CycleSearch(const SimpleGraph& g, std::uint64_t cap) : sg(g), max_steps(cap) {
    on_path.assign(static_cast<std::size_t>(g.num_nodes), 0);
    edge_used.assign(g.edges.size(), 0);
  }

  // Simple paths from `node` back to `root`; only nodes >= root are visited
  // so each cycle is enumerated from its minimum node once.
  void dfs(int root, int node, int length) {
    if (++steps > max_steps) throw EnumerationBudgetExceeded("cycle enumeration budget exceeded");
    for (int e : sg.incident[static_cast<std::size_t>(node)]) {
      if (edge_used[static_cast<std::size_t>(e)]) continue;
      const auto& edge = sg.edges[static_cast<std::size_t>(e)];
      if (edge.dangling()) continue;
      int far = edge.other(node);
      if (far == root) {
        if (length + 1 >= 2) best = std::max(best, length + 1);
        continue;
      }
      if (far < root || on_path[static_cast<std::size_t>(far)]) continue;
      edge_used[static_cast<std::size_t>(e)] = 1;
      on_path[static_cast<std::size_t>(far)] = 1;
      dfs(root, far, length + 1);
      on_path[static_cast<std::size_t>(far)] = 0;
      edge_used[static_cast<std::size_t>(e)] = 0;
    }
  }
};

}  // namespace

int longest_cycle(const SimpleGraph& sg, const CycleSearchBudget& budget) {
  if (sg.num_nodes > budget.max_nodes) throw EnumerationBudgetExceeded("graph exceeds cycle enumeration node budget");
  CycleSearch cs(sg, budget.max_steps);
  for (int root = 0; root < sg.num_nodes; ++root) {
    cs.on_path.assign(static_cast<std::size_t>(sg.num_nodes), 0);
    cs.on_path[static_cast<std::size_t>(root)] = 1;
    cs.dfs(root, root, 0);
  }
  return cs.best;
}

std::optional<int> longest_cycle_upto(const SimpleGraph& sg, int cap, const CycleSearchBudget& budget) {
  int len = longest_cycle(sg, budget);
  if (len > cap) return std::nullopt;
  return len;
}

}  // namespace loopbp
