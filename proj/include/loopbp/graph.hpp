#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "loopbp/tensor.hpp"

namespace loopbp {

enum class GraphClass { Network, TensorNetwork, Chain, General };

std::string to_string(GraphClass c);

struct FactorDescriptor {
  std::string name;
  std::vector<std::string> scope;
  std::vector<double> values;  // row-major over the scope, each axis |X|
  bool is_delta = false;       // structural copy tensor introduced by a transform
};

// Bipartite model: variables over a common finite alphabet plus nonnegative
// dense factors. Immutable after construction; safe to share across threads.
class FactorGraph {
 public:
  FactorGraph(int alphabet_size, std::vector<std::string> variable_names, std::vector<FactorDescriptor> factors, bool require_connected = true);

  int alphabet_size() const { return alphabet_; }
  int num_variables() const { return static_cast<int>(var_names_.size()); }
  int num_factors() const { return static_cast<int>(factors_.size()); }

  const std::string& variable_name(int v) const { return var_names_.at(static_cast<std::size_t>(v)); }
  int variable_index(const std::string& name) const;
  const std::vector<std::string>& variable_names() const { return var_names_; }

  struct Factor {
    std::string name;
    std::vector<int> scope;  // variable indices
    LabeledTensor table;     // axes follow scope order, re-labeled to indices
    bool is_delta = false;
  };
  const Factor& factor(int a) const { return factors_.at(static_cast<std::size_t>(a)); }
  const std::vector<Factor>& factors() const { return factors_; }

  const std::vector<int>& factors_of(int v) const { return var_factors_.at(static_cast<std::size_t>(v)); }
  int variable_degree(int v) const { return static_cast<int>(factors_of(v).size()); }
  int max_scope() const;
  int max_variable_degree() const;
  bool is_connected() const;

 private:
  int alphabet_;
  std::vector<std::string> var_names_;
  std::unordered_map<std::string, int> var_index_;
  std::vector<Factor> factors_;
  std::vector<std::vector<int>> var_factors_;
};

FactorGraph build_factor_graph(int alphabet_size, std::vector<std::string> variables, std::vector<FactorDescriptor> factors,
                               bool require_connected = true);

// Most specific class; Chain dominates Network/TensorNetwork.
GraphClass classify(const FactorGraph& fg);

enum class ViewMode {
  NetworkView,  // nodes = variables, edges = factors
  TnView        // nodes = factors (tensors), edges = variables
};

// Single-node-type projection of a factor graph. Double edges are never
// merged; scope-1 factors / degree-1 variables become dangling edges.
struct SimpleGraph {
  ViewMode mode;
  int num_nodes = 0;
  struct Edge {
    int u;
    int v;        // -1 when dangling
    int payload;  // factor index (NetworkView) or variable index (TnView)
    bool dangling() const { return v < 0; }
    int other(int node) const { return node == u ? v : u; }
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> incident;  // node -> edge indices

  std::vector<int> neighbors(int node) const;  // distinct far endpoints
  int node_payload(int node) const { return node; }
};

SimpleGraph simplified_view(const FactorGraph& fg, ViewMode mode);

std::vector<FactorGraph> connected_components(const FactorGraph& fg);

struct CycleSearchBudget {
  int max_nodes = 20;
  std::uint64_t max_steps = 50'000'000;
};

// Exact longest simple cycle length (edges counted, parallel edges give
// 2-cycles), or nullopt when it exceeds `cap`. Trees return 0.
std::optional<int> longest_cycle_upto(const SimpleGraph& sg, int cap, const CycleSearchBudget& budget = {});

// Longest simple cycle with no cap. Trees return 0.
int longest_cycle(const SimpleGraph& sg, const CycleSearchBudget& budget = {});

}  // namespace loopbp
