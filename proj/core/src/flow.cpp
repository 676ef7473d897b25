#include "couplings/flow.hpp"

#include <algorithm>
#include <deque>

namespace couplings {

namespace {

// Node numbering: 0 = source, 1..num_a = A, num_a+1..num_a+num_b = B,
// last = sink.
struct Residual {
  const FlowNetwork& net;
  std::vector<Rational> source_flow;
  std::vector<Rational> sink_flow;
  std::map<std::pair<int, int>, Rational> ab_flow;

  explicit Residual(const FlowNetwork& network)
      : net(network),
        source_flow(network.num_a, Rational(0)),
        sink_flow(network.num_b, Rational(0)) {}

  Rational ab(int a, int b) const {
    auto it = ab_flow.find({a, b});
    return it == ab_flow.end() ? Rational(0) : it->second;
  }
};

}  // namespace

FlowNetwork build_network(const WeightedBipartiteGraph& graph) {
  FlowNetwork net;
  net.num_a = graph.num_a();
  net.num_b = graph.num_b();
  net.total = graph.weight_a_total();
  net.source_cap = graph.a_weights;
  net.sink_cap = graph.b_weights;
  net.a_adj = graph.a_adj;
  net.b_adj = graph.b_adj;
  return net;
}

MaxFlowResult max_flow(const FlowNetwork& network) {
  const int num_a = network.num_a;
  const int num_b = network.num_b;
  const int source = 0;
  const int sink = num_a + num_b + 1;
  Residual res(network);

  // Breadth-first search for a shortest augmenting path; parent[] holds the
  // predecessor node, negative values mark backward (b -> a) steps.
  while (true) {
    std::vector<int> parent(num_a + num_b + 2, -1);
    std::vector<bool> backward(num_a + num_b + 2, false);
    parent[source] = source;
    std::deque<int> queue{source};
    while (!queue.empty() && parent[sink] == -1) {
      int v = queue.front();
      queue.pop_front();
      if (v == source) {
        for (int a = 0; a < num_a; ++a) {
          int node = 1 + a;
          if (parent[node] == -1 && res.source_flow[a] < network.source_cap[a]) {
            parent[node] = source;
            queue.push_back(node);
          }
        }
      } else if (v <= num_a) {
        int a = v - 1;
        for (int b : network.a_adj[a]) {
          int node = 1 + num_a + b;
          // Middle arcs carry capacity `total`; an a -> b arc saturates
          // only when the whole mass routes through it.
          if (parent[node] == -1 && res.ab(a, b) < network.total) {
            parent[node] = v;
            queue.push_back(node);
          }
        }
      } else if (v < sink) {
        int b = v - 1 - num_a;
        if (parent[sink] == -1 && res.sink_flow[b] < network.sink_cap[b]) {
          parent[sink] = v;
        }
        for (int a : network.b_adj[b]) {
          int node = 1 + a;
          if (parent[node] == -1 && res.ab(a, b) > 0) {
            parent[node] = v;
            backward[node] = true;
            queue.push_back(node);
          }
        }
      }
    }
    if (parent[sink] == -1) break;

    // Bottleneck along the path.
    Rational bottleneck = network.total + 1;
    for (int v = sink; v != source;) {
      int u = parent[v];
      Rational slack;
      if (v == sink) {
        int b = u - 1 - num_a;
        slack = network.sink_cap[b] - res.sink_flow[b];
      } else if (u == source) {
        int a = v - 1;
        slack = network.source_cap[a] - res.source_flow[a];
      } else if (backward[v]) {
        slack = res.ab(v - 1, u - 1 - num_a);
      } else {
        slack = network.total - res.ab(u - 1, v - 1 - num_a);
      }
      bottleneck = std::min(bottleneck, slack);
      v = u;
    }

    for (int v = sink; v != source;) {
      int u = parent[v];
      if (v == sink) {
        res.sink_flow[u - 1 - num_a] += bottleneck;
      } else if (u == source) {
        res.source_flow[v - 1] += bottleneck;
      } else if (backward[v]) {
        res.ab_flow[{v - 1, u - 1 - num_a}] -= bottleneck;
      } else {
        res.ab_flow[{u - 1, v - 1 - num_a}] += bottleneck;
      }
      v = u;
    }
  }

  MaxFlowResult result;
  result.value = 0;
  for (const auto& f : res.source_flow) result.value += f;
  result.source_flow = std::move(res.source_flow);
  result.sink_flow = std::move(res.sink_flow);
  for (const auto& [arc, f] : res.ab_flow) {
    if (f > 0) result.ab_flow.emplace(arc, f);
  }
  return result;
}

std::optional<Certificate> min_cut_violator(const FlowNetwork& network,
                                            const MaxFlowResult& flow,
                                            const WeightedBipartiteGraph& graph) {
  if (flow.value == network.total) return std::nullopt;

  auto ab = [&flow](int a, int b) {
    auto it = flow.ab_flow.find({a, b});
    return it == flow.ab_flow.end() ? Rational(0) : it->second;
  };

  // Reverse reachability to the sink through the residual graph. The
  // violating set is the A-side complement, which is the maximal set
  // achieving the min-cut deficiency.
  const int num_a = network.num_a;
  const int num_b = network.num_b;
  std::vector<bool> a_reaches(num_a, false), b_reaches(num_b, false);
  std::deque<int> queue;  // B-side indices; A-side handled inline
  for (int b = 0; b < num_b; ++b) {
    if (flow.sink_flow[b] < network.sink_cap[b]) {
      b_reaches[b] = true;
      queue.push_back(b);
    }
  }
  while (!queue.empty()) {
    int b = queue.front();
    queue.pop_front();
    // a reaches b through a forward residual arc a -> b; from such an a,
    // any b2 with positive flow a -> b2 reaches via the backward arc.
    for (int a : network.b_adj[b]) {
      if (!a_reaches[a] && ab(a, b) < network.total) {
        a_reaches[a] = true;
        for (int b2 : network.a_adj[a]) {
          if (!b_reaches[b2] && ab(a, b2) > 0) {
            b_reaches[b2] = true;
            queue.push_back(b2);
          }
        }
      }
    }
  }

  Certificate cert;
  std::set<int> u;
  for (int a = 0; a < num_a; ++a) {
    if (!a_reaches[a]) {
      u.insert(a);
      cert.violating_set.push_back(graph.plain_a(a));
    }
  }
  cert.lhs = 0;
  for (int a : u) cert.lhs += graph.a_weights[a];
  cert.rhs = 0;
  for (int b : neighborhood(graph, u)) cert.rhs += graph.b_weights[b];
  cert.deficiency = cert.lhs - cert.rhs;
  return cert;
}

}  // namespace couplings
