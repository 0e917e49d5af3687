#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace qasym::detail {

/// Tarjan strongly connected components, iterative to keep stack depth flat.
/// Returns one vector of vertex ids per component; components are listed in
/// reverse topological order of the condensation (successors first).
inline std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), lowlink(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int next_index = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  std::vector<Frame> call_stack;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    call_stack.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;

    while (!call_stack.empty()) {
      Frame& f = call_stack.back();
      if (f.edge < adj[f.v].size()) {
        int w = adj[f.v][f.edge++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call_stack.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        if (lowlink[f.v] == index[f.v]) {
          std::vector<int> comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
          } while (w != f.v);
          components.push_back(std::move(comp));
        }
        int v = f.v;
        call_stack.pop_back();
        if (!call_stack.empty())
          lowlink[call_stack.back().v] =
              std::min(lowlink[call_stack.back().v], lowlink[v]);
      }
    }
  }
  return components;
}

/// Components of `adj` with no outgoing edge into a different component.
inline std::vector<std::vector<int>> terminal_components(
    const std::vector<std::vector<int>>& adj) {
  auto comps = strongly_connected_components(adj);
  std::vector<int> comp_of(adj.size(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
  std::vector<std::vector<int>> terminal;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    bool exits = false;
    for (int v : comps[c])
      for (int w : adj[v])
        if (comp_of[w] != static_cast<int>(c)) exits = true;
    if (!exits) terminal.push_back(comps[c]);
  }
  return terminal;
}

}  // namespace qasym::detail
