/*
 * Copyright 2026 The selfsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "selfsim/moore.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "selfsim/closure.hpp"
#include "selfsim/errors.hpp"

namespace selfsim {

MooreDiagram::MooreDiagram(std::shared_ptr<const ActionBackend> backend, std::vector<GroupElement> vertices,
                           std::vector<std::vector<Edge>> edges)
    : backend_(std::move(backend)), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.size() != edges_.size()) throw std::invalid_argument("vertex/edge table mismatch");
  for (const auto& row : edges_) {
    for (const Edge& e : row) {
      if (e.target < 0 || static_cast<std::size_t>(e.target) >= vertices_.size()) {
        throw std::invalid_argument("edge target out of range");
      }
    }
  }
}

std::size_t MooreDiagram::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : edges_) n += row.size();
  return n;
}

namespace {

// Deduplicated closure of the seeds: one vertex per bisimulation class,
// in order of first discovery.
struct ClosureVertices {
  std::vector<int> vertex_class;           // diagram vertex -> machine class
  std::vector<int> vertex_state;           // diagram vertex -> representative state
  std::vector<int> class_vertex;           // machine class -> diagram vertex or -1
};

ClosureVertices collect_vertices(ClosureMachine& machine, const std::vector<int>& roots) {
  ClosureVertices out;
  out.class_vertex.assign(static_cast<std::size_t>(machine.class_count()), -1);
  std::vector<int> states;
  std::vector<char> seen(static_cast<std::size_t>(machine.state_count()), 0);
  for (int root : roots) {
    for (int s : machine.reachable_from(root)) {
      if (!seen[static_cast<std::size_t>(s)]) {
        seen[static_cast<std::size_t>(s)] = 1;
        states.push_back(s);
      }
    }
  }
  for (int s : states) {
    const int c = machine.class_of(s);
    if (out.class_vertex[static_cast<std::size_t>(c)] < 0) {
      out.class_vertex[static_cast<std::size_t>(c)] = static_cast<int>(out.vertex_state.size());
      out.vertex_state.push_back(s);
      out.vertex_class.push_back(c);
    }
  }
  return out;
}

MooreDiagram diagram_from(ClosureMachine& machine, const ClosureVertices& vertices) {
  std::vector<GroupElement> elements;
  std::vector<std::vector<MooreDiagram::Edge>> edges;
  const int letters = machine.backend()->alphabet().size();
  for (std::size_t v = 0; v < vertices.vertex_state.size(); ++v) {
    const int s = vertices.vertex_state[v];
    elements.push_back(machine.element_of(s));
    std::vector<MooreDiagram::Edge> row;
    for (Letter x = 0; x < letters; ++x) {
      const int t = machine.step(s, x);
      const int target = vertices.class_vertex[static_cast<std::size_t>(machine.class_of(t))];
      row.push_back({x, machine.out(s, x), target});
    }
    edges.push_back(std::move(row));
  }
  return MooreDiagram(machine.backend(), std::move(elements), std::move(edges));
}

}  // namespace

MooreDiagram build_diagram(std::shared_ptr<const ActionBackend> backend,
                           const std::vector<GroupElement>& seeds, const Caps& caps) {
  ClosureMachine machine(backend, caps);
  std::vector<int> roots;
  for (const GroupElement& g : seeds) {
    auto state = machine.add(g);
    if (!state) throw OverflowError("restriction closure exceeded caps while building the diagram");
    roots.push_back(*state);
  }
  if (roots.empty()) roots.push_back(0);  // the identity-only diagram
  const ClosureVertices vertices = collect_vertices(machine, roots);
  return diagram_from(machine, vertices);
}

std::vector<int> cycle_reachable(const MooreDiagram& diagram) {
  const int n = static_cast<int>(diagram.vertex_count());

  // Tarjan SCC, iterative
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
      comp(static_cast<std::size_t>(n), -1);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  int next_index = 0, comp_count = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int start = 0; start < n; ++start) {
    if (index[static_cast<std::size_t>(start)] != -1) continue;
    std::vector<Frame> frames{{start, 0}};
    index[static_cast<std::size_t>(start)] = low[static_cast<std::size_t>(start)] = next_index++;
    stack.push_back(start);
    on_stack[static_cast<std::size_t>(start)] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& edges = diagram.edges(static_cast<std::size_t>(f.v));
      if (f.edge < edges.size()) {
        const int w = edges[f.edge++].target;
        if (index[static_cast<std::size_t>(w)] == -1) {
          index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = next_index++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
        }
      } else {
        if (low[static_cast<std::size_t>(f.v)] == index[static_cast<std::size_t>(f.v)]) {
          for (;;) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = 0;
            comp[static_cast<std::size_t>(w)] = comp_count;
            if (w == f.v) break;
          }
          ++comp_count;
        }
        const int v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          const int parent = frames.back().v;
          low[static_cast<std::size_t>(parent)] = std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(v)]);
        }
      }
    }
  }

  // an SCC carries a cycle iff it has more than one vertex or a self-loop
  std::vector<int> comp_size(static_cast<std::size_t>(comp_count), 0);
  std::vector<char> comp_cyclic(static_cast<std::size_t>(comp_count), 0);
  for (int v = 0; v < n; ++v) ++comp_size[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
  for (int v = 0; v < n; ++v) {
    for (const auto& e : diagram.edges(static_cast<std::size_t>(v))) {
      if (e.target == v || comp[static_cast<std::size_t>(e.target)] == comp[static_cast<std::size_t>(v)]) {
        if (e.target == v || comp_size[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] > 1) {
          comp_cyclic[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] = 1;
        }
      }
    }
  }

  // forward closure from all cyclic vertices
  std::vector<char> reach(static_cast<std::size_t>(n), 0);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    if (comp_cyclic[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])]) {
      reach[static_cast<std::size_t>(v)] = 1;
      queue.push_back(v);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& e : diagram.edges(static_cast<std::size_t>(queue[i]))) {
      if (!reach[static_cast<std::size_t>(e.target)]) {
        reach[static_cast<std::size_t>(e.target)] = 1;
        queue.push_back(e.target);
      }
    }
  }

  std::vector<int> result;
  for (int v = 0; v < n; ++v) {
    if (reach[static_cast<std::size_t>(v)]) result.push_back(v);
  }
  return result;
}

MooreDiagram stationary_subgraph(const MooreDiagram& diagram) {
  std::vector<std::vector<MooreDiagram::Edge>> edges;
  edges.reserve(diagram.vertex_count());
  for (std::size_t v = 0; v < diagram.vertex_count(); ++v) {
    std::vector<MooreDiagram::Edge> row;
    for (const auto& e : diagram.edges(v)) {
      if (e.in == e.out) row.push_back(e);
    }
    edges.push_back(std::move(row));
  }
  return MooreDiagram(diagram.backend(), diagram.vertices(), std::move(edges));
}

namespace {

bool plain_dot_id(const std::string& s) {
  if (s.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::string dot_quote(const std::string& s) {
  if (plain_dot_id(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string dot_export(const MooreDiagram& diagram, const DotOptions& options) {
  const Alphabet& alphabet = diagram.backend()->alphabet();
  std::string out = "digraph " + dot_quote(options.graph_name) + " {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=circle];\n";
  std::vector<std::string> names;
  names.reserve(diagram.vertex_count());
  for (std::size_t v = 0; v < diagram.vertex_count(); ++v) {
    names.push_back(diagram.vertex(v).name());
    out += "  " + dot_quote(names.back()) + ";\n";
  }
  for (std::size_t v = 0; v < diagram.vertex_count(); ++v) {
    for (const auto& e : diagram.edges(v)) {
      out += "  " + dot_quote(names[v]) + " -> " + dot_quote(names[static_cast<std::size_t>(e.target)]);
      out += " [label=\"(" + alphabet.symbol(e.in) + "," + alphabet.symbol(e.out) + ")\"";
      if (options.highlight_stationary && e.in == e.out) out += ", style=bold";
      out += "];\n";
    }
  }
  out += "}\n";
  return out;
}

NucleusResult nucleus(std::shared_ptr<const ActionBackend> backend,
                      const std::vector<GroupElement>& generators, const Caps& caps) {
  NucleusResult result;
  result.caps_used = caps;

  ClosureMachine machine(backend, caps);
  std::vector<int> roots{0};  // identity is always a seed
  std::set<int> root_set{0};

  auto add_root = [&](const GroupElement& g) -> bool {
    auto state = machine.add(g);
    if (!state) return false;
    if (root_set.insert(*state).second) roots.push_back(*state);
    return true;
  };

  for (const GroupElement& g : generators) {
    if (!add_root(g) || !add_root(invert(g))) {
      result.note = "restriction closure of the generators exceeded caps";
      return result;
    }
  }

  for (int round = 0; round < caps.max_rounds; ++round) {
    const ClosureVertices vertices = collect_vertices(machine, roots);
    const MooreDiagram diagram = diagram_from(machine, vertices);
    const std::vector<int> cyc = cycle_reachable(diagram);

    std::set<int> nucleus_classes;
    std::vector<int> nucleus_vertices;
    for (int v : cyc) {
      nucleus_classes.insert(vertices.vertex_class[static_cast<std::size_t>(v)]);
      nucleus_vertices.push_back(v);
    }

    std::vector<GroupElement> elements;
    for (int v : nucleus_vertices) elements.push_back(diagram.vertex(static_cast<std::size_t>(v)));

    // every pairwise product must contract back into the candidate set
    std::map<std::pair<int, int>, int> certificate;
    std::set<int> escaped_classes;
    bool all_contract = true;
    for (std::size_t i = 0; i < elements.size() && !machine.overflowed(); ++i) {
      for (std::size_t j = 0; j < elements.size(); ++j) {
        FactorWord product = elements[i].factors();
        const FactorWord& right = elements[j].factors();
        product.insert(product.end(), right.begin(), right.end());
        auto state = machine.add_word(std::move(product));
        if (!state) {
          result.note = "restriction closure of a product exceeded caps";
          return result;
        }
        std::set<int> frontier;
        if (!nucleus_classes.count(machine.class_of(*state))) frontier.insert(*state);
        int depth = 0;
        while (!frontier.empty() && depth < caps.max_depth) {
          std::set<int> next;
          for (int s : frontier) {
            for (Letter x = 0; x < backend->alphabet().size(); ++x) {
              const int t = machine.step(s, x);
              if (!nucleus_classes.count(machine.class_of(t))) next.insert(t);
            }
          }
          frontier = std::move(next);
          ++depth;
        }
        if (frontier.empty()) {
          certificate[{static_cast<int>(i), static_cast<int>(j)}] = depth;
        } else {
          all_contract = false;
          for (int s : frontier) escaped_classes.insert(machine.class_of(s));
        }
      }
    }

    if (all_contract) {
      result.status = NucleusStatus::Verified;
      result.elements = std::move(elements);
      result.certificate = std::move(certificate);
      return result;
    }

    // grow the candidate set by the escaped elements, if they are new
    bool progress = false;
    const std::set<int> known_roots = root_set;
    for (int cls : escaped_classes) {
      const int rep = machine.rep_of_class(cls);
      if (root_set.insert(rep).second) {
        roots.push_back(rep);
        progress = true;
      }
    }
    (void)known_roots;
    if (!progress) {
      result.note = "products escape the cycle-reachable set and add no new elements";
      result.elements = std::move(elements);
      return result;
    }
  }

  result.note = "round limit reached";
  return result;
}

}  // namespace selfsim
