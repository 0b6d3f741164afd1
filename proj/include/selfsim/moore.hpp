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

#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "selfsim/action.hpp"

namespace selfsim {

/// Labelled digraph over a restriction-closed element set: an edge g -> g|_x
/// carries the label (x, g.x). Stationary subgraphs may have fewer than |X|
/// out-edges per vertex.
class MooreDiagram {
 public:
  struct Edge {
    Letter in;
    Letter out;
    int target;
  };

  MooreDiagram(std::shared_ptr<const ActionBackend> backend, std::vector<GroupElement> vertices,
               std::vector<std::vector<Edge>> edges);

  const std::shared_ptr<const ActionBackend>& backend() const { return backend_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const GroupElement& vertex(std::size_t i) const { return vertices_[i]; }
  const std::vector<GroupElement>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges(std::size_t vertex) const { return edges_[vertex]; }
  std::size_t edge_count() const;

 private:
  std::shared_ptr<const ActionBackend> backend_;
  std::vector<GroupElement> vertices_;
  std::vector<std::vector<Edge>> edges_;
};

/// Diagram over the restriction closure of S, vertices in discovery order.
/// Throws OverflowError when the closure exceeds caps.
MooreDiagram build_diagram(std::shared_ptr<const ActionBackend> backend,
                           const std::vector<GroupElement>& seeds, const Caps& caps = {});

/// Vertices lying on or reachable from a directed cycle (ascending order).
std::vector<int> cycle_reachable(const MooreDiagram& diagram);

/// Keeps only the edges labelled (x, x).
MooreDiagram stationary_subgraph(const MooreDiagram& diagram);

struct DotOptions {
  bool highlight_stationary = false;
  std::string graph_name = "moore";
};

std::string dot_export(const MooreDiagram& diagram, const DotOptions& options = {});

enum class NucleusStatus { Verified, Inconclusive };

struct NucleusResult {
  NucleusStatus status = NucleusStatus::Inconclusive;
  std::vector<GroupElement> elements;
  /// Per ordered pair (i, j) of element indices: the depth by which every
  /// restriction of elements[i] * elements[j] has landed in the set.
  std::map<std::pair<int, int>, int> certificate;
  Caps caps_used;
  std::string note;  // why the search stopped, when Inconclusive
};

/// Nucleus search: closes the generators and their inverses under
/// restriction, keeps the cycle-reachable part, and grows the set until
/// every pairwise product contracts back into it.
NucleusResult nucleus(std::shared_ptr<const ActionBackend> backend,
                      const std::vector<GroupElement>& generators, const Caps& caps = {});

}  // namespace selfsim
