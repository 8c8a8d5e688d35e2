#pragma once

#include <cstddef>
#include <vector>

#include "ctensor/circulant_tensor.hpp"
#include "ctensor/dense_tensor.hpp"

namespace ctensor {

/// Uniform (directed) hypergraph on vertices 1..n with a rotation-closed edge set.
/// Undirected edges are sorted vertex sets; a directed arc is (tail, sorted heads).
struct Hypergraph {
  std::size_t n = 0;
  std::size_t m = 0;
  bool directed = false;
  std::vector<std::vector<std::size_t>> edges;  // 1-based, sorted, no duplicates

  /// Undirected: edges containing j. Directed: arcs with tail j.
  std::vector<std::size_t> degrees() const;
  bool is_rotation_closed() const;
};

/// Smallest rotation-closed edge set (j -> j+1 mod n) containing the generators.
Hypergraph orbit_closure(const std::vector<std::vector<std::size_t>>& generators, std::size_t n,
                         bool directed);

/// Entry 1/(m-1)! at every index tuple whose support is an edge (undirected), or
/// whose first index is the tail and whose remaining indices permute the heads.
CirculantTensor adjacency_tensor(const Hypergraph& g);
/// D - A and D + A, with D the diagonal degree tensor.
CirculantTensor laplacian_tensor(const Hypergraph& g);
CirculantTensor signless_laplacian_tensor(const Hypergraph& g);

/// Full adjacency tensor built edge by edge, without assuming circulant structure.
DenseTensor adjacency_dense(const Hypergraph& g);

}  // namespace ctensor
