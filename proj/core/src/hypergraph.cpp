#include "ctensor/hypergraph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ctensor {
namespace {

std::vector<std::size_t> canonical(std::vector<std::size_t> e, bool directed) {
  if (directed) {
    std::sort(e.begin() + 1, e.end());
  } else {
    std::sort(e.begin(), e.end());
  }
  return e;
}

std::vector<std::size_t> rotate(const std::vector<std::size_t>& e, std::size_t n) {
  std::vector<std::size_t> r(e.size());
  std::transform(e.begin(), e.end(), r.begin(), [n](std::size_t j) { return j % n + 1; });
  return r;
}

double inverse_factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return 1.0 / f;
}

// Calls fn on every 0-based index tuple of the full tensor that carries edge e.
template <typename Fn>
void for_each_incidence(const std::vector<std::size_t>& e, bool directed, Fn fn) {
  Index idx(e.size());
  if (directed) {
    std::vector<std::size_t> heads(e.begin() + 1, e.end());
    do {
      idx[0] = e[0] - 1;
      for (std::size_t l = 0; l < heads.size(); ++l) idx[l + 1] = heads[l] - 1;
      fn(idx);
    } while (std::next_permutation(heads.begin(), heads.end()));
    return;
  }
  std::vector<std::size_t> perm(e);
  do {
    for (std::size_t l = 0; l < perm.size(); ++l) idx[l] = perm[l] - 1;
    fn(idx);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

DenseTensor root_with_degree(const Hypergraph& g, double adjacency_sign) {
  if (!g.is_rotation_closed()) throw std::invalid_argument("edge set is not closed under rotation");
  const double w = inverse_factorial(g.m - 1);
  DenseTensor root(g.m - 1, g.n);
  for (const auto& e : g.edges) {
    for_each_incidence(e, g.directed, [&](const Index& idx) {
      if (idx[0] != 0) return;
      const std::span<const std::size_t> rest(idx.data() + 1, idx.size() - 1);
      const std::size_t flat = root.flat_index_zero(rest);
      root.set_flat(flat, root.at_flat(flat) + adjacency_sign * w);
    });
  }
  return root;
}

}  // namespace

std::vector<std::size_t> Hypergraph::degrees() const {
  std::vector<std::size_t> d(n, 0);
  for (const auto& e : edges) {
    if (directed) {
      ++d[e[0] - 1];
    } else {
      for (std::size_t j : e) ++d[j - 1];
    }
  }
  return d;
}

bool Hypergraph::is_rotation_closed() const {
  const std::set<std::vector<std::size_t>> set(edges.begin(), edges.end());
  return std::all_of(edges.begin(), edges.end(),
                     [&](const auto& e) { return set.count(canonical(rotate(e, n), directed)) == 1; });
}

Hypergraph orbit_closure(const std::vector<std::vector<std::size_t>>& generators, std::size_t n,
                         bool directed) {
  if (n < 2) throw std::invalid_argument("hypergraph needs at least 2 vertices");
  if (generators.empty()) throw std::invalid_argument("hypergraph needs at least one generator");
  const std::size_t m = generators.front().size();
  if (m < 2) throw std::invalid_argument("edges need at least 2 vertices");
  if (m > n) throw std::invalid_argument("edge size exceeds the vertex count");
  std::set<std::vector<std::size_t>> edges;
  for (const auto& gen : generators) {
    if (gen.size() != m) throw std::invalid_argument("generators must all have the same size");
    for (std::size_t j : gen) {
      if (j < 1 || j > n) throw std::out_of_range("vertex out of range");
    }
    std::vector<std::size_t> sorted(gen);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("repeated vertex within an edge");
    }
    auto e = canonical(gen, directed);
    for (std::size_t r = 0; r < n; ++r) {
      edges.insert(e);
      e = canonical(rotate(e, n), directed);
    }
  }
  Hypergraph g;
  g.n = n;
  g.m = m;
  g.directed = directed;
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

CirculantTensor adjacency_tensor(const Hypergraph& g) { return CirculantTensor(root_with_degree(g, 1.0)); }

CirculantTensor laplacian_tensor(const Hypergraph& g) {
  DenseTensor root = root_with_degree(g, -1.0);
  root.set_flat(0, root.at_flat(0) + static_cast<double>(g.degrees().front()));
  return CirculantTensor(std::move(root));
}

CirculantTensor signless_laplacian_tensor(const Hypergraph& g) {
  DenseTensor root = root_with_degree(g, 1.0);
  root.set_flat(0, root.at_flat(0) + static_cast<double>(g.degrees().front()));
  return CirculantTensor(std::move(root));
}

DenseTensor adjacency_dense(const Hypergraph& g) {
  const double w = inverse_factorial(g.m - 1);
  DenseTensor t(g.m, g.n);
  for (const auto& e : g.edges) {
    for_each_incidence(e, g.directed, [&](const Index& idx) { t.set_flat(t.flat_index_zero(idx), w); });
  }
  return t;
}

}  // namespace ctensor
