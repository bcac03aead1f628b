#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace permgraph {

/// Weighted directed graph on vertices {0..n-1}.
///
/// Entry (i, j) of the adjacency matrix is the weight of the arc i -> j; zero
/// means no arc. Undirected edges are stored as two arcs. Weights are
/// nonnegative and the diagonal is always zero.
///
/// Storage is chosen from the arc density: compressed sparse rows below
/// `kSparseDensityThreshold`, a dense row-major matrix otherwise. All
/// operations behave identically for both.
class Graph {
 public:
  static constexpr double kSparseDensityThreshold = 0.25;

  struct Arc {
    std::size_t target;
    double weight;
  };

  /// Validates and wraps a row-major n x n matrix.
  static Graph from_dense(std::size_t num_vertices, std::span<const double> row_major);

  /// Builds from per-row arc lists. Rows may be in any column order but must
  /// not repeat a column; validation is the same as `from_dense`.
  static Graph from_rows(std::vector<std::vector<Arc>> rows);

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  bool is_sparse() const noexcept { return std::holds_alternative<Csr>(storage_); }

  double weight(std::size_t from, std::size_t to) const;

  /// Number of nonzero adjacency entries.
  std::size_t num_arcs() const noexcept { return num_arcs_; }
  double total_weight() const;

  std::vector<double> to_dense() const;

  /// out = A * x.
  void multiply(std::span<const double> x, std::span<double> out) const;

  /// Calls fn(target, weight) for every arc leaving `from`, in increasing
  /// target order.
  template <class Fn>
  void for_each_arc(std::size_t from, Fn&& fn) const {
    if (const auto* csr = std::get_if<Csr>(&storage_)) {
      for (std::size_t k = csr->row_offsets[from]; k < csr->row_offsets[from + 1]; ++k) {
        fn(csr->columns[k], csr->weights[k]);
      }
    } else {
      const auto& dense = std::get<Dense>(storage_);
      const double* row = dense.values.data() + from * num_vertices_;
      for (std::size_t j = 0; j < num_vertices_; ++j) {
        if (row[j] != 0.0) fn(j, row[j]);
      }
    }
  }

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  struct Dense {
    std::vector<double> values;
  };
  struct Csr {
    std::vector<std::size_t> row_offsets;
    std::vector<std::size_t> columns;
    std::vector<double> weights;
  };

  Graph(std::size_t num_vertices, std::size_t num_arcs, std::variant<Dense, Csr> storage)
      : num_vertices_(num_vertices), num_arcs_(num_arcs), storage_(std::move(storage)) {}

  static bool prefers_sparse(std::size_t num_vertices, std::size_t num_arcs);

  std::size_t num_vertices_ = 0;
  std::size_t num_arcs_ = 0;
  std::variant<Dense, Csr> storage_;
};

/// Arcs (i, i+1) with weight 1 for 0 <= i < n-1.
Graph directed_path(std::size_t n);

/// All-ones adjacency minus the identity.
Graph complete_graph(std::size_t p);

/// p isolated vertices.
Graph empty_graph(std::size_t p);

/// Wraps a square matrix given as rows. Throws InvalidArgument naming the
/// offending index for non-square input, negative or non-finite weights, or a
/// nonzero diagonal.
Graph graph_from_matrix(const std::vector<std::vector<double>>& matrix);

/// Cartesian product g □ h. Vertex (t, s) has flat index t * |V(h)| + s and
/// the adjacency is the Kronecker sum A_g ⊗ I + I ⊗ A_h.
Graph cartesian_product(const Graph& g, const Graph& h);

/// Walk-neighborhood averages of a graph signal.
///
/// value(i, k) = (A^{kL} x)_i / (A^{kL} 1)_i for k = 0..m-1. A vertex is valid
/// when every denominator is positive.
class NeighborhoodEmbedding {
 public:
  NeighborhoodEmbedding(std::size_t num_vertices, std::size_t dimension,
                        std::vector<double> values, std::vector<bool> valid)
      : num_vertices_(num_vertices),
        dimension_(dimension),
        values_(std::move(values)),
        valid_(std::move(valid)) {}

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  std::size_t dimension() const noexcept { return dimension_; }

  double value(std::size_t vertex, std::size_t k) const {
    return values_[vertex * dimension_ + k];
  }
  std::span<const double> row(std::size_t vertex) const {
    return {values_.data() + vertex * dimension_, dimension_};
  }
  bool valid(std::size_t vertex) const { return valid_[vertex]; }
  std::size_t valid_count() const;

 private:
  std::size_t num_vertices_;
  std::size_t dimension_;
  std::vector<double> values_;  // row-major, num_vertices x dimension
  std::vector<bool> valid_;
};

/// Computes the embedding by iterated matrix-vector products; A^{kL} is never
/// formed. Walks follow arc direction starting at each vertex.
NeighborhoodEmbedding neighborhood_embedding(const Graph& g, std::span<const double> signal,
                                             std::size_t dimension, std::size_t delay);

}  // namespace permgraph
