#include "permgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "permgraph/errors.hpp"

namespace permgraph {

namespace {

void check_entry(std::size_t i, std::size_t j, double w) {
  const std::string where = "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
  if (!std::isfinite(w)) {
    throw InvalidArgument("adjacency entry " + where + " is not finite");
  }
  if (w < 0.0) {
    throw InvalidArgument("adjacency entry " + where + " is negative");
  }
  if (i == j && w != 0.0) {
    throw InvalidArgument("adjacency diagonal entry " + where + " is nonzero");
  }
}

// Unevaluated sum hi + lo carrying ~106 significant bits. Walk sums are
// accumulated in this form so that averages which are exactly equal in real
// arithmetic (closed walks returning to the start, symmetric neighbourhoods)
// also round to the same double; plain double sums break such ties at random.
struct Extended {
  double hi = 0.0;
  double lo = 0.0;
};

Extended two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

Extended renormalize(double hi, double lo) {
  const double s = hi + lo;
  return {s, lo - (s - hi)};
}

Extended add(Extended a, Extended b) {
  const auto s = two_sum(a.hi, b.hi);
  return renormalize(s.hi, s.lo + (a.lo + b.lo));
}

Extended scale(Extended a, double w) {
  if (w == 1.0) return a;
  const double p = a.hi * w;
  return renormalize(p, std::fma(a.hi, w, -p) + a.lo * w);
}

// Nearest double to num / den, up to ~2^-106 relative error.
double divide(Extended num, Extended den) {
  const double q = num.hi / den.hi;
  const double p = q * den.hi;
  const double p_err = std::fma(q, den.hi, -p);
  const double remainder = ((num.hi - p) - p_err + num.lo) - q * den.lo;
  return q + remainder / den.hi;
}

void multiply_extended(const Graph& g, const std::vector<Extended>& x, std::vector<Extended>& out) {
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    Extended acc;
    g.for_each_arc(i, [&](std::size_t j, double w) { acc = add(acc, scale(x[j], w)); });
    out[i] = acc;
  }
}

// Walk counts grow geometrically on dense graphs; rescaling both vectors by
// the same power of two leaves every ratio bit-identical.
constexpr double kRescaleAbove = 0x1p256;

void rescale_if_large(std::vector<Extended>& numer, std::vector<Extended>& denom) {
  double peak = 0.0;
  for (const auto& v : denom) peak = std::max(peak, v.hi);
  if (peak <= kRescaleAbove) return;
  int exponent = 0;
  std::frexp(peak, &exponent);
  for (auto* vec : {&numer, &denom}) {
    for (auto& v : *vec) v = {std::ldexp(v.hi, -exponent), std::ldexp(v.lo, -exponent)};
  }
}

}  // namespace

bool Graph::prefers_sparse(std::size_t num_vertices, std::size_t num_arcs) {
  const double cells = static_cast<double>(num_vertices) * static_cast<double>(num_vertices);
  return static_cast<double>(num_arcs) < kSparseDensityThreshold * cells;
}

Graph Graph::from_dense(std::size_t num_vertices, std::span<const double> row_major) {
  if (num_vertices == 0) throw InvalidArgument("graph must have at least one vertex");
  if (row_major.size() != num_vertices * num_vertices) {
    throw InvalidArgument("adjacency has " + std::to_string(row_major.size()) +
                          " entries, expected " + std::to_string(num_vertices * num_vertices));
  }
  std::size_t arcs = 0;
  for (std::size_t i = 0; i < num_vertices; ++i) {
    for (std::size_t j = 0; j < num_vertices; ++j) {
      const double w = row_major[i * num_vertices + j];
      check_entry(i, j, w);
      if (w != 0.0) ++arcs;
    }
  }

  if (!prefers_sparse(num_vertices, arcs)) {
    return Graph(num_vertices, arcs, Dense{{row_major.begin(), row_major.end()}});
  }
  Csr csr;
  csr.row_offsets.reserve(num_vertices + 1);
  csr.columns.reserve(arcs);
  csr.weights.reserve(arcs);
  csr.row_offsets.push_back(0);
  for (std::size_t i = 0; i < num_vertices; ++i) {
    for (std::size_t j = 0; j < num_vertices; ++j) {
      const double w = row_major[i * num_vertices + j];
      if (w != 0.0) {
        csr.columns.push_back(j);
        csr.weights.push_back(w);
      }
    }
    csr.row_offsets.push_back(csr.columns.size());
  }
  return Graph(num_vertices, arcs, std::move(csr));
}

Graph Graph::from_rows(std::vector<std::vector<Arc>> rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw InvalidArgument("graph must have at least one vertex");

  std::size_t arcs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = rows[i];
    std::sort(row.begin(), row.end(), [](const Arc& a, const Arc& b) { return a.target < b.target; });
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k].target >= n) {
        throw InvalidArgument("arc target " + std::to_string(row[k].target) + " out of range");
      }
      if (k > 0 && row[k].target == row[k - 1].target) {
        throw InvalidArgument("duplicate arc (" + std::to_string(i) + ", " +
                              std::to_string(row[k].target) + ")");
      }
      check_entry(i, row[k].target, row[k].weight);
    }
    std::erase_if(row, [](const Arc& a) { return a.weight == 0.0; });
    arcs += row.size();
  }

  if (!prefers_sparse(n, arcs)) {
    std::vector<double> values(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& arc : rows[i]) values[i * n + arc.target] = arc.weight;
    }
    return Graph(n, arcs, Dense{std::move(values)});
  }
  Csr csr;
  csr.row_offsets.reserve(n + 1);
  csr.columns.reserve(arcs);
  csr.weights.reserve(arcs);
  csr.row_offsets.push_back(0);
  for (const auto& row : rows) {
    for (const auto& arc : row) {
      csr.columns.push_back(arc.target);
      csr.weights.push_back(arc.weight);
    }
    csr.row_offsets.push_back(csr.columns.size());
  }
  return Graph(n, arcs, std::move(csr));
}

double Graph::weight(std::size_t from, std::size_t to) const {
  if (from >= num_vertices_ || to >= num_vertices_) {
    throw InvalidArgument("vertex index out of range");
  }
  if (const auto* csr = std::get_if<Csr>(&storage_)) {
    const auto first = csr->columns.begin() + static_cast<std::ptrdiff_t>(csr->row_offsets[from]);
    const auto last = csr->columns.begin() + static_cast<std::ptrdiff_t>(csr->row_offsets[from + 1]);
    const auto it = std::lower_bound(first, last, to);
    if (it == last || *it != to) return 0.0;
    return csr->weights[static_cast<std::size_t>(it - csr->columns.begin())];
  }
  return std::get<Dense>(storage_).values[from * num_vertices_ + to];
}

double Graph::total_weight() const {
  if (const auto* csr = std::get_if<Csr>(&storage_)) {
    return std::accumulate(csr->weights.begin(), csr->weights.end(), 0.0);
  }
  const auto& values = std::get<Dense>(storage_).values;
  return std::accumulate(values.begin(), values.end(), 0.0);
}

std::vector<double> Graph::to_dense() const {
  if (const auto* dense = std::get_if<Dense>(&storage_)) return dense->values;
  std::vector<double> out(num_vertices_ * num_vertices_, 0.0);
  for (std::size_t i = 0; i < num_vertices_; ++i) {
    for_each_arc(i, [&](std::size_t j, double w) { out[i * num_vertices_ + j] = w; });
  }
  return out;
}

void Graph::multiply(std::span<const double> x, std::span<double> out) const {
  if (x.size() != num_vertices_ || out.size() != num_vertices_) {
    throw InvalidArgument("matrix-vector product dimension mismatch");
  }
  for (std::size_t i = 0; i < num_vertices_; ++i) {
    double acc = 0.0;
    for_each_arc(i, [&](std::size_t j, double w) { acc += w * x[j]; });
    out[i] = acc;
  }
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.num_vertices_ != b.num_vertices_ || a.num_arcs_ != b.num_arcs_) return false;
  for (std::size_t i = 0; i < a.num_vertices_; ++i) {
    bool same = true;
    a.for_each_arc(i, [&](std::size_t j, double w) { same = same && b.weight(i, j) == w; });
    if (!same) return false;
  }
  return true;
}

Graph directed_path(std::size_t n) {
  if (n == 0) throw InvalidArgument("directed_path requires n >= 1");
  std::vector<std::vector<Graph::Arc>> rows(n);
  for (std::size_t i = 0; i + 1 < n; ++i) rows[i].push_back({i + 1, 1.0});
  return Graph::from_rows(std::move(rows));
}

Graph complete_graph(std::size_t p) {
  if (p == 0) throw InvalidArgument("complete_graph requires p >= 1");
  std::vector<double> values(p * p, 1.0);
  for (std::size_t i = 0; i < p; ++i) values[i * p + i] = 0.0;
  return Graph::from_dense(p, values);
}

Graph empty_graph(std::size_t p) {
  if (p == 0) throw InvalidArgument("empty_graph requires p >= 1");
  return Graph::from_rows(std::vector<std::vector<Graph::Arc>>(p));
}

Graph graph_from_matrix(const std::vector<std::vector<double>>& matrix) {
  const std::size_t n = matrix.size();
  if (n == 0) throw InvalidArgument("adjacency matrix is empty");
  std::vector<double> values;
  values.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) {
      throw InvalidArgument("adjacency matrix is not square: row " + std::to_string(i) + " has " +
                            std::to_string(matrix[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
    values.insert(values.end(), matrix[i].begin(), matrix[i].end());
  }
  return Graph::from_dense(n, values);
}

Graph cartesian_product(const Graph& g, const Graph& h) {
  const std::size_t q = h.num_vertices();
  std::vector<std::vector<Graph::Arc>> rows(g.num_vertices() * q);
  for (std::size_t t = 0; t < g.num_vertices(); ++t) {
    for (std::size_t s = 0; s < q; ++s) {
      auto& row = rows[t * q + s];
      g.for_each_arc(t, [&](std::size_t t2, double w) { row.push_back({t2 * q + s, w}); });
      h.for_each_arc(s, [&](std::size_t s2, double w) { row.push_back({t * q + s2, w}); });
    }
  }
  return Graph::from_rows(std::move(rows));
}

std::size_t NeighborhoodEmbedding::valid_count() const {
  return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), true));
}

NeighborhoodEmbedding neighborhood_embedding(const Graph& g, std::span<const double> signal,
                                             std::size_t dimension, std::size_t delay) {
  if (dimension < 2) throw InvalidArgument("embedding dimension must be >= 2");
  if (delay < 1) throw InvalidArgument("delay must be >= 1");
  const std::size_t n = g.num_vertices();
  if (signal.size() != n) {
    throw InvalidArgument("signal has " + std::to_string(signal.size()) +
                          " samples but the graph has " + std::to_string(n) + " vertices");
  }

  std::vector<double> values(n * dimension);
  std::vector<bool> valid(n, true);
  for (std::size_t i = 0; i < n; ++i) values[i * dimension] = signal[i];

  std::vector<Extended> walk_sum(n), walk_count(n, Extended{1.0, 0.0}), scratch(n);
  for (std::size_t i = 0; i < n; ++i) walk_sum[i] = {signal[i], 0.0};
  for (std::size_t k = 1; k < dimension; ++k) {
    for (std::size_t step = 0; step < delay; ++step) {
      multiply_extended(g, walk_sum, scratch);
      walk_sum.swap(scratch);
      multiply_extended(g, walk_count, scratch);
      walk_count.swap(scratch);
      rescale_if_large(walk_sum, walk_count);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (walk_count[i].hi > 0.0) {
        values[i * dimension + k] = divide(walk_sum[i], walk_count[i]);
      } else {
        values[i * dimension + k] = 0.0;
        valid[i] = false;
      }
    }
  }
  return NeighborhoodEmbedding(n, dimension, std::move(values), std::move(valid));
}

}  // namespace permgraph
