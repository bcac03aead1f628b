#include "permgraph/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>

#include "permgraph/errors.hpp"

namespace permgraph {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_real(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

struct Row {
  std::size_t line;
  std::vector<std::string_view> cells;
};

// Keeps the backing strings alive alongside the views into them.
struct CsvLines {
  std::vector<std::string> storage;
  std::vector<Row> rows;
};

CsvLines read_rows(std::istream& in) {
  CsvLines out;
  std::string line;
  std::vector<std::size_t> line_numbers;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (trim(line).empty()) continue;
    out.storage.push_back(line);
    line_numbers.push_back(number);
  }
  for (std::size_t k = 0; k < out.storage.size(); ++k) {
    out.rows.push_back({line_numbers[k], split_cells(out.storage[k])});
  }
  return out;
}

std::vector<double> numeric_row(const Row& row, std::size_t expected_columns) {
  if (row.cells.size() != expected_columns) {
    throw ParseError("line " + std::to_string(row.line) + ": expected " +
                         std::to_string(expected_columns) + " columns, found " +
                         std::to_string(row.cells.size()),
                     row.line);
  }
  std::vector<double> values;
  values.reserve(row.cells.size());
  for (std::size_t c = 0; c < row.cells.size(); ++c) {
    const auto v = parse_real(row.cells[c]);
    if (!v) {
      throw ParseError("line " + std::to_string(row.line) + ", column " + std::to_string(c + 1) +
                           ": '" + std::string(row.cells[c]) + "' is not a number",
                       row.line);
    }
    values.push_back(*v);
  }
  return values;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

std::string format_significant(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string format_fixed(double value, int decimals) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

MultivariateSignal parse_signal_csv(std::istream& in) {
  const auto csv = read_rows(in);
  if (csv.rows.empty()) throw ParseError("line 1: empty signal file", 1);

  const auto& first = csv.rows.front();
  const std::size_t channels = first.cells.size();
  bool has_header = false;
  for (auto cell : first.cells) {
    if (!parse_real(cell)) has_header = true;
  }

  std::vector<std::string> names;
  if (has_header) {
    for (auto cell : first.cells) names.emplace_back(cell);
  }
  const std::size_t first_data = has_header ? 1 : 0;
  if (csv.rows.size() == first_data) {
    throw ParseError("line " + std::to_string(first.line + 1) + ": no samples after header",
                     first.line + 1);
  }

  const std::size_t length = csv.rows.size() - first_data;
  std::vector<double> data(channels * length);
  for (std::size_t t = 0; t < length; ++t) {
    const auto& row = csv.rows[first_data + t];
    const auto values = numeric_row(row, channels);
    for (std::size_t s = 0; s < channels; ++s) {
      if (!std::isfinite(values[s])) {
        throw ParseError("line " + std::to_string(row.line) + ": non-finite sample", row.line);
      }
      data[s * length + t] = values[s];
    }
  }
  return {channels, length, std::move(data), std::move(names)};
}

MultivariateSignal load_signal(const std::string& path) {
  auto in = open_input(path);
  return parse_signal_csv(in);
}

Graph parse_adjacency_csv(std::istream& in) {
  const auto csv = read_rows(in);
  if (csv.rows.empty()) throw ParseError("line 1: empty adjacency file", 1);
  std::vector<std::vector<double>> matrix;
  for (const auto& row : csv.rows) matrix.push_back(numeric_row(row, csv.rows.front().cells.size()));
  return graph_from_matrix(matrix);
}

Graph load_adjacency(const std::string& path) {
  auto in = open_input(path);
  return parse_adjacency_csv(in);
}

Graph load_interaction_graph(const std::string& path, std::size_t channels) {
  Graph g = load_adjacency(path);
  if (g.num_vertices() != channels) {
    throw InvalidArgument("interaction graph in '" + path + "' is " +
                          std::to_string(g.num_vertices()) + "x" +
                          std::to_string(g.num_vertices()) + " but the signal has " +
                          std::to_string(channels) + " channels");
  }
  return g;
}

void write_signal_csv(std::ostream& out, const MultivariateSignal& u) {
  const auto& names = u.channel_names();
  for (std::size_t s = 0; s < names.size(); ++s) out << (s ? "," : "") << names[s];
  if (!names.empty()) out << '\n';
  for (std::size_t t = 0; t < u.length(); ++t) {
    for (std::size_t s = 0; s < u.channels(); ++s) {
      out << (s ? "," : "") << format_significant(u.at(s, t));
    }
    out << '\n';
  }
}

void write_adjacency_csv(std::ostream& out, const Graph& g) {
  const std::size_t n = g.num_vertices();
  const auto dense = g.to_dense();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? "," : "") << format_significant(dense[i * n + j]);
    out << '\n';
  }
}

}  // namespace permgraph
