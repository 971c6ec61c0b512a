#include "bcc/graph.hpp"

#include <sstream>

#include "bcc/rng.hpp"

namespace bcc {

BipartiteGraph::BipartiteGraph(std::size_t n_left, std::size_t n_right,
                               const EdgeList& edges)
    : n_left_(n_left), n_right_(n_right), n_edges_(0),
      rows_(n_left, BitRow(n_right)) {
  for (const auto& [l, r] : edges) {
    if (l >= n_left || r >= n_right) {
      std::ostringstream msg;
      msg << "edge (" << l << ", " << r << ") out of range for " << n_left
          << "x" << n_right << " graph";
      throw std::invalid_argument(msg.str());
    }
    rows_[l].set(r);
  }
  for (const auto& row : rows_) n_edges_ += row.count();
}

const BitRow& BipartiteGraph::neighbors(std::size_t l) const {
  if (l >= n_left_) throw std::out_of_range("left index out of range");
  return rows_[l];
}

bool BipartiteGraph::has_edge(std::size_t l, std::size_t r) const {
  if (l >= n_left_ || r >= n_right_)
    throw std::out_of_range("pair index out of range");
  return rows_[l].test(r);
}

std::vector<Pair> BipartiteGraph::edges() const {
  std::vector<Pair> out;
  out.reserve(n_edges_);
  for (std::uint32_t l = 0; l < n_left_; ++l)
    rows_[l].for_each_set([&](std::size_t r) {
      out.push_back({l, static_cast<std::uint32_t>(r)});
    });
  return out;
}

BipartiteGraph gen_random(std::size_t n_left, std::size_t n_right, double p,
                          std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("p must be in [0, 1]");
  SplitMix64 rng(seed);
  EdgeList edges;
  for (std::uint32_t l = 0; l < n_left; ++l)
    for (std::uint32_t r = 0; r < n_right; ++r)
      if (rng.next_unit() < p) edges.emplace_back(l, r);
  return BipartiteGraph(n_left, n_right, edges);
}

BipartiteGraph gen_biclique_union(const std::vector<std::size_t>& left_sizes,
                                  const std::vector<std::size_t>& right_sizes) {
  if (left_sizes.size() != right_sizes.size())
    throw std::invalid_argument("left_sizes and right_sizes differ in length");
  std::size_t n_left = 0, n_right = 0;
  for (auto s : left_sizes) n_left += s;
  for (auto s : right_sizes) n_right += s;
  EdgeList edges;
  std::size_t l0 = 0, r0 = 0;
  for (std::size_t i = 0; i < left_sizes.size(); ++i) {
    for (std::size_t l = l0; l < l0 + left_sizes[i]; ++l)
      for (std::size_t r = r0; r < r0 + right_sizes[i]; ++r)
        edges.emplace_back(static_cast<std::uint32_t>(l),
                           static_cast<std::uint32_t>(r));
    l0 += left_sizes[i];
    r0 += right_sizes[i];
  }
  return BipartiteGraph(n_left, n_right, edges);
}

BipartiteGraph gen_planted(const std::vector<std::size_t>& left_sizes,
                           const std::vector<std::size_t>& right_sizes,
                           double eps, std::uint64_t seed) {
  if (eps < 0.0 || eps > 1.0)
    throw std::invalid_argument("eps must be in [0, 1]");
  BipartiteGraph base = gen_biclique_union(left_sizes, right_sizes);
  SplitMix64 rng(seed);
  EdgeList edges;
  for (std::uint32_t l = 0; l < base.n_left(); ++l)
    for (std::uint32_t r = 0; r < base.n_right(); ++r) {
      bool flip = rng.next_unit() < eps;
      if (base.has_edge(l, r) != flip) edges.emplace_back(l, r);
    }
  return BipartiteGraph(base.n_left(), base.n_right(), edges);
}

BipartiteGraph gen_counterexample(std::size_t n) {
  if (n < 2) throw std::invalid_argument("counterexample needs n >= 2");
  EdgeList edges;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j)
      if (i != j) edges.emplace_back(i, j);
  return BipartiteGraph(n, n, edges);
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

bool is_blank_or_comment(const std::string& s) {
  for (char c : s) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

}  // namespace

BipartiteGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;

  std::size_t n_left = 0, n_right = 0, n_edges = 0;
  bool have_header = false;
  std::size_t header_line = 0;
  std::vector<BitRow> rows;
  EdgeList edges;

  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    std::istringstream fields(line);
    if (!have_header) {
      std::string tag;
      long long nl = -1, nr = -1, ne = -1;
      std::string trailing;
      fields >> tag >> nl >> nr >> ne;
      if (fields.fail() || tag != "bcc" || nl < 0 || nr < 0 || ne < 0 ||
          (fields >> trailing))
        throw ParseError(lineno, "malformed header, expected "
                                 "'bcc <n_left> <n_right> <n_edges>'");
      n_left = static_cast<std::size_t>(nl);
      n_right = static_cast<std::size_t>(nr);
      n_edges = static_cast<std::size_t>(ne);
      rows.assign(n_left, BitRow(n_right));
      have_header = true;
      header_line = lineno;
      continue;
    }
    long long l = -1, r = -1;
    std::string trailing;
    fields >> l >> r;
    if (fields.fail() || l < 0 || r < 0 || (fields >> trailing))
      throw ParseError(lineno, "malformed edge line, expected '<l> <r>'");
    if (edges.size() == n_edges)
      throw ParseError(lineno, "more edges than the header's " +
                                   std::to_string(n_edges));
    if (static_cast<std::size_t>(l) >= n_left ||
        static_cast<std::size_t>(r) >= n_right)
      throw ParseError(lineno, "edge (" + std::to_string(l) + ", " +
                                   std::to_string(r) + ") out of range");
    if (rows[static_cast<std::size_t>(l)].test(static_cast<std::size_t>(r)))
      throw ParseError(lineno, "duplicate edge (" + std::to_string(l) + ", " +
                                   std::to_string(r) + ")");
    rows[static_cast<std::size_t>(l)].set(static_cast<std::size_t>(r));
    edges.emplace_back(static_cast<std::uint32_t>(l),
                       static_cast<std::uint32_t>(r));
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  if (edges.size() != n_edges)
    throw ParseError(header_line,
                     "header announces " + std::to_string(n_edges) +
                         " edges but file has " + std::to_string(edges.size()));
  return BipartiteGraph(n_left, n_right, edges);
}

std::string serialize_graph(const BipartiteGraph& g) {
  std::ostringstream out;
  out << "bcc " << g.n_left() << " " << g.n_right() << " " << g.n_edges()
      << "\n";
  for (const Pair& e : g.edges()) out << e.left << " " << e.right << "\n";
  return out.str();
}

}  // namespace bcc
