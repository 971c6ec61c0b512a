#include "bcc/clustering.hpp"

#include <numeric>
#include <sstream>
#include <unordered_map>

namespace bcc {

Clustering::Clustering(std::size_t n_left, std::size_t n_right,
                       std::vector<std::uint32_t> left_ids,
                       std::vector<std::uint32_t> right_ids)
    : n_left_(n_left), n_right_(n_right),
      left_ids_(std::move(left_ids)), right_ids_(std::move(right_ids)) {
  if (left_ids_.size() != n_left_ || right_ids_.size() != n_right_)
    throw std::invalid_argument("assignment length mismatch");
  std::unordered_map<std::uint32_t, std::uint32_t> remap;
  std::uint32_t next = 0;
  auto canon = [&](std::uint32_t id) {
    auto [it, fresh] = remap.try_emplace(id, next);
    if (fresh) ++next;
    return it->second;
  };
  for (auto& id : left_ids_) id = canon(id);
  for (auto& id : right_ids_) id = canon(id);
  n_clusters_ = next;
}

Clustering Clustering::singletons(std::size_t n_left, std::size_t n_right) {
  std::vector<std::uint32_t> li(n_left), ri(n_right);
  std::iota(li.begin(), li.end(), 0u);
  std::iota(ri.begin(), ri.end(), static_cast<std::uint32_t>(n_left));
  return Clustering(n_left, n_right, std::move(li), std::move(ri));
}

Clustering Clustering::all_in_one(std::size_t n_left, std::size_t n_right) {
  return Clustering(n_left, n_right,
                    std::vector<std::uint32_t>(n_left, 0),
                    std::vector<std::uint32_t>(n_right, 0));
}

BitRow Clustering::right_members(std::uint32_t c) const {
  BitRow row(n_right_);
  for (std::size_t j = 0; j < n_right_; ++j)
    if (right_ids_[j] == c) row.set(j);
  return row;
}

std::vector<std::uint32_t> Clustering::left_members(std::uint32_t c) const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < n_left_; ++i)
    if (left_ids_[i] == c) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

std::vector<BitRow> membership_rows(const Clustering& b) {
  std::vector<BitRow> by_cluster(b.n_clusters(), BitRow(b.n_right()));
  for (std::size_t j = 0; j < b.n_right(); ++j)
    by_cluster[b.right_cluster(j)].set(j);
  std::vector<BitRow> rows;
  rows.reserve(b.n_left());
  for (std::size_t i = 0; i < b.n_left(); ++i)
    rows.push_back(by_cluster[b.left_cluster(i)]);
  return rows;
}

CostReport cost(const BipartiteGraph& g, const Clustering& b) {
  if (g.n_left() != b.n_left() || g.n_right() != b.n_right())
    throw std::invalid_argument("graph and clustering shapes differ");
  std::vector<BitRow> memb = membership_rows(b);
  CostReport rep{0, 0, 0};
  for (std::size_t i = 0; i < g.n_left(); ++i) {
    rep.cut_edges += g.neighbors(i).count_and_not(memb[i]);
    rep.missing_pairs += memb[i].count_and_not(g.neighbors(i));
  }
  rep.total = rep.cut_edges + rep.missing_pairs;
  return rep;
}

std::vector<BitRow> erroneous_rows(const BipartiteGraph& g,
                                   const Clustering& b) {
  if (g.n_left() != b.n_left() || g.n_right() != b.n_right())
    throw std::invalid_argument("graph and clustering shapes differ");
  std::vector<BitRow> rows = membership_rows(b);
  for (std::size_t i = 0; i < g.n_left(); ++i) rows[i] ^= g.neighbors(i);
  return rows;
}

std::vector<Pair> erroneous_pairs(const BipartiteGraph& g,
                                  const Clustering& b) {
  std::vector<Pair> out;
  std::vector<BitRow> rows = erroneous_rows(g, b);
  for (std::uint32_t i = 0; i < g.n_left(); ++i)
    rows[i].for_each_set([&](std::size_t r) {
      out.push_back({i, static_cast<std::uint32_t>(r)});
    });
  return out;
}

Clustering normalize(const Clustering& b) {
  std::vector<bool> has_left(b.n_clusters(), false),
      has_right(b.n_clusters(), false);
  for (std::size_t i = 0; i < b.n_left(); ++i)
    has_left[b.left_cluster(i)] = true;
  for (std::size_t j = 0; j < b.n_right(); ++j)
    has_right[b.right_cluster(j)] = true;

  std::vector<std::uint32_t> li(b.n_left()), ri(b.n_right());
  std::uint32_t fresh = static_cast<std::uint32_t>(b.n_clusters());
  for (std::size_t i = 0; i < b.n_left(); ++i) {
    std::uint32_t c = b.left_cluster(i);
    li[i] = has_right[c] ? c : fresh++;
  }
  for (std::size_t j = 0; j < b.n_right(); ++j) {
    std::uint32_t c = b.right_cluster(j);
    ri[j] = has_left[c] ? c : fresh++;
  }
  return Clustering(b.n_left(), b.n_right(), std::move(li), std::move(ri));
}

std::string format_clustering(const Clustering& b) {
  std::ostringstream out;
  for (std::uint32_t c = 0; c < b.n_clusters(); ++c) {
    std::vector<std::uint32_t> lefts = b.left_members(c);
    std::vector<std::uint32_t> rights = b.right_members(c).to_indices();
    if (lefts.size() + rights.size() < 2) continue;
    bool first = true;
    for (auto i : lefts) {
      out << (first ? "" : " ") << "L" << i;
      first = false;
    }
    for (auto j : rights) {
      out << (first ? "" : " ") << "R" << j;
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

Clustering parse_clustering(const std::string& text, std::size_t n_left,
                            std::size_t n_right) {
  constexpr std::uint32_t kUnassigned = ~std::uint32_t(0);
  std::vector<std::uint32_t> li(n_left, kUnassigned), ri(n_right, kUnassigned);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::uint32_t next_id = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string tok;
    bool used = false;
    while (fields >> tok) {
      if (tok.size() < 2 || (tok[0] != 'L' && tok[0] != 'R'))
        throw ParseError(lineno, "bad node token '" + tok + "'");
      std::size_t idx;
      try {
        std::size_t pos;
        idx = std::stoul(tok.substr(1), &pos);
        if (pos != tok.size() - 1) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError(lineno, "bad node token '" + tok + "'");
      }
      std::vector<std::uint32_t>& ids = (tok[0] == 'L') ? li : ri;
      std::size_t n = (tok[0] == 'L') ? n_left : n_right;
      if (idx >= n)
        throw ParseError(lineno, "node " + tok + " out of range");
      if (ids[idx] != kUnassigned)
        throw ParseError(lineno, "node " + tok + " listed twice");
      ids[idx] = next_id;
      used = true;
    }
    if (used) ++next_id;
  }
  for (auto& id : li)
    if (id == kUnassigned) id = next_id++;
  for (auto& id : ri)
    if (id == kUnassigned) id = next_id++;
  return Clustering(n_left, n_right, std::move(li), std::move(ri));
}

}  // namespace bcc
