// Copyright 2026 The Simmap Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIMMAP_CORPUS_HPP
#define SIMMAP_CORPUS_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "simmap/errors.hpp"

namespace simmap {

/// One mapped item. The weight defaults to the item's total number of
/// co-occurrences and may be overridden from an items file; the cluster tag
/// is input metadata only and never computed here.
struct Item {
  std::string id;
  std::string label;
  double weight = 0.0;
  std::optional<int> cluster;
};

/// Symmetric nonnegative integer co-occurrence counts with zero diagonal.
/// totals[i] is kept equal to the row sum over j != i.
class CoOccurrenceMatrix {
 public:
  CoOccurrenceMatrix() = default;
  explicit CoOccurrenceMatrix(std::size_t n) : n_(n), counts_(n * n, 0), totals_(n, 0) {}

  std::size_t size() const { return n_; }

  std::int64_t at(std::size_t i, std::size_t j) const { return counts_[i * n_ + j]; }

  std::int64_t total(std::size_t i) const { return totals_[i]; }
  const std::vector<std::int64_t>& totals() const { return totals_; }

  /// Adds `count` to the unordered pair {i, j}. Rejects self-pairs and
  /// negative counts.
  void add(std::size_t i, std::size_t j, std::int64_t count) {
    if (i == j) throw data_error("self-pair not allowed");
    if (count < 0) throw data_error("negative count");
    counts_[i * n_ + j] += count;
    counts_[j * n_ + i] += count;
    totals_[i] += count;
    totals_[j] += count;
  }

  /// Recomputes all row totals from the counts. Used by validation checks.
  std::vector<std::int64_t> recompute_totals() const {
    std::vector<std::int64_t> t(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (j != i) t[i] += at(i, j);
    return t;
  }

  bool operator==(const CoOccurrenceMatrix& other) const {
    return n_ == other.n_ && counts_ == other.counts_ && totals_ == other.totals_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> totals_;
};

/// A loaded data set: items in first-seen order plus their co-occurrence
/// matrix. Immutable once loaded; safe to share across concurrent readers.
struct Corpus {
  std::vector<Item> items;
  CoOccurrenceMatrix matrix;

  std::size_t size() const { return items.size(); }

  std::optional<std::size_t> index_of(const std::string& id) const {
    for (std::size_t i = 0; i < items.size(); ++i)
      if (items[i].id == id) return i;
    return std::nullopt;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

inline std::int64_t parse_count(const std::string& s, std::size_t line_no) {
  if (s.empty()) throw data_error("line " + std::to_string(line_no) + ": malformed record (empty count)");
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '-' || s[pos] == '+') {
    neg = (s[pos] == '-');
    ++pos;
  }
  if (pos == s.size())
    throw data_error("line " + std::to_string(line_no) + ": malformed record (bad count '" + s + "')");
  std::int64_t v = 0;
  for (; pos < s.size(); ++pos) {
    if (s[pos] < '0' || s[pos] > '9')
      throw data_error("line " + std::to_string(line_no) + ": malformed record (bad count '" + s + "')");
    v = v * 10 + (s[pos] - '0');
  }
  if (neg && v != 0) throw data_error("line " + std::to_string(line_no) + ": negative count");
  return v;
}

struct EdgeRecord {
  std::string a, b;
  std::int64_t count;
};

inline std::vector<EdgeRecord> read_edge_records(std::istream& in) {
  std::vector<EdgeRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields = split_csv(t);
    if (fields.size() != 3)
      throw data_error("line " + std::to_string(line_no) + ": malformed record (expected id_a,id_b,count)");
    if (fields[0].empty() || fields[1].empty())
      throw data_error("line " + std::to_string(line_no) + ": malformed record (empty id)");
    if (fields[0] == fields[1])
      throw data_error("line " + std::to_string(line_no) + ": self-pair '" + fields[0] + "'");
    records.push_back({fields[0], fields[1], parse_count(fields[2], line_no)});
  }
  return records;
}

}  // namespace detail

/// Parses edge-list records (`id_a,id_b,count` per line, `#` comments
/// ignored) into a corpus. Items appear in first-seen order; duplicate
/// unordered pairs are summed; item weights default to the row totals.
inline Corpus parse_edge_list(std::istream& in) {
  std::vector<detail::EdgeRecord> records = detail::read_edge_records(in);

  std::vector<std::string> ids;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& r : records) {
    if (index.emplace(r.a, ids.size()).second) ids.push_back(r.a);
    if (index.emplace(r.b, ids.size()).second) ids.push_back(r.b);
  }

  Corpus corpus;
  corpus.matrix = CoOccurrenceMatrix(ids.size());
  for (const auto& r : records) corpus.matrix.add(index[r.a], index[r.b], r.count);

  corpus.items.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    Item item;
    item.id = ids[i];
    item.label = ids[i];
    item.weight = static_cast<double>(corpus.matrix.total(i));
    corpus.items.push_back(std::move(item));
  }
  return corpus;
}

inline Corpus load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open edge list '" + path + "'");
  return parse_edge_list(in);
}

/// Writes the corpus back out as a canonical edge list. A chain of records
/// (item_{k-1}, item_k) pins the first-seen order on reload, so
/// parse_edge_list(write_edge_list(c)) reproduces the matrix and item order
/// exactly, including items with no co-occurrences.
inline void write_edge_list(const Corpus& corpus, std::ostream& out) {
  const std::size_t n = corpus.size();
  for (std::size_t k = 1; k < n; ++k)
    out << corpus.items[k - 1].id << ',' << corpus.items[k].id << ','
        << corpus.matrix.at(k - 1, k) << '\n';
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1) continue;  // already written in the chain
      if (corpus.matrix.at(i, j) > 0)
        out << corpus.items[i].id << ',' << corpus.items[j].id << ','
            << corpus.matrix.at(i, j) << '\n';
    }
}

/// Reads a dense matrix file (first line: comma-separated ids; then n rows
/// of n counts) and converts it to the canonical corpus form.
inline Corpus parse_dense_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    ids = detail::split_csv(t);
    break;
  }
  if (ids.empty()) throw data_error("dense matrix: missing id header");
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (ids[i] == ids[j]) throw data_error("dense matrix: duplicate id '" + ids[i] + "'");

  const std::size_t n = ids.size();
  std::vector<std::vector<std::int64_t>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields = detail::split_csv(t);
    if (fields.size() != n)
      throw data_error("line " + std::to_string(line_no) + ": expected " + std::to_string(n) + " counts");
    std::vector<std::int64_t> row;
    row.reserve(n);
    for (const auto& f : fields) row.push_back(detail::parse_count(f, line_no));
    rows.push_back(std::move(row));
  }
  if (rows.size() != n) throw data_error("dense matrix: expected " + std::to_string(n) + " rows");

  Corpus corpus;
  corpus.matrix = CoOccurrenceMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 0) throw data_error("dense matrix: nonzero diagonal at row " + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rows[i][j] != rows[j][i])
        throw data_error("dense matrix: asymmetric counts at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      corpus.matrix.add(i, j, rows[i][j]);
    }
  }
  corpus.items.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Item item;
    item.id = ids[i];
    item.label = ids[i];
    item.weight = static_cast<double>(corpus.matrix.total(i));
    corpus.items.push_back(std::move(item));
  }
  return corpus;
}

inline Corpus load_dense_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open dense matrix '" + path + "'");
  return parse_dense_matrix(in);
}

/// Attaches labels, weights, and cluster tags from a CSV items file with
/// header `id,label,weight,cluster` (weight and cluster columns optional).
/// Items not mentioned keep their defaults.
inline void parse_items(std::istream& in, Corpus& corpus) {
  std::string line;
  std::size_t line_no = 0;

  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    header = detail::split_csv(t);
    break;
  }
  if (header.empty()) return;  // empty items file: all defaults retained

  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    return std::nullopt;
  };
  std::optional<std::size_t> id_col = column("id");
  std::optional<std::size_t> label_col = column("label");
  std::optional<std::size_t> weight_col = column("weight");
  std::optional<std::size_t> cluster_col = column("cluster");
  if (!id_col) throw data_error("items file: header must contain an 'id' column");

  std::vector<bool> seen(corpus.size(), false);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields = detail::split_csv(t);
    auto field = [&](std::optional<std::size_t> col) -> std::string {
      if (!col || *col >= fields.size()) return "";
      return fields[*col];
    };

    const std::string id = field(id_col);
    if (id.empty()) throw data_error("line " + std::to_string(line_no) + ": missing id");
    std::optional<std::size_t> idx = corpus.index_of(id);
    if (!idx) throw data_error("line " + std::to_string(line_no) + ": unknown id '" + id + "'");
    if (seen[*idx]) throw data_error("line " + std::to_string(line_no) + ": duplicate id '" + id + "'");
    seen[*idx] = true;

    Item& item = corpus.items[*idx];
    const std::string label = field(label_col);
    if (!label.empty()) item.label = label;
    const std::string weight = field(weight_col);
    if (!weight.empty()) {
      double w = 0.0;
      try {
        std::size_t used = 0;
        w = std::stod(weight, &used);
        if (used != weight.size()) throw std::invalid_argument(weight);
      } catch (const std::exception&) {
        throw data_error("line " + std::to_string(line_no) + ": bad weight '" + weight + "'");
      }
      if (w < 0) throw data_error("line " + std::to_string(line_no) + ": negative weight");
      item.weight = w;
    }
    const std::string cluster = field(cluster_col);
    if (!cluster.empty()) {
      try {
        std::size_t used = 0;
        int c = std::stoi(cluster, &used);
        if (used != cluster.size()) throw std::invalid_argument(cluster);
        item.cluster = c;
      } catch (const std::exception&) {
        throw data_error("line " + std::to_string(line_no) + ": bad cluster '" + cluster + "'");
      }
    }
  }
}

inline void load_items(const std::string& path, Corpus& corpus) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open items file '" + path + "'");
  parse_items(in, corpus);
}

/// Fraction of unordered pairs with zero co-occurrences.
inline double zero_pair_fraction(const CoOccurrenceMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) throw data_error("zero_pair_fraction requires at least 2 items");
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m.at(i, j) == 0) ++zeros;
  return static_cast<double>(zeros) / (static_cast<double>(n) * (n - 1) / 2.0);
}

namespace detail {

/// Connected components of the graph whose edges are pairs with c_ij > 0.
/// Returns a component id per item.
inline std::vector<std::size_t> components_by_cooccurrence(const CoOccurrenceMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> comp(n, static_cast<std::size_t>(-1));
  std::size_t next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != static_cast<std::size_t>(-1)) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (m.at(i, j) > 0 && comp[j] == static_cast<std::size_t>(-1)) {
          comp[j] = next;
          stack.push_back(j);
        }
      }
    }
    ++next;
  }
  return comp;
}

/// Builds the sub-corpus induced by the given (sorted) item indices.
inline Corpus subcorpus(const Corpus& corpus, const std::vector<std::size_t>& keep) {
  Corpus out;
  out.matrix = CoOccurrenceMatrix(keep.size());
  out.items.reserve(keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    out.items.push_back(corpus.items[keep[a]]);
    for (std::size_t b = a + 1; b < keep.size(); ++b) {
      std::int64_t c = corpus.matrix.at(keep[a], keep[b]);
      if (c > 0) out.matrix.add(a, b, c);
    }
  }
  return out;
}

}  // namespace detail

struct ComponentRestriction {
  Corpus corpus;
  std::vector<std::string> dropped_ids;
};

/// Restricts the corpus to its largest connected component (edges are pairs
/// with positive co-occurrence counts). Ties between equal-size components go
/// to the one containing the smallest first-seen item index.
inline ComponentRestriction restrict_to_largest_component(const Corpus& corpus) {
  const std::size_t n = corpus.size();
  ComponentRestriction result;
  if (n == 0) return result;

  std::vector<std::size_t> comp = detail::components_by_cooccurrence(corpus.matrix);
  std::size_t n_comp = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::size_t> sizes(n_comp, 0);
  for (std::size_t c : comp) ++sizes[c];

  // Component ids are assigned in order of smallest contained index, so the
  // first component of maximal size wins ties.
  std::size_t best = 0;
  for (std::size_t c = 1; c < n_comp; ++c)
    if (sizes[c] > sizes[best]) best = c;

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (comp[i] == best)
      keep.push_back(i);
    else
      result.dropped_ids.push_back(corpus.items[i].id);
  }
  result.corpus = detail::subcorpus(corpus, keep);
  return result;
}

/// Drops items whose total co-occurrence count is zero. Removing an isolated
/// item does not change any other item's total.
inline ComponentRestriction drop_zero_total_items(const Corpus& corpus) {
  ComponentRestriction result;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus.matrix.total(i) > 0)
      keep.push_back(i);
    else
      result.dropped_ids.push_back(corpus.items[i].id);
  }
  result.corpus = detail::subcorpus(corpus, keep);
  return result;
}

}  // namespace simmap

#endif  // SIMMAP_CORPUS_HPP
