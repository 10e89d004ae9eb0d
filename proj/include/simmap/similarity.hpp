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

#ifndef SIMMAP_SIMILARITY_HPP
#define SIMMAP_SIMILARITY_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "simmap/corpus.hpp"
#include "simmap/errors.hpp"

namespace simmap {

enum class SimilarityMeasure {
  kAssociationStrength,
  kCosineIndirect,
};

inline const char* to_string(SimilarityMeasure m) {
  switch (m) {
    case SimilarityMeasure::kAssociationStrength: return "assoc";
    case SimilarityMeasure::kCosineIndirect: return "cosine";
  }
  return "?";
}

/// Symmetric nonnegative similarity values with zero diagonal, tagged with
/// the measure that produced them.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  SimilarityMatrix(std::size_t n, SimilarityMeasure measure)
      : n_(n), measure_(measure), values_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  SimilarityMeasure measure() const { return measure_; }

  double at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, double value) {
    values_[i * n_ + j] = value;
    values_[j * n_ + i] = value;
  }

  /// Row sum over j != i.
  double strength(std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += at(i, j);
    return s;
  }

 private:
  std::size_t n_ = 0;
  SimilarityMeasure measure_ = SimilarityMeasure::kAssociationStrength;
  std::vector<double> values_;
};

/// Direct similarity: s_ij = c_ij / (c_i * c_j). Requires every item to have
/// at least one co-occurrence, otherwise the denominator degenerates.
inline SimilarityMatrix association_strength(const Corpus& corpus) {
  const std::size_t n = corpus.size();
  for (std::size_t i = 0; i < n; ++i)
    if (corpus.matrix.total(i) == 0)
      throw data_error("association strength undefined: item '" + corpus.items[i].id +
                       "' has no co-occurrences");

  SimilarityMatrix s(n, SimilarityMeasure::kAssociationStrength);
  for (std::size_t i = 0; i < n; ++i) {
    const double ci = static_cast<double>(corpus.matrix.total(i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const double cj = static_cast<double>(corpus.matrix.total(j));
      s.set(i, j, static_cast<double>(corpus.matrix.at(i, j)) / (ci * cj));
    }
  }
  return s;
}

/// Indirect similarity: the cosine of the co-occurrence profiles of i and j,
/// where the profile index k excludes both i and j in the numerator and in
/// the norms. Pairs where either profile vanishes get similarity 0.
inline SimilarityMatrix cosine_indirect(const Corpus& corpus) {
  const std::size_t n = corpus.size();
  SimilarityMatrix s(n, SimilarityMeasure::kCosineIndirect);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dot = 0.0, ni = 0.0, nj = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double cik = static_cast<double>(corpus.matrix.at(i, k));
        const double cjk = static_cast<double>(corpus.matrix.at(j, k));
        dot += cik * cjk;
        ni += cik * cik;
        nj += cjk * cjk;
      }
      s.set(i, j, (ni > 0.0 && nj > 0.0) ? dot / std::sqrt(ni * nj) : 0.0);
    }
  }
  return s;
}

/// Dissimilarities d_ij = 1 / s_ij over the positive-similarity pairs.
/// Zero-similarity pairs are marked absent; they carry weight 0 downstream.
struct Dissimilarities {
  std::size_t n = 0;
  std::vector<double> values;  // 0 where absent
  std::vector<bool> present;

  double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
  bool has(std::size_t i, std::size_t j) const { return present[i * n + j]; }
};

inline Dissimilarities to_dissimilarity(const SimilarityMatrix& s) {
  Dissimilarities d;
  d.n = s.size();
  d.values.assign(d.n * d.n, 0.0);
  d.present.assign(d.n * d.n, false);
  for (std::size_t i = 0; i < d.n; ++i)
    for (std::size_t j = 0; j < d.n; ++j) {
      if (i != j && s.at(i, j) > 0.0) {
        d.values[i * d.n + j] = 1.0 / s.at(i, j);
        d.present[i * d.n + j] = true;
      }
    }
  return d;
}

}  // namespace simmap

#endif  // SIMMAP_SIMILARITY_HPP
