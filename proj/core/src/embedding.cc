// Copyright 2026 The Panotrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "panotrack/embedding.h"

#include <algorithm>
#include <cmath>

#include "panotrack/error.h"

namespace panotrack {

double EmbeddingNorm(const Embedding& e) {
  double sum = 0.0;
  for (const double v : e) sum += v * v;
  return std::sqrt(sum);
}

Embedding NormalizeEmbedding(const Embedding& e) {
  const double norm = EmbeddingNorm(e);
  if (norm == 0.0) {
    throw InputError("cannot normalize a zero embedding");
  }
  Embedding out(e.size());
  std::transform(e.begin(), e.end(), out.begin(),
                 [norm](double v) { return v / norm; });
  return out;
}

double CosineSimilarity(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size()) {
    throw InputError("embedding length mismatch in cosine similarity");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  const double na = EmbeddingNorm(a);
  const double nb = EmbeddingNorm(b);
  if (na == 0.0 || nb == 0.0) {
    throw InputError("cosine similarity of a zero embedding is undefined");
  }
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

}  // namespace panotrack
