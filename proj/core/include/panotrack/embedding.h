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

#ifndef PANOTRACK_EMBEDDING_H_
#define PANOTRACK_EMBEDDING_H_

#include <vector>

namespace panotrack {

// Fixed-length appearance descriptor of one detection or track.
using Embedding = std::vector<double>;

// Euclidean norm.
double EmbeddingNorm(const Embedding& e);

// e / ||e||. Zero vectors have no direction and are rejected.
Embedding NormalizeEmbedding(const Embedding& e);

// Cosine of the angle between a and b, in [-1, 1]. Requires equal lengths
// and two non-zero vectors.
double CosineSimilarity(const Embedding& a, const Embedding& b);

}  // namespace panotrack

#endif  // PANOTRACK_EMBEDDING_H_
