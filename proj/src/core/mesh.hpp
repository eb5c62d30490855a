// Copyright 2026 The rrls Authors
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

#pragma once

#include "core/env.hpp"

namespace rrls {

/// Uniform evaluation mesh over a parameter box: nb_mesh_dim inclusive
/// linspace points per dimension, cells ordered lexicographically over
/// dims (first dim slowest). Both box corners are always present.
struct EvaluationMesh {
    ParamSpace space;
    int nb_mesh_dim = 0;
    std::vector<ParamVector> cells;
};

/// Builds the mesh; nb_mesh_dim must be >= 2 so the endpoints exist.
EvaluationMesh generate_evaluation_set(const ParamSpace& space, int nb_mesh_dim);

/// Default mesh granularity per dimension count: 5 for d <= 2, 4 for
/// d == 3, 3 beyond.
int default_nb_mesh_dim(std::size_t dims);

} // namespace rrls
