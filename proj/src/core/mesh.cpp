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

#include "core/mesh.hpp"

#include <stdexcept>

namespace rrls {

EvaluationMesh generate_evaluation_set(const ParamSpace& space, int nb_mesh_dim) {
    space.validate();
    if (nb_mesh_dim < 2)
        throw std::invalid_argument(
            "generate_evaluation_set: nb_mesh_dim must be >= 2 (box endpoints are required)");

    // Inclusive per-dim linspace with exact endpoints.
    std::vector<std::vector<double>> axes(space.size());
    for (std::size_t d = 0; d < space.size(); ++d) {
        axes[d].resize(nb_mesh_dim);
        double low = space.dims[d].low;
        double high = space.dims[d].high;
        for (int i = 0; i < nb_mesh_dim; ++i)
            axes[d][i] = i == 0 ? low
                        : i == nb_mesh_dim - 1
                            ? high
                            : low + (high - low) * static_cast<double>(i) / (nb_mesh_dim - 1);
    }

    EvaluationMesh mesh;
    mesh.space = space;
    mesh.nb_mesh_dim = nb_mesh_dim;
    std::size_t count = 1;
    for (std::size_t d = 0; d < space.size(); ++d) count *= static_cast<std::size_t>(nb_mesh_dim);
    mesh.cells.reserve(count);
    ParamVector cell(space.size());
    std::vector<int> index(space.size(), 0);
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t rest = c;
        // Lexicographic: the first dim varies slowest.
        for (std::size_t d = space.size(); d-- > 0;) {
            index[d] = static_cast<int>(rest % nb_mesh_dim);
            rest /= nb_mesh_dim;
        }
        for (std::size_t d = 0; d < space.size(); ++d) cell[d] = axes[d][index[d]];
        mesh.cells.push_back(cell);
    }
    return mesh;
}

int default_nb_mesh_dim(std::size_t dims) {
    if (dims <= 2) return 5;
    if (dims == 3) return 4;
    return 3;
}

} // namespace rrls
