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

#include <string>
#include <utility>
#include <vector>

namespace rrls {

/// Dependency-free line plot: per-seed series are resampled onto a
/// common step grid and drawn as a mean line with a +/- one-std band.
/// Output is deterministic for fixed input.
std::string training_curve_svg(
    const std::string& title,
    const std::vector<std::vector<std::pair<long long, double>>>& per_seed_series);

} // namespace rrls
