// Copyright 2026 The Authors.
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

#ifndef DADS_TYPES_HPP
#define DADS_TYPES_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace dads {

using Scalar = double;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

// Observable-support bits, one per state dimension.
using Indicator = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;

using SensorId = int;
using IdList = std::vector<SensorId>;

}  // namespace dads

#endif  // DADS_TYPES_HPP
