// Copyright 2026 the sscsi authors
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

#include "sscsi/datacube.hpp"

#include "sscsi/errors.hpp"

namespace sscsi {

Datacube::Datacube(CubeDims dims, std::vector<double> data) : dims_(dims), data_(std::move(data)) {
  if (static_cast<std::int64_t>(data_.size()) != dims_.voxels())
    throw DimensionMismatch("datacube payload does not match its dimensions");
}

std::vector<double> Datacube::signature(int x, int y) const {
  std::vector<double> out(static_cast<std::size_t>(dims_.bands));
  for (int k = 0; k < dims_.bands; ++k) out[k] = at(x, y, k);
  return out;
}

MeasurementSet::MeasurementSet(int shots, int rows, int cols, std::vector<double> data)
    : shots_(shots), rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != static_cast<std::size_t>(shots) * rows * cols)
    throw DimensionMismatch("measurement payload does not match its dimensions");
}

}  // namespace sscsi
