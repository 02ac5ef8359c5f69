/* Copyright 2026 The LesionKit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef LESIONKIT_INFER_ENSEMBLE_HPP_
#define LESIONKIT_INFER_ENSEMBLE_HPP_

#include <span>

#include "lesionkit/infer/prediction.hpp"

namespace lesionkit {

/// Componentwise arithmetic mean of the input sets' probability vectors.
/// Inputs must agree on task and image_id set. The mean is computed from the
/// sorted addends in extended precision, so the result is exactly invariant
/// under reordering of the sets and always lies within [min, max] of the
/// fused components; means of normalized vectors stay normalized.
PredictionSet ensemble_mean(std::span<const PredictionSet> sets);

}  // namespace lesionkit

#endif  // LESIONKIT_INFER_ENSEMBLE_HPP_
