// Copyright 2026 The qfilter Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qfilter {

/// Base of every error raised by the library. The CLI maps these to exit 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QFILTER_DEFINE_ERROR(Name)       \
  class Name : public Error {            \
   public:                               \
    using Error::Error;                  \
  };

/// A state norm or the prior vector misses its tolerance.
QFILTER_DEFINE_ERROR(NormalizationError)
/// Subset boundary M outside [1, N).
QFILTER_DEFINE_ERROR(PartitionError)
QFILTER_DEFINE_ERROR(LengthMismatch)
/// The states span more than two dimensions.
QFILTER_DEFINE_ERROR(RankError)
/// All states are parallel; no second basis vector exists.
QFILTER_DEFINE_ERROR(DegenerateBasisError)
QFILTER_DEFINE_ERROR(NotRealError)
QFILTER_DEFINE_ERROR(ShapeError)
QFILTER_DEFINE_ERROR(DomainError)
QFILTER_DEFINE_ERROR(SchemaError)
QFILTER_DEFINE_ERROR(IoError)

#undef QFILTER_DEFINE_ERROR

}  // namespace qfilter
