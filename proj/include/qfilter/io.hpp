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

// Ensemble JSON input and the JSON/CSV reports written by the CLI.
//
// Ensemble schema:
//   { "states":     [ [[re,im],[re,im]], ... ]      (2D amplitudes)
//     or "raw_states": [ [[re,im], ...], ... ]      (any dimension, embedded)
//     "priors": [r1, ..., rN], "subset_size": M }
//
// Reports use a fixed field order and 17 significant digits, so identical
// inputs give byte-identical output.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "qfilter/ensemble.hpp"
#include "qfilter/families.hpp"
#include "qfilter/oracle.hpp"
#include "qfilter/simulate.hpp"
#include "qfilter/solver.hpp"

namespace qfilter {

/// Throws SchemaError on malformed documents, plus any validation or
/// embedding error.
Ensemble parse_ensemble(std::string_view json_text, double rank_tol = kDefaultRankTolerance);

/// Throws IoError if the file cannot be read.
Ensemble load_ensemble(const std::string& path, double rank_tol = kDefaultRankTolerance);

std::string to_json(const Ensemble& ensemble);
std::string to_json(const FilterSolution& solution);
std::string to_json(const OracleReport& report);
std::string to_json(const SimResult& result);

/// Header plus one row per point, 15 significant digits.
void write_sweep_csv(std::ostream& os, std::span<const SymmetricFamilyPoint> points);

/// printf-style %.{digits}g
std::string format_number(double value, int digits = 17);

}  // namespace qfilter
