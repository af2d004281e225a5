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

#include "qfilter/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qfilter/errors.hpp"

namespace qfilter {
namespace {

using nlohmann::json;

// Minimal emitter with insertion-ordered fields.
class JsonWriter {
 public:
  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(std::string_view name) {
    separate();
    out_ << '"' << name << "\":";
    pending_key_ = true;
    return *this;
  }
  JsonWriter& value(double x) { return raw(format_number(x)); }
  JsonWriter& value(std::uint64_t x) { return raw(std::to_string(x)); }
  JsonWriter& value(bool b) { return raw(b ? "true" : "false"); }
  // Only used for fixed identifiers, so no escaping.
  JsonWriter& string(std::string_view text) { return raw("\"" + std::string(text) + "\""); }
  JsonWriter& value(const Complex& z) {
    return begin_array().value(z.real()).value(z.imag()).end_array();
  }
  JsonWriter& value(const PureState2D& s) { return begin_array().value(s.c1).value(s.c2).end_array(); }

  std::string str() const { return out_.str(); }

 private:
  JsonWriter& raw(std::string_view text) {
    separate();
    out_ << text;
    return *this;
  }
  JsonWriter& open(char c) {
    separate();
    out_ << c;
    first_ = true;
    return *this;
  }
  JsonWriter& close(char c) {
    out_ << c;
    first_ = false;
    return *this;
  }
  void separate() {
    if (pending_key_) {
      pending_key_ = false;
      return;
    }
    if (!first_) out_ << ',';
    first_ = false;
  }

  std::ostringstream out_;
  bool first_ = true;
  bool pending_key_ = false;
};

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

Complex parse_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw SchemaError(where + ": expected a [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Complex> parse_amplitudes(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

std::string format_number(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, value);
  return buffer;
}

Ensemble parse_ensemble(std::string_view json_text, double rank_tol) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("ensemble document must be a JSON object");

  const bool has_states = doc.contains("states");
  const bool has_raw = doc.contains("raw_states");
  if (has_states == has_raw) {
    throw SchemaError("exactly one of \"states\" and \"raw_states\" must be present");
  }
  if (!doc.contains("priors") || !doc["priors"].is_array()) {
    throw SchemaError("\"priors\" must be an array of numbers");
  }
  if (!doc.contains("subset_size") || !doc["subset_size"].is_number_integer()) {
    throw SchemaError("\"subset_size\" must be an integer");
  }

  std::vector<double> priors;
  for (const auto& p : doc["priors"]) {
    if (!p.is_number()) throw SchemaError("\"priors\" must be an array of numbers");
    priors.push_back(p.get<double>());
  }
  const auto m = doc["subset_size"].get<long long>();
  if (m < 0) throw PartitionError("subset_size must be positive, got " + std::to_string(m));

  std::vector<PureState2D> states;
  if (has_states) {
    const json& list = doc["states"];
    if (!list.is_array()) throw SchemaError("\"states\" must be an array");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string where = "states[" + std::to_string(k) + "]";
      const auto amps = parse_amplitudes(list[k], where);
      if (amps.size() != 2) throw SchemaError(where + ": expected exactly two amplitudes");
      states.push_back({amps[0], amps[1]});
    }
  } else {
    const json& list = doc["raw_states"];
    if (!list.is_array()) throw SchemaError("\"raw_states\" must be an array");
    std::vector<RawState> raw;
    for (std::size_t k = 0; k < list.size(); ++k) {
      raw.push_back({parse_amplitudes(list[k], "raw_states[" + std::to_string(k) + "]")});
    }
    states = embed_raw(raw, rank_tol);
  }
  return validate_ensemble(std::move(states), std::move(priors), static_cast<std::size_t>(m));
}

Ensemble load_ensemble(const std::string& path, double rank_tol) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ensemble file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading ensemble file '" + path + "'");
  return parse_ensemble(buffer.str(), rank_tol);
}

std::string to_json(const Ensemble& ensemble) {
  JsonWriter w;
  w.begin_object().key("states").begin_array();
  for (const auto& s : ensemble.states()) w.value(s);
  w.end_array().key("priors").begin_array();
  for (double p : ensemble.priors()) w.value(p);
  w.end_array().key("subset_size").value(static_cast<std::uint64_t>(ensemble.subset_size()));
  return w.end_object().str();
}

std::string to_json(const FilterSolution& s) {
  JsonWriter w;
  w.begin_object()
      .key("p_max").value(clamp_probability(s.p_max))
      .key("p_error").value(clamp_probability(s.p_error))
      .key("R").value(s.R)
      .key("Q").value(s.Q)
      .key("phi_e").value(s.detection.phi)
      .key("chi_e").value(s.detection.chi)
      .key("mu").value(s.detection.mu)
      .key("nu").value(s.detection.nu)
      .key("degenerate").value(s.degenerate)
      .key("decision").string(to_string(s.decision))
      .key("p_max_rank_one").value(clamp_probability(s.p_max_rank_one));
  return w.end_object().str();
}

std::string to_json(const OracleReport& r) {
  JsonWriter w;
  w.begin_object()
      .key("p_max_grid").value(r.p_max_grid)
      .key("phi_grid").value(r.phi_grid)
      .key("chi_grid").value(r.chi_grid)
      .key("p_max_helstrom").value(r.p_max_helstrom)
      .key("p_max_closed").value(r.p_max_closed)
      .key("max_abs_gap").value(r.max_abs_gap);
  return w.end_object().str();
}

std::string to_json(const SimResult& r) {
  JsonWriter w;
  w.begin_object()
      .key("trials").value(r.trials)
      .key("errors").value(r.errors)
      .key("error_rate").value(r.error_rate)
      .key("stderr").value(r.standard_error)
      .key("per_state_counts").begin_array();
  for (const auto& c : r.per_state_counts) {
    w.begin_object()
        .key("state").value(static_cast<std::uint64_t>(c.state))
        .key("mu").value(c.mu)
        .key("nu").value(c.nu)
        .end_object();
  }
  return w.end_array().end_object().str();
}

void write_sweep_csv(std::ostream& os, std::span<const SymmetricFamilyPoint> points) {
  os << "beta,p_err_filter_formula,p_err_filter_solver,p_err_individual,ratio\n";
  for (const auto& p : points) {
    os << format_number(p.beta, 15) << ',' << format_number(p.p_err_filter, 15) << ','
       << format_number(p.p_err_filter_solver, 15) << ',' << format_number(p.p_err_individual, 15)
       << ',' << format_number(p.ratio, 15) << '\n';
  }
}

}  // namespace qfilter
