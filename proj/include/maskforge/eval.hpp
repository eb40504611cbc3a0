// Copyright 2026 The maskforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "maskforge/config.hpp"
#include "maskforge/image.hpp"
#include "maskforge/synth.hpp"

namespace maskforge {

inline constexpr int kReportSchema = 1;
/// A fixture passes when it runs, keeps the partition and reaches these IoUs.
inline constexpr double kPassOverlapIou = 0.5;
inline constexpr double kPassComponentIou = 0.6;

/// |a and b| / |a or b|, 1.0 when both are empty.
double iou(const BinaryMask& a, const BinaryMask& b);

struct ComponentMatch {
  int pred = -1;   // -1: truth entry left unmatched
  int truth = -1;  // -1: prediction left unmatched
  double iou = 0.0;

  friend bool operator==(const ComponentMatch&, const ComponentMatch&) = default;
};

/// Exhaustive assignment maximizing summed IoU; at most 4 entries per side.
/// Matched pairs come first in prediction order, then unmatched entries.
std::vector<ComponentMatch> match_components(std::span<const BinaryMask> pred,
                                             std::span<const BinaryMask> truth);

/// Components pairwise disjoint, disjoint from the overlap, all inside the foreground.
bool partition_holds(const BinaryMask& foreground, const BinaryMask& overlap,
                     std::span<const BinaryMask> components);

struct FixtureResult {
  std::string name;
  std::string status = "ok";  // "ok" or an error code name
  double overlap_iou = 0.0;
  std::vector<double> component_ious;  // per ground-truth component
  double coverage = 0.0;               // |overlap + components| / |gt foreground|
  std::int64_t runtime_ms = 0;
  int predicted_components = 0;
  bool partition_ok = false;
  bool passed = false;
  int angle_deg = 0;
  int line_length = 0;

  friend bool operator==(const FixtureResult&, const FixtureResult&) = default;
};

struct MetricSummary {
  double mean = 0.0;
  double min = 0.0;

  friend bool operator==(const MetricSummary&, const MetricSummary&) = default;
};

struct Aggregate {
  int fixtures = 0;
  int ok = 0;
  int passed = 0;
  std::map<std::string, int> status_counts;
  MetricSummary overlap_iou;     // over ok fixtures
  MetricSummary component_iou;   // over every component of ok fixtures
  MetricSummary coverage;        // over ok fixtures
  std::int64_t median_runtime_ms = 0;

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct EvalReport {
  int schema = kReportSchema;
  PipelineConfig config;
  std::vector<FixtureResult> fixtures;
  Aggregate aggregate;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Runs the pipeline on one fixture. Never throws on pipeline failure; the
/// error name lands in status. Only run() is timed.
FixtureResult evaluate(const OverlapFixture& fixture, const PipelineConfig& cfg, std::string name = {});

Aggregate aggregate(std::span<const FixtureResult> results);

/// Evaluates every subdirectory of dir that holds an image.pgm, in name
/// order, using up to jobs threads. Output order does not depend on jobs.
EvalReport evaluate_directory(const std::filesystem::path& dir, const PipelineConfig& cfg, int jobs = 1);

/// Same for fixtures already in memory.
EvalReport evaluate_all(std::span<const OverlapFixture> fixtures, std::span<const std::string> names,
                        const PipelineConfig& cfg, int jobs = 1);

nlohmann::json to_json(const EvalReport& report);
EvalReport report_from_json(const nlohmann::json& j);
std::string serialize(const EvalReport& report);
EvalReport parse_report(const std::string& text);

}  // namespace maskforge
