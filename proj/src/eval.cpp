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

#include "maskforge/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <thread>

#include "maskforge/error.hpp"
#include "maskforge/pipeline.hpp"

namespace maskforge {

using nlohmann::json;

double iou(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_shape(b)) throw Error(ErrorCode::DimensionMismatch, "iou of differently sized masks");
  const std::size_t inter = count_intersection(a, b);
  const std::size_t uni = count(a) + count(b) - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<ComponentMatch> match_components(std::span<const BinaryMask> pred,
                                             std::span<const BinaryMask> truth) {
  if (pred.size() > 4 || truth.size() > 4)
    throw Error(ErrorCode::InvalidArgument, "match_components handles at most 4 masks per side");
  const int np = static_cast<int>(pred.size());
  const int nt = static_cast<int>(truth.size());
  const int n = std::max(np, nt);

  std::vector<std::vector<double>> score(np, std::vector<double>(nt));
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < nt; ++j) score[i][j] = iou(pred[i], truth[j]);

  // perm[i] is the truth slot of prediction slot i; slots past the real
  // entries stand for "unmatched".
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_sum = -1.0;
  do {
    double sum = 0.0;
    for (int i = 0; i < np; ++i)
      if (perm[i] < nt) sum += score[i][perm[i]];
    if (sum > best_sum) {
      best_sum = sum;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<ComponentMatch> out;
  std::vector<bool> truth_used(nt, false);
  for (int i = 0; i < np; ++i) {
    if (best[i] < nt) {
      out.push_back({i, best[i], score[i][best[i]]});
      truth_used[best[i]] = true;
    }
  }
  for (int i = 0; i < np; ++i)
    if (best[i] >= nt) out.push_back({i, -1, 0.0});
  for (int j = 0; j < nt; ++j)
    if (!truth_used[j]) out.push_back({-1, j, 0.0});
  return out;
}

bool partition_holds(const BinaryMask& foreground, const BinaryMask& overlap,
                     std::span<const BinaryMask> components) {
  if (!is_subset(overlap, foreground)) return false;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!is_subset(components[i], foreground)) return false;
    if (count_intersection(components[i], overlap) != 0) return false;
    for (std::size_t j = i + 1; j < components.size(); ++j)
      if (count_intersection(components[i], components[j]) != 0) return false;
  }
  return true;
}

FixtureResult evaluate(const OverlapFixture& fixture, const PipelineConfig& cfg, std::string name) {
  FixtureResult r;
  r.name = std::move(name);
  r.component_ious.assign(fixture.gt_components.size(), 0.0);
  RegionMaskSet masks;
  const auto start = std::chrono::steady_clock::now();
  try {
    masks = run(fixture.image, cfg).masks;
  } catch (const Error& e) {
    r.status = std::string(to_string(e.code()));
  } catch (const std::exception&) {
    r.status = "Internal";
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  if (r.status != "ok") return r;

  const Margins m = Margins::uniform(masks.provenance.pad);
  const BinaryMask foreground = crop(masks.foreground, m);
  const BinaryMask overlap = crop(masks.overlap, m);
  std::vector<BinaryMask> components;
  for (const auto& c : masks.components) components.push_back(crop(c, m));
  if (!overlap.same_shape(fixture.gt_overlap) || !overlap.same_shape(fixture.gt_foreground)) {
    r.status = std::string(to_string(ErrorCode::DimensionMismatch));
    return r;
  }
  for (const auto& gt : fixture.gt_components) {
    if (!overlap.same_shape(gt)) {
      r.status = std::string(to_string(ErrorCode::DimensionMismatch));
      return r;
    }
  }

  r.predicted_components = static_cast<int>(components.size());
  r.angle_deg = masks.provenance.angle_deg;
  r.line_length = masks.provenance.line_length;
  r.partition_ok = partition_holds(foreground, overlap, components);
  r.overlap_iou = iou(overlap, fixture.gt_overlap);

  const std::size_t limit = 4;
  if (components.size() <= limit && fixture.gt_components.size() <= limit) {
    for (const auto& match : match_components(components, fixture.gt_components))
      if (match.truth >= 0) r.component_ious[match.truth] = match.iou;
  }

  BinaryMask covered = overlap;
  for (const auto& c : components) covered = mask_union(covered, c);
  const std::size_t gt_area = count(fixture.gt_foreground);
  r.coverage = gt_area == 0 ? 0.0 : static_cast<double>(count(covered)) / static_cast<double>(gt_area);

  r.passed = r.partition_ok && r.overlap_iou >= kPassOverlapIou && !r.component_ious.empty() &&
             std::all_of(r.component_ious.begin(), r.component_ious.end(),
                         [](double v) { return v >= kPassComponentIou; });
  return r;
}

Aggregate aggregate(std::span<const FixtureResult> results) {
  Aggregate a;
  a.fixtures = static_cast<int>(results.size());
  std::vector<double> ov, comp, cov;
  std::vector<std::int64_t> times;
  for (const auto& r : results) {
    ++a.status_counts[r.status];
    times.push_back(r.runtime_ms);
    if (r.passed) ++a.passed;
    if (r.status != "ok") continue;
    ++a.ok;
    ov.push_back(r.overlap_iou);
    cov.push_back(r.coverage);
    comp.insert(comp.end(), r.component_ious.begin(), r.component_ious.end());
  }
  auto summarize = [](const std::vector<double>& v) {
    MetricSummary s;
    if (v.empty()) return s;
    s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    s.min = *std::min_element(v.begin(), v.end());
    return s;
  };
  a.overlap_iou = summarize(ov);
  a.component_iou = summarize(comp);
  a.coverage = summarize(cov);
  if (!times.empty()) {
    std::sort(times.begin(), times.end());
    const std::size_t n = times.size();
    a.median_runtime_ms = n % 2 == 1 ? times[n / 2] : (times[n / 2 - 1] + times[n / 2]) / 2;
  }
  return a;
}

namespace {

template <typename Fn>
std::vector<FixtureResult> run_jobs(std::size_t n, int jobs, Fn&& fn) {
  std::vector<FixtureResult> results(n);
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          results[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace

EvalReport evaluate_directory(const std::filesystem::path& dir, const PipelineConfig& cfg, int jobs) {
  cfg.validate();
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::Io, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_directory() && std::filesystem::exists(entry.path() / "image.pgm")) dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end());

  EvalReport report;
  report.config = cfg;
  report.fixtures = run_jobs(dirs.size(), jobs, [&](std::size_t i) {
    return evaluate(load_fixture(dirs[i]), cfg, dirs[i].filename().string());
  });
  report.aggregate = aggregate(report.fixtures);
  return report;
}

EvalReport evaluate_all(std::span<const OverlapFixture> fixtures, std::span<const std::string> names,
                        const PipelineConfig& cfg, int jobs) {
  cfg.validate();
  if (!names.empty() && names.size() != fixtures.size())
    throw Error(ErrorCode::InvalidArgument, "one name per fixture");
  EvalReport report;
  report.config = cfg;
  report.fixtures = run_jobs(fixtures.size(), jobs, [&](std::size_t i) {
    return evaluate(fixtures[i], cfg, names.empty() ? std::to_string(i) : names[i]);
  });
  report.aggregate = aggregate(report.fixtures);
  return report;
}

namespace {

json summary_json(const MetricSummary& s) { return {{"mean", s.mean}, {"min", s.min}}; }

MetricSummary summary_from(const json& j) { return {j.at("mean").get<double>(), j.at("min").get<double>()}; }

}  // namespace

json to_json(const EvalReport& report) {
  json fixtures = json::array();
  for (const auto& r : report.fixtures) {
    fixtures.push_back({
        {"name", r.name},
        {"status", r.status},
        {"overlap_iou", r.overlap_iou},
        {"component_ious", r.component_ious},
        {"coverage", r.coverage},
        {"runtime_ms", r.runtime_ms},
        {"predicted_components", r.predicted_components},
        {"partition_ok", r.partition_ok},
        {"passed", r.passed},
        {"angle_deg", r.angle_deg},
        {"line_length", r.line_length},
    });
  }
  const auto& a = report.aggregate;
  return {
      {"schema", report.schema},
      {"config", to_json(report.config)},
      {"fixtures", fixtures},
      {"aggregate",
       {
           {"fixtures", a.fixtures},
           {"ok", a.ok},
           {"passed", a.passed},
           {"status_counts", a.status_counts},
           {"overlap_iou", summary_json(a.overlap_iou)},
           {"component_iou", summary_json(a.component_iou)},
           {"coverage", summary_json(a.coverage)},
           {"median_runtime_ms", a.median_runtime_ms},
       }},
  };
}

EvalReport report_from_json(const json& j) {
  try {
    EvalReport report;
    report.schema = j.at("schema").get<int>();
    if (report.schema != kReportSchema)
      throw Error(ErrorCode::InvalidArgument, "unsupported report schema " + std::to_string(report.schema));
    report.config = config_from_json(j.at("config"));
    for (const auto& f : j.at("fixtures")) {
      FixtureResult r;
      r.name = f.at("name").get<std::string>();
      r.status = f.at("status").get<std::string>();
      r.overlap_iou = f.at("overlap_iou").get<double>();
      r.component_ious = f.at("component_ious").get<std::vector<double>>();
      r.coverage = f.at("coverage").get<double>();
      r.runtime_ms = f.at("runtime_ms").get<std::int64_t>();
      r.predicted_components = f.at("predicted_components").get<int>();
      r.partition_ok = f.at("partition_ok").get<bool>();
      r.passed = f.at("passed").get<bool>();
      r.angle_deg = f.at("angle_deg").get<int>();
      r.line_length = f.at("line_length").get<int>();
      report.fixtures.push_back(std::move(r));
    }
    const auto& a = j.at("aggregate");
    report.aggregate.fixtures = a.at("fixtures").get<int>();
    report.aggregate.ok = a.at("ok").get<int>();
    report.aggregate.passed = a.at("passed").get<int>();
    report.aggregate.status_counts = a.at("status_counts").get<std::map<std::string, int>>();
    report.aggregate.overlap_iou = summary_from(a.at("overlap_iou"));
    report.aggregate.component_iou = summary_from(a.at("component_iou"));
    report.aggregate.coverage = summary_from(a.at("coverage"));
    report.aggregate.median_runtime_ms = a.at("median_runtime_ms").get<std::int64_t>();
    return report;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed report: ") + e.what());
  }
}

std::string serialize(const EvalReport& report) { return to_json(report).dump(2) + "\n"; }

EvalReport parse_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed report: ") + e.what());
  }
  return report_from_json(j);
}

}  // namespace maskforge
