// Copyright 2026 The vowelprint Authors
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

#include "vowelprint/report.hpp"

#include <cstdio>
#include <sstream>

#include "vowelprint/error.hpp"

namespace vowelprint {

using nlohmann::json;

namespace {

template <typename T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json band_json(const Band& b) { return json::array({b.lo, b.hi}); }
Band band_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json peak_json(const std::optional<SpectralPeak>& p) {
  if (!p) return nullptr;
  return {{"hz", p->frequency}, {"intensity", p->intensity}, {"bin", p->bin}};
}

std::optional<SpectralPeak> peak_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return SpectralPeak{j.at("hz").get<double>(), j.at("intensity").get<double>(),
                      j.at("bin").get<std::size_t>()};
}

json frame_json(const FrameAnalysis& f) {
  return {{"index", f.index},
          {"time", f.time},
          {"voiced", f.pitch.voiced},
          {"f0", opt(f.pitch.f0)},
          {"f0_intensity", f.pitch.intensity},
          {"harmonicity", f.pitch.harmonicity},
          {"harmonics_voiced", f.harmonics.voiced},
          {"low1", peak_json(f.harmonics.low1)},
          {"low2", peak_json(f.harmonics.low2)},
          {"up1", peak_json(f.harmonics.up1)},
          {"up2", peak_json(f.harmonics.up2)}};
}

FrameAnalysis frame_from(const json& j) {
  FrameAnalysis f;
  f.index = j.at("index").get<std::size_t>();
  f.time = j.at("time").get<double>();
  f.pitch.voiced = j.at("voiced").get<bool>();
  f.pitch.f0 = get_opt<double>(j, "f0");
  f.pitch.intensity = j.at("f0_intensity").get<double>();
  f.pitch.harmonicity = j.at("harmonicity").get<double>();
  f.harmonics.voiced = j.at("harmonics_voiced").get<bool>();
  f.harmonics.low1 = peak_from(j.at("low1"));
  f.harmonics.low2 = peak_from(j.at("low2"));
  f.harmonics.up1 = peak_from(j.at("up1"));
  f.harmonics.up2 = peak_from(j.at("up2"));
  return f;
}

json pitch_stats_json(const PitchTrack& t) {
  return {{"voiced_frames", t.voiced_count()},
          {"f0_mean", opt(t.f0_mean)},
          {"f0_deviation", opt(t.f0_deviation)},
          {"f0_slope", opt(t.f0_slope)},
          {"intensity_slope", opt(t.intensity_slope)}};
}

void pitch_stats_from(const json& j, PitchTrack& t) {
  t.f0_mean = get_opt<double>(j, "f0_mean");
  t.f0_deviation = get_opt<double>(j, "f0_deviation");
  t.f0_slope = get_opt<double>(j, "f0_slope");
  t.intensity_slope = get_opt<double>(j, "intensity_slope");
}

json classification_json(const std::optional<ClassificationResult>& c) {
  if (!c) return nullptr;
  json criteria = json::array();
  for (const auto& k : c->per_criterion) criteria.push_back({{"name", k.name}, {"passed", k.passed}});
  return {{"label", c->label},
          {"score", c->score},
          {"template", c->template_label},
          {"criteria", criteria}};
}

std::optional<ClassificationResult> classification_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  ClassificationResult c;
  c.label = j.at("label").get<std::string>();
  c.score = j.at("score").get<double>();
  c.template_label = j.at("template").get<std::string>();
  for (const auto& k : j.at("criteria")) {
    c.per_criterion.push_back({k.at("name").get<std::string>(), k.at("passed").get<bool>()});
  }
  return c;
}

}  // namespace

json config_to_json(const AnalysisConfig& c) {
  return {
      {"frame",
       {{"frame_length", c.frame.frame_length},
        {"hop_length", c.frame.hop_length},
        {"window", window_name(c.frame.window)}}},
      {"pitch",
       {{"f0_min", c.pitch.f0_min},
        {"f0_max", c.pitch.f0_max},
        {"voicing_threshold", c.pitch.voicing_threshold},
        {"voicing_band", json::array({c.pitch.voicing_band_lo, c.pitch.voicing_band_hi})},
        {"hps_terms", c.pitch.hps_terms},
        {"subharmonic_ratio", c.pitch.subharmonic_ratio},
        {"subharmonic_energy_gain", c.pitch.subharmonic_energy_gain},
        {"superharmonic_tolerance", c.pitch.superharmonic_tolerance},
        {"harmonic_floor_db", c.pitch.harmonic_floor_db}}},
      {"bands", {{"lower", band_json(c.bands.lower)}, {"upper", band_json(c.bands.upper)}}},
      {"harmonics",
       {{"gate_fraction", c.harmonics.gate_fraction}, {"masking_db", c.harmonics.masking_db}}},
      {"trend",
       {{"slope_threshold", c.trend.slope_threshold},
        {"curvature_threshold", c.trend.curvature_threshold},
        {"min_improvement", c.trend.min_improvement}}},
      {"segmentation",
       {{"jump_threshold", c.segmentation.jump_threshold},
        {"jump_frames", c.segmentation.jump_frames},
        {"harmonic_steps", c.segmentation.harmonic_steps},
        {"min_segment_frames", c.segmentation.min_segment_frames}}},
      {"classifier",
       {{"accept_threshold", c.classifier.accept_threshold},
        {"range_tolerance_hz", c.classifier.range_tolerance_hz}}},
  };
}

AnalysisConfig config_from_json(const json& j) {
  AnalysisConfig c;
  const auto& fr = j.at("frame");
  c.frame.frame_length = fr.at("frame_length").get<std::size_t>();
  c.frame.hop_length = fr.at("hop_length").get<std::size_t>();
  c.frame.window = parse_window(fr.at("window").get<std::string>());
  const auto& p = j.at("pitch");
  c.pitch.f0_min = p.at("f0_min").get<double>();
  c.pitch.f0_max = p.at("f0_max").get<double>();
  c.pitch.voicing_threshold = p.at("voicing_threshold").get<double>();
  c.pitch.voicing_band_lo = p.at("voicing_band").at(0).get<double>();
  c.pitch.voicing_band_hi = p.at("voicing_band").at(1).get<double>();
  c.pitch.hps_terms = p.at("hps_terms").get<int>();
  c.pitch.subharmonic_ratio = p.at("subharmonic_ratio").get<double>();
  c.pitch.subharmonic_energy_gain = p.at("subharmonic_energy_gain").get<double>();
  c.pitch.superharmonic_tolerance = p.at("superharmonic_tolerance").get<double>();
  c.pitch.harmonic_floor_db = p.at("harmonic_floor_db").get<double>();
  c.bands.lower = band_from(j.at("bands").at("lower"));
  c.bands.upper = band_from(j.at("bands").at("upper"));
  c.harmonics.gate_fraction = j.at("harmonics").at("gate_fraction").get<double>();
  c.harmonics.masking_db = j.at("harmonics").at("masking_db").get<double>();
  const auto& t = j.at("trend");
  c.trend.slope_threshold = t.at("slope_threshold").get<double>();
  c.trend.curvature_threshold = t.at("curvature_threshold").get<double>();
  c.trend.min_improvement = t.at("min_improvement").get<double>();
  const auto& s = j.at("segmentation");
  c.segmentation.jump_threshold = s.at("jump_threshold").get<double>();
  c.segmentation.jump_frames = s.at("jump_frames").get<std::size_t>();
  c.segmentation.harmonic_steps = s.at("harmonic_steps").get<double>();
  c.segmentation.min_segment_frames = s.at("min_segment_frames").get<std::size_t>();
  c.classifier.accept_threshold = j.at("classifier").at("accept_threshold").get<double>();
  c.classifier.range_tolerance_hz = j.at("classifier").at("range_tolerance_hz").get<double>();
  return c;
}

json report_to_json(const Analysis& a) {
  json segments = json::array();
  for (const auto& s : a.segments) {
    json frames = json::array();
    for (std::size_t i = s.segment.start_frame; i < s.segment.end_frame; ++i) {
      frames.push_back(frame_json(a.frames[i]));
    }
    const auto& bt = s.track;
    segments.push_back({
        {"start_frame", s.segment.start_frame},
        {"end_frame", s.segment.end_frame},
        {"start_time", s.start_time},
        {"end_time", s.end_time},
        {"voiced", s.segment.voiced},
        {"dynamics_split", s.segment.dynamics_split},
        {"pitch", pitch_stats_json(s.pitch)},
        {"trend",
         {{"up1", bt.trend_up1 ? json(trend_name(*bt.trend_up1)) : json(nullptr)},
          {"strength", opt(bt.trend_strength)},
          {"slope", opt(bt.up1_slope)},
          {"curvature", opt(bt.up1_curvature)},
          {"up1_mean", opt(bt.up1_mean)}}},
        {"classification", classification_json(s.classification)},
        {"frames", frames},
    });
  }
  return {
      {"schema_version", kReportSchemaVersion},
      {"config", config_to_json(a.config)},
      {"audio",
       {{"sample_rate", a.sample_rate},
        {"samples", a.sample_count},
        {"duration", a.sample_rate ? static_cast<double>(a.sample_count) / a.sample_rate : 0.0}}},
      {"frame_count", a.frames.size()},
      {"pitch", pitch_stats_json(a.pitch)},
      {"segments", segments},
  };
}

Analysis report_from_json(const json& j) {
  try {
    if (j.at("schema_version").get<std::string>() != kReportSchemaVersion) {
      throw Error(ErrorCode::kMalformedTable, "unsupported report schema version");
    }
    Analysis a;
    a.config = config_from_json(j.at("config"));
    a.sample_rate = j.at("audio").at("sample_rate").get<int>();
    a.sample_count = j.at("audio").at("samples").get<std::size_t>();
    const double hop = a.config.hop_seconds(a.sample_rate);
    for (const auto& js : j.at("segments")) {
      SegmentAnalysis s;
      s.segment.start_frame = js.at("start_frame").get<std::size_t>();
      s.segment.end_frame = js.at("end_frame").get<std::size_t>();
      s.segment.voiced = js.at("voiced").get<bool>();
      s.segment.dynamics_split = js.at("dynamics_split").get<bool>();
      s.start_time = js.at("start_time").get<double>();
      s.end_time = js.at("end_time").get<double>();
      for (const auto& jf : js.at("frames")) {
        auto f = frame_from(jf);
        s.pitch.estimates.push_back(f.pitch);
        s.track.frames.push_back(f.harmonics);
        a.frames.push_back(std::move(f));
      }
      pitch_stats_from(js.at("pitch"), s.pitch);
      const auto& jt = js.at("trend");
      s.track.hop_seconds = hop;
      if (!jt.at("up1").is_null()) s.track.trend_up1 = parse_trend(jt.at("up1").get<std::string>());
      s.track.trend_strength = get_opt<double>(jt, "strength");
      s.track.up1_slope = get_opt<double>(jt, "slope");
      s.track.up1_curvature = get_opt<double>(jt, "curvature");
      s.track.up1_mean = get_opt<double>(jt, "up1_mean");
      s.classification = classification_from(js.at("classification"));
      a.segments.push_back(std::move(s));
    }
    for (const auto& f : a.frames) a.pitch.estimates.push_back(f.pitch);
    pitch_stats_from(j.at("pitch"), a.pitch);
    return a;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedTable, std::string("report: ") + e.what());
  }
}

namespace {

void cell(std::string& row, const std::optional<double>& v, const char* fmt = "%.4f") {
  row += ',';
  if (!v) return;
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, *v);
  row += buf;
}

void peak_cells(std::string& row, const std::optional<SpectralPeak>& p) {
  cell(row, p ? std::optional(p->frequency) : std::nullopt);
  cell(row, p ? std::optional(p->intensity) : std::nullopt, "%.6g");
}

std::string frame_cells(const FrameAnalysis& f) {
  std::string row;
  cell(row, f.pitch.f0);
  cell(row, f.pitch.voiced ? std::optional(f.pitch.intensity) : std::nullopt, "%.6g");
  peak_cells(row, f.harmonics.low1);
  peak_cells(row, f.harmonics.low2);
  peak_cells(row, f.harmonics.up1);
  peak_cells(row, f.harmonics.up2);
  return row;
}

std::string time_text(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", t);
  return buf;
}

}  // namespace

std::string report_csv(const Analysis& a) {
  std::string out = "segment,index,time,voiced,f0,f0_intensity,low1_hz,low1_int,low2_hz,low2_int,"
                    "up1_hz,up1_int,up2_hz,up2_int,segment_label\n";
  for (std::size_t si = 0; si < a.segments.size(); ++si) {
    const auto& s = a.segments[si];
    const std::string label = s.classification ? s.classification->label : "";
    for (std::size_t i = s.segment.start_frame; i < s.segment.end_frame; ++i) {
      const auto& f = a.frames[i];
      out += std::to_string(si) + ',' + std::to_string(f.index) + ',' + time_text(f.time) + ',' +
             (f.pitch.voiced ? "1" : "0") + frame_cells(f) + ',' + label + '\n';
    }
  }
  return out;
}

std::string tracks_csv(const Analysis& a) {
  std::string out(kTracksHeader);
  out += '\n';
  for (const auto& f : a.frames) out += time_text(f.time) + frame_cells(f) + '\n';
  return out;
}

}  // namespace vowelprint
