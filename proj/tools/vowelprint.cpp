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


// vowelprint command-line front end.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vowelprint/classifier.hpp"
#include "vowelprint/error.hpp"
#include "vowelprint/pipeline.hpp"
#include "vowelprint/report.hpp"
#include "vowelprint/synth.hpp"

namespace vp = vowelprint;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitError = 2;

std::vector<double> parse_list(const std::string& text, std::size_t want, const char* flag) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw vp::Error(vp::ErrorCode::kInvalidConfig, std::string(flag) + ": bad number '" + item + "'");
    }
  }
  if (out.size() != want) {
    throw vp::Error(vp::ErrorCode::kInvalidConfig,
                    std::string(flag) + " expects " + std::to_string(want) + " values");
  }
  return out;
}

// Analysis settings shared by analyze, classify and tracks.
struct Common {
  std::string bands;
  std::optional<std::size_t> frame;
  std::optional<std::size_t> hop;
  std::string window;
  std::string f0_range;
  std::optional<double> voicing;
  std::optional<double> slope;
  std::optional<double> curvature;
  std::optional<double> jump;
  std::optional<double> accept;
  std::string templates;

  void attach(CLI::App& app) {
    app.add_option("--bands", bands, "lower and upper band edges: lo1,hi1,lo2,hi2");
    app.add_option("--frame", frame, "frame length in samples");
    app.add_option("--hop", hop, "hop length in samples");
    app.add_option("--window", window, "rectangular, hann or hamming");
    app.add_option("--f0-range", f0_range, "pitch search range: lo,hi (Hz)");
    app.add_option("--voicing-threshold", voicing, "harmonic energy ratio for voicing");
    app.add_option("--slope-threshold", slope, "trend slope threshold (Hz/s)");
    app.add_option("--curvature-threshold", curvature, "convex-up curvature threshold (Hz/s^2)");
    app.add_option("--jump-threshold", jump, "segmentation jump threshold (Hz)");
    app.add_option("--accept-threshold", accept, "minimum classification score");
    app.add_option("--templates", templates, "vowel template table (TSV)");
  }

  vp::AnalysisConfig config() const {
    vp::AnalysisConfig c;
    if (!bands.empty()) {
      auto b = parse_list(bands, 4, "--bands");
      c.bands.lower = {b[0], b[1]};
      c.bands.upper = {b[2], b[3]};
    }
    if (frame) c.frame.frame_length = *frame;
    if (hop) c.frame.hop_length = *hop;
    if (!window.empty()) c.frame.window = vp::parse_window(window);
    if (!f0_range.empty()) {
      auto r = parse_list(f0_range, 2, "--f0-range");
      c.pitch.f0_min = r[0];
      c.pitch.f0_max = r[1];
    }
    if (voicing) c.pitch.voicing_threshold = *voicing;
    if (slope) c.trend.slope_threshold = *slope;
    if (curvature) c.trend.curvature_threshold = *curvature;
    if (jump) c.segmentation.jump_threshold = *jump;
    if (accept) c.classifier.accept_threshold = *accept;
    return c;
  }

  std::vector<vp::VowelTemplate> template_set() const {
    return templates.empty() ? vp::builtin_templates() : vp::load_templates(templates);
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw vp::Error(vp::ErrorCode::kIoFailure, "cannot open " + path);
  out << text;
  if (!out) throw vp::Error(vp::ErrorCode::kIoFailure, "cannot write " + path);
}

vp::Analysis run_analysis(const std::string& input, const Common& common) {
  auto cfg = common.config();
  auto buffer = vp::load_wav(input);
  return vp::analyze(buffer, cfg, common.template_set());
}

std::string bracketed(const std::string& label) {
  return label == vp::kUnknownLabel ? label : "[" + label + "]";
}

std::string score_text(double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", score);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic-pattern analysis of stressed vowels"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "settings file (TOML/INI, keys mirror the long flags)")
      ->envname("VOWELPRINT_CONFIG");

  Common common;
  common.attach(app);
  std::string format = "json";
  app.add_option("--format", format, "analyze output: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "noise seed for synth");

  std::string input, output;

  auto* analyze = app.add_subcommand("analyze", "full analysis report");
  analyze->add_option("input", input, "WAV file")->required();
  analyze->add_option("-o,--output", output, "report path (stdout when omitted)");

  std::string expect, english;
  auto* classify = app.add_subcommand("classify", "classify the dominant vowel");
  classify->add_option("input", input, "WAV file")->required();
  classify->add_option("--expect", expect, "expected Russian vowel label");
  classify->add_option("--english", english, "English sound to compare against");

  auto* tracks = app.add_subcommand("tracks", "per-frame harmonic tracks as CSV");
  tracks->add_option("input", input, "WAV file")->required();
  tracks->add_option("-o,--output", output, "CSV path (stdout when omitted)");

  std::string vowel, formants_text;
  double f0 = 150.0, f0_end = -1.0, dur = 1.0, noise = 0.0;
  int rate = 16000;
  std::vector<std::string> formant_specs;
  auto* synth = app.add_subcommand("synth", "render a synthetic test signal");
  synth->add_option("output", output, "WAV path")->required();
  synth->add_option("--vowel", vowel, "render a built-in vowel");
  synth->add_option("--f0", f0, "fundamental (start) frequency, Hz");
  synth->add_option("--f0-end", f0_end, "fundamental at the end, Hz (glide)");
  synth->add_option("--dur", dur, "duration, seconds");
  synth->add_option("--rate", rate, "sample rate, Hz");
  synth->add_option("--noise", noise, "uniform noise amplitude");
  synth->add_option("--formant", formant_specs,
                    "centre,bandwidth,gain[,sweep_to[,linear|sine]] (repeatable)");

  std::string which = "all";
  auto* table = app.add_subcommand("table", "print the built-in constant tables");
  table->add_option("which", which, "templates, correspondence or all")
      ->check(CLI::IsMember({"templates", "correspondence", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (*analyze) {
      auto a = run_analysis(input, common);
      emit(format == "csv" ? vp::report_csv(a) : vp::report_to_json(a).dump(2) + "\n", output);
      return kExitOk;
    }
    if (*tracks) {
      emit(vp::tracks_csv(run_analysis(input, common)), output);
      return kExitOk;
    }
    if (*classify) {
      auto a = run_analysis(input, common);
      const auto* seg = vp::longest_voiced(a);
      if (!seg || !seg->classification) {
        throw vp::Error(vp::ErrorCode::kNoVoicedFrames, "no voiced segment in " + input);
      }
      const auto& c = *seg->classification;
      std::cout << "label=" << bracketed(c.label) << " score=" << score_text(c.score) << "\n";
      int rc = kExitOk;
      if (!expect.empty()) {
        auto want = vp::canonical_vowel(expect);
        if (!want) throw vp::Error(vp::ErrorCode::kUnknownVowel, expect);
        const bool ok = c.label == *want;
        std::cout << "expect " << bracketed(*want) << "; " << (ok ? "match" : "mismatch") << "\n";
        if (!ok) rc = kExitMismatch;
      }
      if (!english.empty()) {
        auto cmp = vp::compare_analysis(vp::whole_track(a), english, common.template_set(),
                                        a.config.classifier, a.config.segmentation,
                                        a.config.trend);
        std::string got;
        for (const auto& p : cmp.parts) got += (got.empty() ? "" : " + ") + bracketed(p.label);
        std::cout << "english [" << cmp.row.english << "]: expected " << cmp.row.expected_text()
                  << "; verdict " << vp::verdict_name(cmp.row.verdict) << "; "
                  << (cmp.match ? "match" : "mismatch") << "\n";
        std::cout << "observed " << got << "\n";
        if (!cmp.row.note.empty()) std::cout << "note: " << cmp.row.note << "\n";
        if (!cmp.match) rc = kExitMismatch;
      }
      return rc;
    }
    if (*synth) {
      vp::AudioBuffer buffer({0.0}, rate);
      if (!vowel.empty()) {
        auto spec = vp::vowel_spec(vowel, f0, dur, rate);
        if (f0_end > 0.0) spec.f0_end = f0_end;
        spec.noise_level = noise;
        spec.seed = seed;
        buffer = vp::render(spec);
      } else {
        vp::SynthSpec spec;
        spec.f0_start = f0;
        spec.f0_end = f0_end > 0.0 ? f0_end : f0;
        spec.duration = dur;
        spec.sample_rate = rate;
        spec.noise_level = noise;
        spec.seed = seed;
        for (const auto& text : formant_specs) {
          std::vector<std::string> parts;
          std::stringstream in(text);
          for (std::string item; std::getline(in, item, ',');) parts.push_back(item);
          if (parts.size() < 3 || parts.size() > 5) {
            throw vp::Error(vp::ErrorCode::kInvalidSpec, "bad --formant '" + text + "'");
          }
          std::string nums;
          for (std::size_t i = 0; i < std::min<std::size_t>(parts.size(), 4); ++i) {
            nums += (i ? "," : "") + parts[i];
          }
          auto v = parse_list(nums, std::min<std::size_t>(parts.size(), 4), "--formant");
          vp::FormantPeak p{v[0], v[1], v[2]};
          if (v.size() == 4) {
            p.sweep = parts.size() == 5 && parts[4] == "sine" ? vp::Sweep::kSine : vp::Sweep::kLinear;
            p.sweep_to = v[3];
          }
          spec.formants.push_back(p);
        }
        buffer = vp::render(spec);
      }
      vp::write_wav(buffer, output);
      return kExitOk;
    }
    if (*table) {
      if (which != "correspondence") std::cout << vp::format_templates(vp::builtin_templates());
      if (which == "all") std::cout << "\n";
      if (which != "templates") std::cout << vp::format_correspondence(vp::correspondence_table());
      return kExitOk;
    }
  } catch (const vp::Error& e) {
    std::cerr << "vowelprint: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "vowelprint: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
