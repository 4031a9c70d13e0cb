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

#ifndef VOWELPRINT_CLASSIFIER_HPP_
#define VOWELPRINT_CLASSIFIER_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vowelprint/harmonics.hpp"

namespace vowelprint {

/// Which of the two strongest harmonics of a band lies higher in frequency
/// ("first over second": the strongest one does).
enum class Dominance { kFirstOverSecond, kSecondOverFirst };

/// Structure of the upper-band rule of a template.
enum class UpShape {
  kTwoBands,         // separate ranges for up1 and up2
  kSingleBand,       // up1 range only
  kConvexUp,         // up1 range plus a rise-and-fall of up1 over the segment
  kSecondOverFirst,  // up1 range plus up2 above up1
};

std::string_view dominance_name(Dominance d);
Dominance parse_dominance(std::string_view name);
std::string_view up_shape_name(UpShape s);
UpShape parse_up_shape(std::string_view name);

struct VowelTemplate {
  std::string label;
  Band low_range;
  Dominance low_dominance = Dominance::kFirstOverSecond;
  std::optional<Band> up1_range;
  std::optional<Band> up2_range;
  UpShape up_shape = UpShape::kTwoBands;

  /// lo < hi for every range, ranges inside `bands`, up2 present iff two_bands.
  void validate(const BandConfig& bands = {}) const;
  friend bool operator==(const VowelTemplate&, const VowelTemplate&) = default;
};

/// The six stressed Russian vowels in rule order: a, o, и, ы, y, э.
const std::vector<VowelTemplate>& builtin_templates();

/// Accepts the rule labels plus Cyrillic а/о/у and bracketed forms ("[a]").
/// Returns the canonical label or nullopt.
std::optional<std::string> canonical_vowel(std::string_view label);

/// Whitespace-separated rows: label low_lo low_hi up1_lo up1_hi up2_lo up2_hi
/// low_dominance up_shape. "-" marks an absent range; '#' starts a comment.
std::vector<VowelTemplate> parse_templates(std::string_view text);
std::vector<VowelTemplate> load_templates(const std::filesystem::path& path);
std::string format_templates(const std::vector<VowelTemplate>& templates);

struct ClassifierConfig {
  double accept_threshold = 0.75;
  /// Measurement slack added to both ends of every template range.
  double range_tolerance_hz = 2.0;
};

struct Criterion {
  std::string name;
  bool passed = false;
  friend bool operator==(const Criterion&, const Criterion&) = default;
};

inline constexpr std::string_view kUnknownLabel = "unknown";

struct ClassificationResult {
  std::string label{kUnknownLabel};
  double score = 0.0;
  std::vector<Criterion> per_criterion;  // winning template
  std::string template_label;            // best template even when rejected

  bool known() const { return label != kUnknownLabel; }
  std::size_t passed() const;
  friend bool operator==(const ClassificationResult&, const ClassificationResult&) = default;
};

/// Scores every template; the upper-band shape criterion of convex_up
/// templates is evaluated only when `trend` is given (segment level).
/// Throws Error(kUnvoicedFrame).
ClassificationResult classify_frame(const FrameHarmonics& fh,
                                    const std::vector<VowelTemplate>& templates,
                                    const ClassifierConfig& cfg = {},
                                    std::optional<Trend> trend = std::nullopt);

/// Majority vote of per-frame labels over voiced frames; score is the mean
/// score of the winning frames. Throws Error(kNoVoicedFrames).
ClassificationResult classify_segment(const BandTrack& track,
                                      const std::vector<VowelTemplate>& templates,
                                      const ClassifierConfig& cfg = {});

enum class Context { kHardHard, kHardSoft, kSoftHard, kSoftSoft };
enum class PositionTrend { kReduced, kRising, kFalling, kElevated };

std::string_view context_name(Context c);
std::string_view position_trend_name(PositionTrend t);

struct PositionPattern {
  Context context = Context::kHardHard;
  PositionTrend expected_trend = PositionTrend::kReduced;
  friend bool operator==(const PositionPattern&, const PositionPattern&) = default;
};

/// The fixed context -> upper-range behaviour mapping, one entry per context.
const std::vector<PositionPattern>& position_patterns();

/// Guesses the consonant context from the up1 trend. Flat (and convex) tracks
/// are "reduced" or "elevated" relative to the midpoint of `reference`'s up1
/// range. Throws Error(kTrendUnavailable).
PositionPattern position_pattern(const BandTrack& track, const VowelTemplate& reference);

enum class Verdict { kClear, kUnclear, kNone };
std::string_view verdict_name(Verdict v);
Verdict parse_verdict(std::string_view name);

struct CorrespondenceRow {
  std::string english;
  /// One entry per sub-sound (two for diphthongs); each lists acceptable
  /// Russian vowels.
  std::vector<std::vector<std::string>> expected_russian;
  Verdict verdict = Verdict::kUnclear;
  std::string note;

  bool diphthong() const { return expected_russian.size() > 1; }
  /// "[a]", "[э]/[o]/[a]", "[a] + [и]"
  std::string expected_text() const;
  friend bool operator==(const CorrespondenceRow&, const CorrespondenceRow&) = default;
};

/// All 17 English-to-Russian rows.
const std::vector<CorrespondenceRow>& correspondence_table();

/// Throws Error(kUnknownSound). Brackets around the label are ignored.
const CorrespondenceRow& correspondence(std::string_view english_label);

/// Tab-separated rows: english, expected (parts joined by '+', alternatives
/// by '/'), verdict, note.
std::vector<CorrespondenceRow> parse_correspondence(std::string_view text);
std::vector<CorrespondenceRow> load_correspondence(const std::filesystem::path& path);
std::string format_correspondence(const std::vector<CorrespondenceRow>& rows);

struct ComparisonReport {
  CorrespondenceRow row;
  std::vector<ClassificationResult> parts;  // one per expected sub-sound
  std::optional<std::size_t> split_frame;   // diphthongs only
  bool match = false;
};

/// Classifies `track` (split in two for diphthongs) and checks the labels
/// against the expected Russian sounds.
/// Throws Error(kUnknownSound) or Error(kNoVoicedFrames).
ComparisonReport compare_analysis(const BandTrack& track, std::string_view english_label,
                                  const std::vector<VowelTemplate>& templates,
                                  const ClassifierConfig& cfg = {},
                                  const SegmentParams& seg = {}, const TrendConfig& trend = {});

}  // namespace vowelprint

#endif  // VOWELPRINT_CLASSIFIER_HPP_
