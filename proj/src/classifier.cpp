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

#include "vowelprint/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "vowelprint/error.hpp"

namespace vowelprint {

std::string_view dominance_name(Dominance d) {
  return d == Dominance::kFirstOverSecond ? "first_over_second" : "second_over_first";
}

Dominance parse_dominance(std::string_view name) {
  if (name == "first_over_second") return Dominance::kFirstOverSecond;
  if (name == "second_over_first") return Dominance::kSecondOverFirst;
  throw Error(ErrorCode::kMalformedTable, "unknown dominance '" + std::string(name) + "'");
}

std::string_view up_shape_name(UpShape s) {
  switch (s) {
    case UpShape::kTwoBands: return "two_bands";
    case UpShape::kSingleBand: return "single_band";
    case UpShape::kConvexUp: return "convex_up";
    case UpShape::kSecondOverFirst: return "second_over_first";
  }
  return "two_bands";
}

UpShape parse_up_shape(std::string_view name) {
  for (UpShape s : {UpShape::kTwoBands, UpShape::kSingleBand, UpShape::kConvexUp,
                    UpShape::kSecondOverFirst}) {
    if (up_shape_name(s) == name) return s;
  }
  throw Error(ErrorCode::kMalformedTable, "unknown upper shape '" + std::string(name) + "'");
}

void VowelTemplate::validate(const BandConfig& bands) const {
  auto check = [&](const Band& r, const Band& band, const char* what) {
    if (!(r.lo < r.hi)) {
      throw Error(ErrorCode::kMalformedTable, label + ": " + what + " range needs lo < hi");
    }
    if (r.lo < band.lo || r.hi > band.hi) {
      throw Error(ErrorCode::kMalformedTable, label + ": " + what + " range outside its band");
    }
  };
  if (label.empty()) throw Error(ErrorCode::kMalformedTable, "template without label");
  check(low_range, bands.lower, "low");
  if (!up1_range) throw Error(ErrorCode::kMalformedTable, label + ": missing up1 range");
  check(*up1_range, bands.upper, "up1");
  if (up_shape == UpShape::kTwoBands) {
    if (!up2_range) throw Error(ErrorCode::kMalformedTable, label + ": two_bands needs up2");
    check(*up2_range, bands.upper, "up2");
  } else if (up2_range) {
    throw Error(ErrorCode::kMalformedTable, label + ": up2 range only valid for two_bands");
  }
}

const std::vector<VowelTemplate>& builtin_templates() {
  using D = Dominance;
  using S = UpShape;
  static const std::vector<VowelTemplate> kTemplates = {
      {"a", {200, 750}, D::kFirstOverSecond, Band{800, 900}, Band{1000, 1200}, S::kTwoBands},
      {"o", {400, 600}, D::kFirstOverSecond, Band{800, 950}, Band{1900, 2200}, S::kTwoBands},
      {"и", {200, 400}, D::kSecondOverFirst, Band{1750, 1850}, Band{2200, 2400}, S::kTwoBands},
      {"ы", {200, 400}, D::kSecondOverFirst, Band{800, 1300}, std::nullopt, S::kConvexUp},
      {"y", {300, 600}, D::kSecondOverFirst, Band{800, 1100}, std::nullopt, S::kSecondOverFirst},
      {"э", {450, 650}, D::kFirstOverSecond, Band{1550, 1700}, Band{2100, 2400}, S::kTwoBands},
  };
  return kTemplates;
}

std::optional<std::string> canonical_vowel(std::string_view label) {
  std::string s(label);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  static const std::map<std::string, std::string> kAliases = {
      {"a", "a"}, {"а", "a"}, {"o", "o"}, {"о", "o"}, {"y", "y"},
      {"у", "y"}, {"и", "и"}, {"ы", "ы"}, {"э", "э"},
  };
  auto it = kAliases.find(s);
  if (it == kAliases.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  return {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()};
}

std::string strip_comment(std::string line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  return line;
}

double parse_number(const std::string& tok, std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kMalformedTable,
                "line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  }
}

std::optional<Band> parse_range(const std::string& lo, const std::string& hi,
                                std::size_t line_no) {
  if (lo == "-" && hi == "-") return std::nullopt;
  return Band{parse_number(lo, line_no), parse_number(hi, line_no)};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string format_number(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

std::vector<VowelTemplate> parse_templates(std::string_view text) {
  std::vector<VowelTemplate> out;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    auto tok = split_ws(strip_comment(line));
    if (tok.empty()) continue;
    if (tok.size() != 9) {
      throw Error(ErrorCode::kMalformedTable,
                  "line " + std::to_string(line_no) + ": expected 9 fields");
    }
    VowelTemplate t;
    t.label = tok[0];
    auto low = parse_range(tok[1], tok[2], line_no);
    if (!low) throw Error(ErrorCode::kMalformedTable, t.label + ": low range required");
    t.low_range = *low;
    t.up1_range = parse_range(tok[3], tok[4], line_no);
    t.up2_range = parse_range(tok[5], tok[6], line_no);
    t.low_dominance = parse_dominance(tok[7]);
    t.up_shape = parse_up_shape(tok[8]);
    t.validate();
    out.push_back(std::move(t));
  }
  if (out.empty()) throw Error(ErrorCode::kMalformedTable, "no templates");
  return out;
}

std::vector<VowelTemplate> load_templates(const std::filesystem::path& path) {
  return parse_templates(read_file(path));
}

std::string format_templates(const std::vector<VowelTemplate>& templates) {
  std::ostringstream out;
  out << "# label\tlow_lo\tlow_hi\tup1_lo\tup1_hi\tup2_lo\tup2_hi\tlow_dominance\tup_shape\n";
  auto range = [](const std::optional<Band>& b) {
    return b ? format_number(b->lo) + "\t" + format_number(b->hi) : std::string("-\t-");
  };
  for (const auto& t : templates) {
    out << t.label << '\t' << range(t.low_range) << '\t' << range(t.up1_range) << '\t'
        << range(t.up2_range) << '\t' << dominance_name(t.low_dominance) << '\t'
        << up_shape_name(t.up_shape) << '\n';
  }
  return out.str();
}

std::size_t ClassificationResult::passed() const {
  return static_cast<std::size_t>(std::count_if(per_criterion.begin(), per_criterion.end(),
                                                [](const Criterion& c) { return c.passed; }));
}

namespace {

bool in_range(const std::optional<SpectralPeak>& p, const Band& r, double tol) {
  return p && p->frequency >= r.lo - tol && p->frequency <= r.hi + tol;
}

// The strongest harmonic is "first"; "first over second" means it lies above
// the second-strongest one in frequency.
bool dominance_holds(const std::optional<SpectralPeak>& first,
                     const std::optional<SpectralPeak>& second, Dominance d) {
  if (!first || !second) return false;
  return d == Dominance::kFirstOverSecond ? first->frequency > second->frequency
                                          : second->frequency > first->frequency;
}

std::vector<Criterion> evaluate(const FrameHarmonics& fh, const VowelTemplate& t,
                                const ClassifierConfig& cfg, bool with_shape,
                                std::optional<Trend> trend) {
  const double tol = cfg.range_tolerance_hz;
  std::vector<Criterion> c;
  c.push_back({"low_range", in_range(fh.low1, t.low_range, tol)});
  c.push_back({"low_dominance", dominance_holds(fh.low1, fh.low2, t.low_dominance)});
  c.push_back({"up1_range", t.up1_range && in_range(fh.up1, *t.up1_range, tol)});
  switch (t.up_shape) {
    case UpShape::kTwoBands:
      c.push_back({"up2_range", t.up2_range && in_range(fh.up2, *t.up2_range, tol)});
      break;
    case UpShape::kSecondOverFirst:
      c.push_back({"up_dominance", dominance_holds(fh.up1, fh.up2, Dominance::kSecondOverFirst)});
      break;
    case UpShape::kConvexUp:
      if (with_shape) c.push_back({"up_shape", trend == Trend::kConvexUp});
      break;
    case UpShape::kSingleBand:
      break;
  }
  return c;
}

ClassificationResult classify_impl(const FrameHarmonics& fh,
                                   const std::vector<VowelTemplate>& templates,
                                   const ClassifierConfig& cfg, bool with_shape,
                                   std::optional<Trend> trend) {
  if (!fh.voiced) throw Error(ErrorCode::kUnvoicedFrame, "classification needs a voiced frame");
  ClassificationResult best;
  bool have = false;
  for (const auto& t : templates) {
    ClassificationResult r;
    r.per_criterion = evaluate(fh, t, cfg, with_shape, trend);
    r.template_label = t.label;
    r.score = r.per_criterion.empty()
                  ? 0.0
                  : static_cast<double>(r.passed()) / static_cast<double>(r.per_criterion.size());
    // Strictly better only: earlier templates win exact ties.
    if (!have || r.score > best.score || (r.score == best.score && r.passed() > best.passed())) {
      best = std::move(r);
      have = true;
    }
  }
  best.label = have && best.score >= cfg.accept_threshold ? best.template_label
                                                          : std::string(kUnknownLabel);
  return best;
}

}  // namespace

ClassificationResult classify_frame(const FrameHarmonics& fh,
                                    const std::vector<VowelTemplate>& templates,
                                    const ClassifierConfig& cfg, std::optional<Trend> trend) {
  return classify_impl(fh, templates, cfg, trend.has_value(), trend);
}

ClassificationResult classify_segment(const BandTrack& track,
                                      const std::vector<VowelTemplate>& templates,
                                      const ClassifierConfig& cfg) {
  std::vector<ClassificationResult> frames;
  for (const auto& fh : track.frames) {
    if (fh.voiced) frames.push_back(classify_impl(fh, templates, cfg, true, track.trend_up1));
  }
  if (frames.empty()) throw Error(ErrorCode::kNoVoicedFrames, "segment has no voiced frames");

  // Candidates in template order, "unknown" last so known labels win ties.
  std::vector<std::string> order;
  for (const auto& t : templates) order.push_back(t.label);
  order.emplace_back(kUnknownLabel);
  std::string winner;
  std::size_t winner_votes = 0;
  for (const auto& label : order) {
    const auto votes = static_cast<std::size_t>(std::count_if(
        frames.begin(), frames.end(), [&](const auto& r) { return r.label == label; }));
    if (votes > winner_votes) {
      winner = label;
      winner_votes = votes;
    }
  }

  ClassificationResult out;
  out.label = winner;
  double sum = 0.0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // passed, seen
  std::vector<std::string> names;
  for (const auto& r : frames) {
    if (r.label != winner) continue;
    sum += r.score;
    if (out.template_label.empty()) out.template_label = r.template_label;
    for (const auto& c : r.per_criterion) {
      if (!tally.contains(c.name)) names.push_back(c.name);
      auto& [passed, seen] = tally[c.name];
      passed += c.passed ? 1 : 0;
      seen += 1;
    }
  }
  out.score = sum / static_cast<double>(winner_votes);
  for (const auto& name : names) {
    const auto [passed, seen] = tally[name];
    out.per_criterion.push_back({name, 2 * passed > seen});
  }
  return out;
}

std::string_view context_name(Context c) {
  switch (c) {
    case Context::kHardHard: return "hard_hard";
    case Context::kHardSoft: return "hard_soft";
    case Context::kSoftHard: return "soft_hard";
    case Context::kSoftSoft: return "soft_soft";
  }
  return "hard_hard";
}

std::string_view position_trend_name(PositionTrend t) {
  switch (t) {
    case PositionTrend::kReduced: return "reduced";
    case PositionTrend::kRising: return "rising";
    case PositionTrend::kFalling: return "falling";
    case PositionTrend::kElevated: return "elevated";
  }
  return "reduced";
}

const std::vector<PositionPattern>& position_patterns() {
  static const std::vector<PositionPattern> kPatterns = {
      {Context::kHardHard, PositionTrend::kReduced},
      {Context::kHardSoft, PositionTrend::kRising},
      {Context::kSoftHard, PositionTrend::kFalling},
      {Context::kSoftSoft, PositionTrend::kElevated},
  };
  return kPatterns;
}

PositionPattern position_pattern(const BandTrack& track, const VowelTemplate& reference) {
  if (!track.trend_up1 || !track.up1_mean) {
    throw Error(ErrorCode::kTrendUnavailable, "fewer than 3 voiced frames with up1");
  }
  const auto& p = position_patterns();
  switch (*track.trend_up1) {
    case Trend::kRising: return p[1];
    case Trend::kFalling: return p[2];
    case Trend::kFlat:
    case Trend::kConvexUp: break;
  }
  if (!reference.up1_range) {
    throw Error(ErrorCode::kInvalidConfig, reference.label + " has no upper range");
  }
  return *track.up1_mean > reference.up1_range->mid() ? p[3] : p[0];
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kClear: return "clear";
    case Verdict::kUnclear: return "unclear";
    case Verdict::kNone: return "none";
  }
  return "unclear";
}

Verdict parse_verdict(std::string_view name) {
  for (Verdict v : {Verdict::kClear, Verdict::kUnclear, Verdict::kNone}) {
    if (verdict_name(v) == name) return v;
  }
  throw Error(ErrorCode::kMalformedTable, "unknown verdict '" + std::string(name) + "'");
}

std::string CorrespondenceRow::expected_text() const {
  std::string out;
  for (std::size_t i = 0; i < expected_russian.size(); ++i) {
    if (i) out += " + ";
    for (std::size_t j = 0; j < expected_russian[i].size(); ++j) {
      if (j) out += "/";
      out += "[" + expected_russian[i][j] + "]";
    }
  }
  return out;
}

const std::vector<CorrespondenceRow>& correspondence_table() {
  using V = Verdict;
  static const std::vector<CorrespondenceRow> kRows = {
      {"a:", {{"a"}}, V::kClear, "Clear resemblance."},
      {"ɔ:", {{"o"}}, V::kClear, "Clear resemblance."},
      {"i:", {{"и"}}, V::kClear, "Clear resemblance."},
      {"u:", {{"y"}}, V::kUnclear,
       "Resemblance unclear. The values in the upper range are overestimated."},
      {"ə:", {{"o", "э"}}, V::kUnclear,
       "Resemblance to the values obtained, but divergence from the \"book model\"."},
      {"i", {{"и"}}, V::kClear, "Clear resemblance."},
      {"u", {{"y"}}, V::kUnclear,
       "Resemblance unclear. The values in the lower range are overestimated."},
      {"ʌ", {{"a"}}, V::kUnclear,
       "Resemblance unclear. The harmonics in the lower range are ambiguous."},
      {"ɒ", {{"o"}}, V::kClear, "Clear resemblance."},
      {"ə", {{"э", "o", "a"}}, V::kNone, "No resemblance."},
      {"e", {{"э"}}, V::kUnclear,
       "Resemblance unclear. The harmonics in the lower range are ambiguous and the values are "
       "underestimated."},
      {"æ", {{"э"}}, V::kClear, "Clear resemblance."},
      {"iə", {{"и"}, {"э", "a"}}, V::kUnclear,
       "Resemblance unclear. The sound looks like a merge of [и] and [э], not a "
       "transition from one sound to the other."},
      {"uə", {{"y"}, {"э"}}, V::kUnclear,
       "Resemblance unclear. The harmonics in the lower range are ambiguous."},
      {"ai", {{"a"}, {"и"}}, V::kClear, "Clear resemblance."},
      {"ɔi", {{"o"}, {"и"}}, V::kClear, "Clear resemblance."},
      {"əu", {{"э", "o"}, {"y"}}, V::kUnclear,
       "Resemblance unclear. Sound looks more like [o], than [y]."},
  };
  return kRows;
}

const CorrespondenceRow& correspondence(std::string_view english_label) {
  std::string s(english_label);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  for (const auto& row : correspondence_table()) {
    if (row.english == s) return row;
  }
  throw Error(ErrorCode::kUnknownSound, "no correspondence row for [" + s + "]");
}

std::vector<CorrespondenceRow> parse_correspondence(std::string_view text) {
  std::vector<CorrespondenceRow> out;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (line.empty() || line[0] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::istringstream fs(line);
    for (std::string f; std::getline(fs, f, '\t');) fields.push_back(f);
    if (fields.size() != 4) {
      throw Error(ErrorCode::kMalformedTable,
                  "line " + std::to_string(line_no) + ": expected 4 tab-separated fields");
    }
    CorrespondenceRow row;
    row.english = fields[0];
    std::istringstream parts(fields[1]);
    for (std::string part; std::getline(parts, part, '+');) {
      std::vector<std::string> alts;
      std::istringstream as(part);
      for (std::string alt; std::getline(as, alt, '/');) {
        auto v = canonical_vowel(alt);
        if (!v) {
          throw Error(ErrorCode::kMalformedTable,
                      "line " + std::to_string(line_no) + ": unknown vowel '" + alt + "'");
        }
        alts.push_back(*v);
      }
      row.expected_russian.push_back(std::move(alts));
    }
    row.verdict = parse_verdict(fields[2]);
    row.note = fields[3];
    out.push_back(std::move(row));
  }
  if (out.empty()) throw Error(ErrorCode::kMalformedTable, "no correspondence rows");
  return out;
}

std::vector<CorrespondenceRow> load_correspondence(const std::filesystem::path& path) {
  return parse_correspondence(read_file(path));
}

std::string format_correspondence(const std::vector<CorrespondenceRow>& rows) {
  std::ostringstream out;
  out << "# english\texpected\tverdict\tnote\n";
  for (const auto& r : rows) {
    out << r.english << '\t';
    for (std::size_t i = 0; i < r.expected_russian.size(); ++i) {
      if (i) out << '+';
      for (std::size_t j = 0; j < r.expected_russian[i].size(); ++j) {
        if (j) out << '/';
        out << r.expected_russian[i][j];
      }
    }
    out << '\t' << verdict_name(r.verdict) << '\t' << r.note << '\n';
  }
  return out.str();
}

ComparisonReport compare_analysis(const BandTrack& track, std::string_view english_label,
                                  const std::vector<VowelTemplate>& templates,
                                  const ClassifierConfig& cfg, const SegmentParams& seg,
                                  const TrendConfig& trend) {
  ComparisonReport report;
  report.row = correspondence(english_label);
  std::vector<std::size_t> voiced;
  for (std::size_t i = 0; i < track.frames.size(); ++i) {
    if (track.frames[i].voiced) voiced.push_back(i);
  }
  if (voiced.empty()) throw Error(ErrorCode::kNoVoicedFrames, "track has no voiced frames");

  auto classify_or_unknown = [&](std::size_t from, std::size_t to) {
    std::vector<FrameHarmonics> part(track.frames.begin() + static_cast<std::ptrdiff_t>(from),
                                     track.frames.begin() + static_cast<std::ptrdiff_t>(to));
    auto sub = band_track(std::move(part), track.hop_seconds, trend);
    try {
      return classify_segment(sub, templates, cfg);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoVoicedFrames) throw;
      return ClassificationResult{};
    }
  };

  if (!report.row.diphthong()) {
    report.parts.push_back(classify_segment(track, templates, cfg));
  } else {
    const std::size_t first = voiced.front();
    const std::size_t end = voiced.back() + 1;
    std::size_t split = voiced[voiced.size() / 2];
    for (std::size_t b : dynamics_boundaries(track.frames, first, end, seg)) {
      if (b > first && b < end) {
        split = b;
        break;
      }
    }
    if (split <= first) split = first + 1;
    report.split_frame = split;
    report.parts.push_back(classify_or_unknown(first, split));
    report.parts.push_back(classify_or_unknown(split, end));
  }

  report.match = report.parts.size() == report.row.expected_russian.size();
  for (std::size_t i = 0; report.match && i < report.parts.size(); ++i) {
    const auto& alts = report.row.expected_russian[i];
    report.match = std::find(alts.begin(), alts.end(), report.parts[i].label) != alts.end();
  }
  return report;
}

}  // namespace vowelprint
