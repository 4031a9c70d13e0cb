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


#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "vowelprint/error.hpp"
#include "vowelprint/pipeline.hpp"
#include "vowelprint/synth.hpp"

using namespace vowelprint;

TEST_CASE("render basics") {
  SynthSpec s;
  s.duration = 0.25;
  auto quiet = render(s);
  CHECK(quiet.size() == 4000);
  for (double v : quiet.samples()) CHECK(v == 0.0);

  s.formants = {{450, 100, 1.0}};
  s.noise_level = 0.1;
  s.seed = 77;
  auto a = render(s), b = render(s);
  CHECK(std::equal(a.samples().begin(), a.samples().end(), b.samples().begin()));
  double peak = 0.0;
  for (double v : a.samples()) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(0.9));
  s.seed = 78;
  auto c = render(s);
  CHECK_FALSE(std::equal(a.samples().begin(), a.samples().end(), c.samples().begin()));
}

TEST_CASE("spec validation") {
  SynthSpec s;
  s.f0_start = 0;
  CHECK_THROWS_AS(render(s), Error);
  s.f0_start = 2001;  // above Nyquist/4 at 16 kHz
  CHECK_THROWS_AS(render(s), Error);
  s = {};
  s.duration = 0;
  CHECK_THROWS_AS(render(s), Error);
  s = {};
  s.formants = {{9000, 100, 1.0}};
  CHECK_THROWS_AS(render(s), Error);
  try {
    render_vowel("q", 150, 0.5, 16000);
    FAIL("expected UnknownVowel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownVowel);
  }
}

TEST_CASE("harmonic amplitudes follow the formant envelope") {
  SynthSpec s;
  s.f0_start = s.f0_end = 130.0;
  s.duration = 0.5;
  s.formants = {{500, 150, 1.0}, {1500, 200, 0.7}};
  auto buf = render(s);
  std::vector<double> x(buf.samples().begin() + 2000, buf.samples().begin() + 2000 + 4096);
  auto spec = vptest::frame_spectrum(x, 16000);
  std::vector<double> want, got;
  for (int k = 1; k * 130.0 < 2500; ++k) {
    double a = 0.0;
    for (const auto& p : s.formants) {
      const double d = k * 130.0 - p.center;
      a += p.gain * std::exp(-d * d / (2 * p.bandwidth * p.bandwidth));
    }
    auto pk = pick_peaks(spec, k * 130.0 - 20, k * 130.0 + 20, 1);
    want.push_back(a);
    got.push_back(pk.empty() ? 0.0 : pk[0].intensity);
  }
  const double want_max = *std::max_element(want.begin(), want.end());
  const double got_max = *std::max_element(got.begin(), got.end());
  for (std::size_t k = 0; k < want.size(); ++k) {
    if (want[k] < 0.05 * want_max) continue;
    CAPTURE(k + 1);
    CHECK(got[k] / got_max == doctest::Approx(want[k] / want_max).epsilon(0.05));
  }
}

TEST_CASE("one formant at 450 Hz is found as low1") {
  SynthSpec s;
  s.f0_start = s.f0_end = 150;
  s.duration = 0.5;
  s.formants = {{450, 100, 1.0}};
  auto a = analyze(render(s));
  REQUIRE(!a.frames.empty());
  for (const auto& f : a.frames) {
    REQUIRE(f.harmonics.low1);
    CHECK(std::abs(f.harmonics.low1->frequency - 450) <= 3.91);
  }
}

TEST_CASE("vowel renders") {
  auto o = analyze(render_vowel("o", 150, 0.5, 16000));
  REQUIRE(o.segments.size() == 1);
  REQUIRE(o.segments[0].classification);
  CHECK(o.segments[0].classification->label == "o");

  auto y = analyze(render_vowel("ы", 150, 1.0, 16000));
  auto track = whole_track(y);
  REQUIRE(track.trend_up1);
  CHECK(*track.trend_up1 == Trend::kConvexUp);

  auto spec = vowel_spec("э", 200, 1.0, 16000);
  CHECK(spec.f0_start == 200);
  CHECK(spec.formants.size() >= 4);
}
