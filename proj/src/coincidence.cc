// Copyright 2026 The qillum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>

#include "qillum/errors.h"
#include "qillum/photonsim.h"

namespace qillum {

std::uint64_t count_pair_coincidences(std::span<const TimePs> signal,
                                      std::span<const TimePs> herald,
                                      TimePs window_ps) {
  if (!std::is_sorted(signal.begin(), signal.end()) ||
      !std::is_sorted(herald.begin(), herald.end())) {
    throw ContractViolation("coincidence counting requires sorted streams");
  }
  if (window_ps < 0) throw DomainError("coincidence window must be >= 0");
  std::uint64_t count = 0;
  std::size_t i = 0;
  std::size_t k = 0;
  // Compare 2|dt| against the full width to avoid halving the window.
  while (i < signal.size() && k < herald.size()) {
    const TimePs d = signal[i] - herald[k];
    if (2 * d > window_ps) {
      ++k;  // herald too early for this and every later signal hit
    } else if (-2 * d > window_ps) {
      ++i;  // signal hit has no herald left in range
    } else {
      ++count;
      ++i;
      ++k;
    }
  }
  return count;
}

CoincidenceTable count_coincidences(const DetectorStreams& streams,
                                    double window_seconds) {
  if (!(window_seconds > 0.0) || !std::isfinite(window_seconds)) {
    throw DomainError("coincidence window must be > 0");
  }
  const auto window_ps =
      static_cast<TimePs>(std::llround(window_seconds * 1e12));
  const auto& herald = streams[kHeraldDetector - 1].timestamps;
  CoincidenceTable table;
  table.heralds = herald.size();
  for (std::size_t j = 0; j < 4; ++j) {
    const auto& ts = streams[j].timestamps;
    table.singles[j] = ts.size();
    table.coincidences[j] = count_pair_coincidences(ts, herald, window_ps);
  }
  return table;
}

}  // namespace qillum
