// Copyright 2026 The Frame Lab Authors. All Rights Reserved.
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

#include "frame_lab/erasure.hpp"

#include <limits>
#include <numeric>

namespace frame_lab {

ErasureSet make_erasure_set(std::vector<Index> indices, Index count) {
  std::sort(indices.begin(), indices.end());
  ErasureSet set{std::move(indices)};
  detail::check_set(set, count);
  return set;
}

std::uint64_t binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (Index i = 1; i <= k; ++i) {
    const auto num = static_cast<std::uint64_t>(n - k + i);
    // r * num / i is exact since r * num is divisible by i at every step
    if (r > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

std::vector<ErasureSet> enumerate_erasure_sets(Index count, Index m) {
  std::vector<ErasureSet> out;
  if (m < 0 || m > count) return out;
  out.reserve(static_cast<std::size_t>(binomial(count, m)));
  std::vector<Index> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), Index(0));
  while (true) {
    out.push_back(ErasureSet{idx});
    Index pos = m - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == count - m + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (Index k = pos + 1; k < m; ++k) idx[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k - 1)] + 1;
  }
  return out;
}

const char* to_string(MeasureKind kind) { return kind == MeasureKind::kSpectral ? "spectral" : "norm"; }

MeasureKind measure_kind_from_string(const std::string& s) {
  if (s == "spectral") return MeasureKind::kSpectral;
  if (s == "norm") return MeasureKind::kNorm;
  throw Error(ErrorCode::kInvalidArgument, "unknown measure '" + s + "'");
}

ErasureSet sample_erasure_set(const ProbabilityProfile& profile, Index m, Rng& rng) {
  const Index count = profile.count();
  if (m < 0 || m > count) throw Error(ErrorCode::kInsufficientSupport, "erasure count exceeds frame size");
  std::vector<Index> available(static_cast<std::size_t>(count));
  std::iota(available.begin(), available.end(), Index(0));
  std::vector<Index> chosen;
  chosen.reserve(static_cast<std::size_t>(m));
  for (Index draw = 0; draw < m; ++draw) {
    double mass = 0;
    for (Index i : available) mass += profile.probability(i);
    std::size_t pick = 0;
    if (mass > 0) {
      const double u = rng.uniform() * mass;
      double acc = 0;
      pick = available.size();
      for (std::size_t k = 0; k < available.size(); ++k) {
        const double p = profile.probability(available[k]);
        if (p <= 0) continue;
        acc += p;
        if (u < acc) {
          pick = k;
          break;
        }
      }
      // round-off at the top end: fall back to the last index with positive mass
      if (pick == available.size()) {
        for (std::size_t k = available.size(); k-- > 0;)
          if (profile.probability(available[k]) > 0) {
            pick = k;
            break;
          }
      }
    } else {
      pick = static_cast<std::size_t>(rng.below(available.size()));
    }
    chosen.push_back(available[pick]);
    available.erase(available.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  std::sort(chosen.begin(), chosen.end());
  return ErasureSet{std::move(chosen)};
}

}  // namespace frame_lab
