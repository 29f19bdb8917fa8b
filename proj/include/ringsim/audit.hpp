/*
 * Copyright 2026 The ringsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ringsim {

/// mt19937_64 with a fixed bit-to-double mapping, so draws match across
/// standard libraries.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

struct AuditRecord {
  std::string identity;
  std::size_t samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;

  bool passed() const { return max_residual <= tolerance; }
};

struct AuditReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<AuditRecord> records;

  bool passed() const;
};

/// Evaluates every shipped identity on `samples` random parameter points.
AuditReport run_audit(std::uint64_t seed, std::size_t samples);

/// "identity,samples,max_residual,tolerance,status" lines under a header.
std::string render_audit_csv(const AuditReport& report);

}  // namespace ringsim
