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

#include "ringsim/parallel.hpp"

#include <cstdlib>
#include <string>

#include "ringsim/errors.hpp"

namespace ringsim {

std::size_t worker_count() {
  if (const char* value = std::getenv("RINGSIM_THREADS"); value != nullptr && *value != '\0') {
    std::size_t consumed = 0;
    long long parsed = 0;
    try {
      parsed = std::stoll(value, &consumed);
    } catch (const std::exception&) {
      throw ConfigError(std::string("RINGSIM_THREADS is not an integer: ") + value);
    }
    if (consumed != std::string(value).size() || parsed <= 0) {
      throw ConfigError(std::string("RINGSIM_THREADS must be a positive integer: ") + value);
    }
    return static_cast<std::size_t>(parsed);
  }
  const unsigned hardware = std::thread::hardware_concurrency();
  return hardware == 0 ? 1 : hardware;
}

}  // namespace ringsim
