// Copyright 2026 The qrv Authors
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

#include "qrv/numeric_policy.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace qrv {

void NumericPolicy::check_dim(std::size_t dim, const std::string& what) const {
  if (dim > max_dim) {
    throw InvalidArgument(what + ": dimension " + std::to_string(dim) +
                          " exceeds the configured cap " +
                          std::to_string(max_dim));
  }
}

NumericPolicy policy_from_environment() {
  NumericPolicy policy;
  if (const char* env = std::getenv("QRV_MAX_DIM"); env != nullptr) {
    std::size_t value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc() || ptr != end || value == 0) {
      throw InvalidArgument("QRV_MAX_DIM must be a positive integer, got '" +
                            std::string(env) + "'");
    }
    policy.max_dim = value;
  }
  return policy;
}

}  // namespace qrv
