// Copyright 2026 The ecsim Authors
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

#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace ecsim {

using WarningHandler = std::function<void(const std::string&)>;

/// Reports a non-fatal numerical condition (truncation, fidelity
/// discrepancy, optimizer non-convergence). Thread-safe.
void warn(const std::string& message);

/// Replaces the sink; an empty handler restores the default (stderr).
void set_warning_handler(WarningHandler handler);

/// Number of warnings issued since the last reset.
std::size_t warning_count();
void reset_warning_count();

}  // namespace ecsim
