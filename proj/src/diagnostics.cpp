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

#include "ecsim/diagnostics.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace ecsim {
namespace {

std::mutex& handler_mutex() {
    static std::mutex m;
    return m;
}

WarningHandler& handler() {
    static WarningHandler h;
    return h;
}

std::atomic<std::size_t> g_count{0};

}  // namespace

void warn(const std::string& message) {
    ++g_count;
    std::lock_guard lock(handler_mutex());
    if (handler()) {
        handler()(message);
    } else {
        std::cerr << "warning: " << message << '\n';
    }
}

void set_warning_handler(WarningHandler h) {
    std::lock_guard lock(handler_mutex());
    handler() = std::move(h);
}

std::size_t warning_count() { return g_count.load(); }

void reset_warning_count() { g_count = 0; }

}  // namespace ecsim
