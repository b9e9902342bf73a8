// Copyright 2026 The synclouvain Authors.
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

// Command-line front end: detect, generate, bench, amdahl.
//
// Exit codes: 0 success, 2 input error, 3 internal contract breach.

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "synclouvain/perf.hpp"

namespace synclouvain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitContract = 3;

inline constexpr const char* kThreadsEnv = "SYNCLOUVAIN_THREADS";

struct Hooks {
  // Environment lookup; defaults to std::getenv.
  std::function<std::optional<std::string>(const std::string&)> getenv;
  // Replaces the detector inside `bench` (test doubles).
  std::function<RunOutcome(const Graph&, const RunConfig&)> bench_runner;
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            const Hooks& hooks = {});

}  // namespace synclouvain::cli
