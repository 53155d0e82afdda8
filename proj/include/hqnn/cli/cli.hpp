// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hqnn::cli {

inline constexpr std::string_view kToolName = "hqnn-dse";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Exit codes: 0 success, 1 usage, 2 data, 3 integrity.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitIntegrity = 3;

/// Runs one CLI invocation; `args` excludes the program name. All commands
/// write a manifest (effective options, seeds, tool version) next to their
/// outputs. The HQNN_DSE_SEED environment variable overrides the base seed
/// of `run` and `grid`.
int dispatch(const std::vector<std::string>& args);

} // namespace hqnn::cli
