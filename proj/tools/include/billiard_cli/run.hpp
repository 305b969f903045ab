// Copyright 2026 The billiard-prop Authors
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

#include <exception>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "billiard/error.hpp"
#include "billiard_cli/config.hpp"

namespace billiard::cli {

class IoError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char *kind() const noexcept override {
        return "IoError";
    }
};

enum ExitCode : int {
    kExitOk = 0,
    kExitInternal = 1,
    kExitUsage = 2,
    kExitParse = 3,
    kExitValidation = 4,
    kExitNonConvergent = 5,
    kExitOverflow = 6,
    kExitQuadrature = 7,
    kExitIo = 8,
};

[[nodiscard]] int exit_code(const std::exception &e) noexcept;

/// One line, `error kind=... code=... [line=... key=...] message="..."`.
[[nodiscard]] std::string error_line(const std::exception &e);

struct RunResult {
    std::vector<std::filesystem::path> files;
};

/// Runs config.scenario and writes its CSV files into out_dir (created if
/// missing). Progress goes to `log` when non-null.
RunResult run(const RunConfig &config, const std::filesystem::path &out_dir,
              std::ostream *log = nullptr);

/// Reads a config file; IoError if it cannot be opened.
[[nodiscard]] std::string read_file(const std::filesystem::path &path);

} // namespace billiard::cli
