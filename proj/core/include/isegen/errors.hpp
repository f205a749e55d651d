/*
Copyright 2026 The isegen Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace isegen {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class DfgErrorKind {
    CycleDetected,
    UnknownNodeRef,
    MissingLatency,
    DuplicateEdge,
    DuplicateNode,
    BadStructure,
};

/// Graph validation failure. Carries the originating file/line when the
/// graph came from a file, so the CLI can emit "file:line: message".
class DfgError : public Error {
  public:
    DfgError(DfgErrorKind kind, std::string file, int line, const std::string &msg)
        : Error(format(file, line, msg)), kind_(kind), file_(std::move(file)), line_(line) {}

    DfgErrorKind kind() const { return kind_; }
    const std::string &file() const { return file_; }
    int line() const { return line_; }

  private:
    static std::string format(const std::string &file, int line, const std::string &msg) {
        if (file.empty())
            return msg;
        return file + ":" + std::to_string(line) + ": " + msg;
    }

    DfgErrorKind kind_;
    std::string file_;
    int line_;
};

/// Malformed input text (bad directive, missing field, unparsable number).
class ParseError : public Error {
  public:
    ParseError(std::string file, int line, const std::string &msg)
        : Error(file + ":" + std::to_string(line) + ": " + msg), file_(std::move(file)), line_(line) {}

    const std::string &file() const { return file_; }
    int line() const { return line_; }

  private:
    std::string file_;
    int line_;
};

/// Attempt to move a memory operation (or an otherwise frozen node)
/// between partitions.
class MemoryNodeToggle : public Error {
  public:
    using Error::Error;
};

/// The exhaustive engine refused an instance larger than its budget.
class BudgetExceeded : public Error {
  public:
    using Error::Error;
};

/// The claimed cycle savings exceed the application's total latency;
/// the inputs are inconsistent.
class SpeedupDivergence : public Error {
  public:
    using Error::Error;
};

} // namespace isegen
