// Copyright 2026 The rwq Authors
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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rwq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position()` is the byte offset of the
/// offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A value outside the domain of an operation (bad choose threshold,
/// non-positive capacity, malformed workload, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UniverseTooLarge : public Error {
 public:
  UniverseTooLarge(std::size_t size, std::size_t bound)
      : Error("universe of " + std::to_string(size) +
              " nodes exceeds the enumeration bound of " +
              std::to_string(bound)) {}
};

class UnknownNode : public Error {
 public:
  explicit UnknownNode(const std::string& name)
      : Error("expression refers to unknown node '" + name + "'"),
        name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// A read quorum and a write quorum that do not intersect.
class IntersectionViolation : public Error {
 public:
  IntersectionViolation(std::vector<std::string> read,
                        std::vector<std::string> write)
      : Error("read quorum " + Render(read) +
              " does not intersect write quorum " + Render(write)),
        read_(std::move(read)),
        write_(std::move(write)) {}

  const std::vector<std::string>& read_quorum() const noexcept {
    return read_;
  }
  const std::vector<std::string>& write_quorum() const noexcept {
    return write_;
  }

 private:
  static std::string Render(const std::vector<std::string>& names) {
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i > 0) out += ",";
      out += names[i];
    }
    return out + "}";
  }

  std::vector<std::string> read_;
  std::vector<std::string> write_;
};

class NoResilientQuorum : public Error {
 public:
  using Error::Error;
};

/// The optimization constraints cannot be satisfied.
class Infeasible : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

class NoFeasibleCandidate : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration document.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace rwq
