// Copyright 2026 The Phylo Authors
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
#include <stdexcept>
#include <string>

namespace phylo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input: unknown vertex ids, bad files, bad shapes.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Input parsed from text; carries a 1-based position of the offending token.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what + " (line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A structure failed a semantic check (bad evolution step, invalid E-sequence).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A vertex sequence is not an evolution; `step()` is the first failing step k,
/// meaning no edge with tail A_k and head A_{k-1} exists.
class EvolutionError : public ValidationError {
 public:
  EvolutionError(const std::string& what, std::size_t step)
      : ValidationError(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// An operation was called outside its precondition (e.g. non-phylogenetic quiver).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The library cannot decide the question exactly for this input.
class UndecidedError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial search refused to run past its configured budget.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace phylo
