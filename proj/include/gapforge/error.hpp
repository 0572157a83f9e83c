// Copyright 2026 The gapforge Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace gapforge {

// Base of every error raised by the library. Precondition failures derive
// from PreconditionError so the CLI can map them to a usage exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class RangeTooLarge : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class OverflowError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class CheckpointMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

// Sign-change count disagrees with the zero-counting main term.
class MissedZero : public Error {
 public:
  using Error::Error;
};

class MissingData : public Error {
 public:
  using Error::Error;
};

}  // namespace gapforge
