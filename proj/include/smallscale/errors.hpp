// SPDX-License-Identifier: Apache-2.0
//
// smallscale - spatial fading and autocorrelation statistics for
// linear-track channel measurements
// Copyright (C) 2026 smallscale contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SMALLSCALE_ERRORS_HPP
#define SMALLSCALE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace smallscale {

/// Base class of all library errors. The subclasses map 1:1 onto the
/// C-API status values and the CLI exit codes.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// Caller misuse: bad argument combinations, null handles, wrong buffer sizes.
class UsageError : public Error {
  public:
    using Error::Error;
};

/// Input data violates a documented invariant (includes parse failures).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Numeric or statistical failure: zero variance, no signal,
/// factorization failure after maximum jitter.
class DegenerateError : public Error {
  public:
    using Error::Error;
};

/// Filesystem problems: missing input file, unwritable output path.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace smallscale

#endif
