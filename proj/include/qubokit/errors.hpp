// Copyright 2026 The qubokit Authors.
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qubokit {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad sizes, malformed models,
/// inconsistent parameters, unreadable instance files).
class ValidationError : public Error {
 public:
    using Error::Error;
};

/// Vector length does not match the model dimension.
class DimensionError : public ValidationError {
 public:
    using ValidationError::ValidationError;
};

/// HUBO term order is beyond what an operation supports.
class UnsupportedOrderError : public ValidationError {
 public:
    using ValidationError::ValidationError;
};

/// Problem is too large for the requested exact method.
class CapacityError : public Error {
 public:
    using Error::Error;
};

/// Numerical routine could not produce a usable result.
class NumericalError : public Error {
 public:
    using Error::Error;
};

/// Filesystem or stream failure; the message carries the path.
class IoError : public Error {
 public:
    using Error::Error;
};

}  // namespace qubokit
