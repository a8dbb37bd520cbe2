// Copyright 2026 The hyperent Authors
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

#include <stdexcept>
#include <string>

namespace hyperent {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates an operation precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Arithmetic guard tripped: the requested quantity is undefined for the
/// given input. The CLI maps this family to exit code 3.
class NumericalGuard : public Error {
 public:
  using Error::Error;
};

class ZeroNorm : public NumericalGuard {
 public:
  ZeroNorm() : NumericalGuard("ket norm is below 1e-14; cannot normalize") {}
};

class DegenerateSpectrum : public NumericalGuard {
 public:
  explicit DegenerateSpectrum(double k)
      : NumericalGuard("lambda spectrum is degenerate (|k| = " +
                       std::to_string(k) +
                       " <= 1e-10); eigen-route renormalization undefined") {}
};

class FamilyMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotNormalized : public InvalidArgument {
 public:
  explicit NotNormalized(double norm)
      : InvalidArgument("state is not normalized (norm = " +
                        std::to_string(norm) + ")") {}
};

class OutOfRange : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ExcitedInput : public InvalidArgument {
 public:
  ExcitedInput()
      : InvalidArgument(
            "absorption channel is defined on ground-state factors only; "
            "input carries an excited internal label") {}
};

class WrongKind : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NotADistribution : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ComplexAmplitudes : public InvalidArgument {
 public:
  ComplexAmplitudes()
      : InvalidArgument(
            "lambda matrices require real absorption amplitudes "
            "(imaginary part above 1e-14)") {}
};

class InvalidAmplitudes : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace hyperent
