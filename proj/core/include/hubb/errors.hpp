// Copyright 2026 The Hubb Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace hubb {

// Raised when a request exceeds a hard resource cap (qubit count of the
// statevector simulator, enumeration size of the brute-force scanner, or a
// configured solver budget). Callers that map errors to process exit codes
// treat this differently from plain bad input.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hubb
