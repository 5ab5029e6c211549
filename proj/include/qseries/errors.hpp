// qseries: certified evaluation and verification of q-series identities
// Copyright 2026 The qseries Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qseries {

// Parameter point outside an operation's domain (named condition in what()).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A 0/0 or inf/inf collision inside a term; signals an invalid parameter point.
class IndeterminateError : public std::runtime_error {
public:
    explicit IndeterminateError(const std::string& msg) : std::runtime_error(msg) {}
};

// A finite-family display hit a pole; carries the offending factor.
class InvalidInstance : public std::runtime_error {
public:
    explicit InvalidInstance(const std::string& msg) : std::runtime_error(msg) {}
};

// Certification could not be reached within the term budget.
class MaxTermsExceeded : public std::runtime_error {
public:
    explicit MaxTermsExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Rejection sampling gave up.
class SamplingExhausted : public std::runtime_error {
public:
    explicit SamplingExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qseries
