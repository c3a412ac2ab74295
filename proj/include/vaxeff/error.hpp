#pragma once

#include <stdexcept>
#include <string>

namespace vaxeff {

// Invalid argument or input outside a function's domain. The CLI maps this to
// exit code 2.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The observed positive rate does not exceed the false positive rate of the
// test, so no non-negative prevalence explains the data.
class FalsePositiveParadoxError : public DomainError {
public:
    using DomainError::DomainError;
};

// Zero cases in an arm where a log-scale interval needs them.
class UndefinedLogError : public DomainError {
public:
    using DomainError::DomainError;
};

// Data that carry no information about efficacy (e.g. no control cases).
// The CLI maps this to exit code 3.
class DegenerateDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vaxeff
