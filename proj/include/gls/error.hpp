// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace gls {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Exponent outside the integrability interval of a model.
class RangeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Root bracket whose endpoints do not straddle the target.
class BracketError : public Error {
public:
    using Error::Error;
};

/// A declared monotonicity contract was observed to be violated.
class ContractError : public Error {
public:
    using Error::Error;
};

/// An objective or integrand produced no usable (finite) values.
class EvaluationError : public Error {
public:
    using Error::Error;
};

}  // namespace gls
