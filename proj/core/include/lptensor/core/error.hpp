#pragma once

#include <stdexcept>
#include <string>

namespace lpt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape or extent mismatch between tensors, operators and selections.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Input outside the mathematical domain of an operation (p < 1, exponent
// outside (1, inf) for classification, unnormalized block, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Request the library does not support (injective domain into projective
// codomain, unknown projection kind, unknown suite name).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace lpt
