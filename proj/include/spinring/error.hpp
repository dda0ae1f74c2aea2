#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinring {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidSpec : public Error {
public:
    using Error::Error;
};

class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class InvalidArgs : public Error {
public:
    using Error::Error;
};

class QuotientOnOddRing : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class NotEmbeddable : public Error {
public:
    using Error::Error;
};

class FactorizationFailure : public Error {
public:
    using Error::Error;
};

/// Raised when the full-space Hamiltonian, restricted to the
/// single-excitation sector, disagrees with the direct construction.
/// `row`/`col` index the full 2^n space.
class RestrictionMismatch : public Error {
public:
    RestrictionMismatch(std::size_t row, std::size_t col, double deviation)
        : Error("subspace restriction mismatch at (" + std::to_string(row) + ", " +
                std::to_string(col) + "), deviation " + std::to_string(deviation)),
          row_(row), col_(col), deviation_(deviation) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }
    double deviation() const noexcept { return deviation_; }

private:
    std::size_t row_;
    std::size_t col_;
    double deviation_;
};

}  // namespace spinring
