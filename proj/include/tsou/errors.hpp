#pragma once

#include <stdexcept>
#include <string>

namespace tsou {

//! Invalid parameters or configuration. Maps to CLI exit code 2.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

//! A quadrature, inversion or rejection loop failed to converge. Exit code 3.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! Valid request outside what the library implements (e.g. d > 1 inversion).
class UnsupportedOperation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace tsou
