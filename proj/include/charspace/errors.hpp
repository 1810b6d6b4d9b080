#ifndef CHARSPACE_ERRORS_HPP
#define CHARSPACE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace charspace {

// Base of everything the library throws on bad input or a failed check.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A caller-supplied parameter tuple violates a stated inequality.
class ConstraintViolation : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class OrbitTooLarge : public BudgetExceeded {
public:
    using BudgetExceeded::BudgetExceeded;
};

class MoreThanTwoUnrepeated : public PreconditionViolated {
public:
    using PreconditionViolated::PreconditionViolated;
};

// A result that a theorem guarantees did not hold. Always a bug.
class InternalCheckFailed : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : Error(msg + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace charspace

#endif
