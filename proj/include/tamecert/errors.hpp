#pragma once

#include <stdexcept>
#include <string>

namespace tamecert {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operands live over different coefficient fields.
class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("field mismatch") {}
    explicit FieldMismatch(const std::string& what) : Error("field mismatch: " + what) {}
};

// A result would exceed the configured term budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::size_t terms, std::size_t limit, const std::string& where)
        : Error("term budget exceeded in " + where + ": " + std::to_string(terms) + " > " +
                std::to_string(limit)),
          terms_(terms),
          limit_(limit) {}

    std::size_t terms() const { return terms_; }
    std::size_t limit() const { return limit_; }

private:
    std::size_t terms_;
    std::size_t limit_;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// A certificate hop produced a polynomial outside the claimed family.
class HopFailure : public Error {
public:
    using Error::Error;
};

class ExponentOverflow : public Error {
public:
    ExponentOverflow() : Error("exponent overflow") {}
};

}  // namespace tamecert
