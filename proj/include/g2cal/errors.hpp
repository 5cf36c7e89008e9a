#ifndef G2CAL_ERRORS_HPP
#define G2CAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace g2cal {

/// Base class for all recoverable input/usage errors raised by the library.
/// Verdicts (Infeasible, NotDefinite, NoneFound, ...) are returned as values,
/// never thrown.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class IncompatibleExtension : public Error {
public:
    using Error::Error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class DegreeMismatch : public Error {
public:
    using Error::Error;
};

class JacobiFailure : public Error {
public:
    JacobiFailure(const std::string& what, int i, int j, int k)
        : Error(what), i(i), j(j), k(k) {}
    int i, j, k;  // 1-based indices of the first violating triple
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class MixedDegree : public Error {
public:
    using Error::Error;
};

class NotCentral : public Error {
public:
    using Error::Error;
};

class NotClosed : public Error {
public:
    using Error::Error;
};

class NotClosed2Form : public Error {
public:
    using Error::Error;
};

class NotComplexStructure : public Error {
public:
    using Error::Error;
};

/// Raised when an operation requires a definite form and the input is not.
class NotDefiniteError : public Error {
public:
    using Error::Error;
};

class NotCompatible : public Error {
public:
    using Error::Error;
};

class NotPositive : public Error {
public:
    using Error::Error;
};

class ZeroOrientation : public Error {
public:
    using Error::Error;
};

class SingularE : public Error {
public:
    using Error::Error;
};

class ResidualTooLarge : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class UnknownName : public Error {
public:
    using Error::Error;
};

class NotApplicableError : public Error {
public:
    using Error::Error;
};

}  // namespace g2cal

#endif
