#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace flwave {

/// Failure categories. The numeric values are the CLI exit codes.
enum class ErrorCategory : int { Config = 2, Numeric = 3, Io = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }
    int exit_code() const noexcept { return static_cast<int>(category_); }

private:
    ErrorCategory category_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorCategory::Config, what) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(ErrorCategory::Numeric, what) {}
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what)
        : Error(ErrorCategory::Io, path + ": " + what), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

// Jet / matrix contract violations (mismatched truncation orders and the like).
class ContractError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// A jet whose constant term is zero was used as a divisor.
class DivisionByNonunitError : public NumericError {
public:
    using NumericError::NumericError;
};

class RangeError : public NumericError {
public:
    RangeError(const std::string& what, double exponent_real)
        : NumericError(what), exponent_real_(exponent_real) {}
    double exponent_real() const noexcept { return exponent_real_; }

private:
    double exponent_real_;
};

// Square root of a series whose leading power is odd (Puiseux case).
class NonEvenOrderError : public NumericError {
public:
    using NumericError::NumericError;
};

class DegenerateInputError : public NumericError {
public:
    using NumericError::NumericError;
};

class DomainError : public ConfigError {
public:
    DomainError(const std::string& parameter, const std::string& what)
        : ConfigError(parameter + ": " + what), parameter_(parameter) {}
    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

class PoleError : public NumericError {
public:
    PoleError(const std::string& what, std::complex<double> lambda)
        : NumericError(what), lambda_(lambda) {}
    std::complex<double> lambda() const noexcept { return lambda_; }

private:
    std::complex<double> lambda_;
};

// S(lambda) == 0 on the breather path; such charts belong on the rogue path.
class DegenerateSpectrumError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class NotCriticalError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class TruncationError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class StencilError : public NumericError {
public:
    StencilError(const std::string& what, double dx, double dy, double dt)
        : NumericError(what), dx_(dx), dy_(dy), dt_(dt) {}
    double dx() const noexcept { return dx_; }
    double dy() const noexcept { return dy_; }
    double dt() const noexcept { return dt_; }

private:
    double dx_, dy_, dt_;
};

class EmptyRegionError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace flwave
