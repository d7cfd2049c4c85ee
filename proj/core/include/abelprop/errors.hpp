#pragma once

#include <stdexcept>
#include <string>

namespace abelprop {

// Base class for every failure raised by the pipeline. `stage` names the
// stage that gave up (model, reduction, cubic, series, reversion, assembly,
// config) so the CLI can tag its exit message.
class Error : public std::runtime_error {
public:
    Error(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

// Invalid or unusable scenario/config input. Maps to exit code 1.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::string key = {})
        : Error("config", what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// NaN or infinity where a finite value is required.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

// Fixed-step integration produced a non-finite state. Carries the last time
// at which the state was still finite.
class IntegrationBlowupError : public Error {
public:
    IntegrationBlowupError(const std::string& what, double last_valid_t)
        : Error("integrate", what), last_valid_t_(last_valid_t) {}

    double last_valid_t() const noexcept { return last_valid_t_; }

private:
    double last_valid_t_;
};

// Generic domain violation (non-positive shift, C = 0, P <= 0 on grid, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Cubic with vanishing leading coefficient.
class DegenerateCubicError : public Error {
public:
    explicit DegenerateCubicError(const std::string& what) : Error("cubic", what) {}
};

// Cardano formula outside its real regime. Carries delta1 so the caller can
// decide whether to retry with the trigonometric fallback.
class NegativeDiscriminantError : public Error {
public:
    NegativeDiscriminantError(const std::string& what, double delta1)
        : Error("cubic", what), delta1_(delta1) {}

    double delta1() const noexcept { return delta1_; }

private:
    double delta1_;
};

// The quadratic factor has a complex-conjugate root pair.
class ComplexPairError : public Error {
public:
    ComplexPairError(const std::string& what, double delta2)
        : Error("cubic", what), delta2_(delta2) {}

    double delta2() const noexcept { return delta2_; }

private:
    double delta2_;
};

// A shift theta_k is (numerically) zero, i.e. x1 = 0 is a root of P.
class ZeroShiftError : public Error {
public:
    ZeroShiftError(const std::string& what, int k, double theta)
        : Error("cubic", what), k_(k), theta_(theta) {}

    int k() const noexcept { return k_; }
    double theta() const noexcept { return theta_; }

private:
    int k_;
    double theta_;
};

// Newton polish could not reach the residual contract.
class RefinementFailedError : public Error {
public:
    explicit RefinementFailedError(const std::string& what) : Error("cubic", what) {}
};

// sigma_1 = 0, the series t(x1) has no inverse.
class NonInvertibleSeriesError : public Error {
public:
    explicit NonInvertibleSeriesError(const std::string& what) : Error("reversion", what) {}
};

// Initial x1-velocity is zero, v0 = 1/x1' cannot be formed.
class ZeroVelocityError : public Error {
public:
    explicit ZeroVelocityError(const std::string& what) : Error("assembly", what) {}
};

// The requested sign branch disagrees with the fitted initial velocity.
class BranchMismatchError : public Error {
public:
    explicit BranchMismatchError(const std::string& what) : Error("assembly", what) {}
};

// Too few nonzero coefficients to estimate anything.
class InsufficientDataError : public Error {
public:
    explicit InsufficientDataError(const std::string& what) : Error("assembly", what) {}
};

}  // namespace abelprop
