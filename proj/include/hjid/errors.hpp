#pragma once

#include <stdexcept>
#include <string>

namespace hjid {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can map the whole family onto one exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidModel : public Error {
public:
    using Error::Error;
};

class RootNotBracketed : public Error {
public:
    using Error::Error;
};

class LevelBelowCritical : public Error {
public:
    using Error::Error;
};

class EnergyDriftExceeded : public Error {
public:
    EnergyDriftExceeded(double drift, double tolerance)
        : Error("energy drift " + std::to_string(drift) + " exceeds tolerance " +
                std::to_string(tolerance)),
          drift_(drift) {}
    double drift() const noexcept { return drift_; }

private:
    double drift_;
};

class ShootFailed : public Error {
public:
    ShootFailed(const std::string& what, double p_lo, double p_hi)
        : Error(what), p_lo_(p_lo), p_hi_(p_hi) {}
    double bracket_lo() const noexcept { return p_lo_; }
    double bracket_hi() const noexcept { return p_hi_; }

private:
    double p_lo_;
    double p_hi_;
};

class UnstableBlowup : public Error {
public:
    using Error::Error;
};

class NotReachable : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class NoShockYet : public Error {
public:
    using Error::Error;
};

class InvalidGrid : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace hjid
