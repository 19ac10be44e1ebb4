#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hyperlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class InvalidWeight : public Error {
public:
    explicit InvalidWeight(std::int64_t index)
        : Error("weight at index " + std::to_string(index) + " is zero or non-finite"), index_(index) {}
    std::int64_t index() const { return index_; }

private:
    std::int64_t index_;
};

class UnresolvedRank : public Error {
public:
    UnresolvedRank(std::int64_t rank, const std::string& why)
        : Error("unresolved rank " + std::to_string(rank) + ": " + why), rank_(rank) {}
    std::int64_t rank() const { return rank_; }

private:
    std::int64_t rank_;
};

class DivergenceUnverified : public Error {
public:
    DivergenceUnverified(std::int64_t rank, const std::string& why)
        : Error("divergence unverified at rank " + std::to_string(rank) + ": " + why), rank_(rank) {}
    std::int64_t rank() const { return rank_; }

private:
    std::int64_t rank_;
};

class ParameterOutOfRange : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

class IntervalTooWide : public Error {
public:
    using Error::Error;
};

class ScanHorizonError : public Error {
public:
    using Error::Error;
};

class PreconditionFailed : public Error {
public:
    using Error::Error;
};

class NotSupported : public Error {
public:
    using Error::Error;
};

}  // namespace hyperlab
