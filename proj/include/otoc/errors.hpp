#pragma once

#include <stdexcept>
#include <string>

namespace otoc {

// Request exceeds a hard resource ceiling (e.g. dense matrices above the
// site limit). CLI maps this to exit code 3.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// File emission / ingestion failure. CLI maps this to exit code 4.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Bad flags or inconsistent run configuration. CLI maps this to exit code 2.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace otoc
