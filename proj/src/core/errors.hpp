#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace riccinet {

// Error classes map one-to-one onto process exit codes and C API status
// values: io / missing-artifact -> 2, validation / too-short -> 3,
// numeric -> 4.
class Error : public std::runtime_error {
public:
    Error(std::string error_class, int exit_code, const std::string& message)
        : std::runtime_error(message),
          class_(std::move(error_class)),
          code_(exit_code) {}

    const std::string& error_class() const noexcept { return class_; }
    int exit_code() const noexcept { return code_; }

private:
    std::string class_;
    int code_;
};

struct IoError : Error {
    explicit IoError(const std::string& m) : Error("io", 2, m) {}
};

struct MissingArtifactError : Error {
    explicit MissingArtifactError(const std::string& m)
        : Error("missing-artifact", 2, m) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& m)
        : Error("validation", 3, m) {}
};

struct TooShortError : Error {
    explicit TooShortError(const std::string& m) : Error("too-short", 3, m) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& m) : Error("numeric", 4, m) {}
};

} // namespace riccinet
