#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tc {

/// Broad failure class, used to pick process exit codes and C API status
/// values: usage -> 1, data -> 2, numeric -> 3.
enum class ErrorClass { usage = 1, data = 2, numeric = 3 };

/// Engine-wide exception. `kind` is a stable machine-readable tag such as
/// "SeriesTooShort" or "NonHourlySpacing"; `what()` carries the human text.
class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string kind, const std::string& message)
        : std::runtime_error(message), class_(cls), kind_(std::move(kind)) {}

    ErrorClass error_class() const noexcept { return class_; }
    const std::string& kind() const noexcept { return kind_; }

    static Error usage(std::string kind, const std::string& message) {
        return Error(ErrorClass::usage, std::move(kind), message);
    }
    static Error data(std::string kind, const std::string& message) {
        return Error(ErrorClass::data, std::move(kind), message);
    }
    static Error numeric(std::string kind, const std::string& message) {
        return Error(ErrorClass::numeric, std::move(kind), message);
    }

private:
    ErrorClass class_;
    std::string kind_;
};

}  // namespace tc
