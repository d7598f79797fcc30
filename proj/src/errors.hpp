#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace naifs {

// Raised when a declarative input (config, map parameters, measure spec)
// fails validation. Carries the full list of problems, not just the first.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> msgs)
        : std::runtime_error(join(msgs)), messages(std::move(msgs)) {}
    explicit ValidationError(const std::string& msg)
        : std::runtime_error(msg), messages{msg} {}

    std::vector<std::string> messages;

private:
    static std::string join(const std::vector<std::string>& msgs) {
        std::string out;
        for (const auto& m : msgs) {
            if (!out.empty()) out += "\n";
            out += m;
        }
        return out;
    }
};

// A candidate ball family that cannot cover the target sample.
class NoCoverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Cover cost never crosses 1 within the allowed bracket expansion.
class UnboundedPressureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RuntimeModuleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace naifs
