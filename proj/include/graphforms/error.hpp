#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace graphforms {

// Every failure the engine can raise carries a stable machine-readable code
// (e.g. "MissingReverse", "BraidFailure") next to the human-readable message.
// The CLI maps structural codes to exit 2 and mathematical ones to failed
// verdicts.
class Error : public std::runtime_error {
public:
    Error(std::string code, std::string message)
        : std::runtime_error(code + ": " + message),
          code_(std::move(code)),
          message_(std::move(message)) {}

    const std::string& code() const { return code_; }
    const std::string& message() const { return message_; }

private:
    std::string code_;
    std::string message_;
};

[[noreturn]] inline void raise(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace graphforms
