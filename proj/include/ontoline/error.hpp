#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ontoline {

// Every failure in the toolkit carries the module it came from and a stable
// machine-readable code, so the CLI can surface module-qualified messages
// and tests can assert on codes instead of message text.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string code, const std::string& message)
        : std::runtime_error(module + "." + code + ": " + message),
          module_(std::move(module)),
          code_(std::move(code)) {}

    const std::string& module() const noexcept { return module_; }
    const std::string& code() const noexcept { return code_; }

private:
    std::string module_;
    std::string code_;
};

[[noreturn]] inline void raise(const std::string& module, const std::string& code,
                               const std::string& message) {
    throw Error(module, code, message);
}

}  // namespace ontoline
