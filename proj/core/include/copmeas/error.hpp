#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace copmeas {

/// Domain error with a stable machine-readable kind ("RowSumViolation",
/// "OutOfDomain", ...) next to the human-readable message. The CLI prints
/// the kind on stderr and exits 1; tests match on it.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

}  // namespace copmeas
