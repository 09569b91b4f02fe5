#pragma once

#include <stdexcept>
#include <string>

namespace subergo {

// Malformed or out-of-range input (CLI exit code 2).
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A precondition of a mathematical operation does not hold, e.g. auditing
// ergodicity of a map that does not preserve the expectation.
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace subergo
