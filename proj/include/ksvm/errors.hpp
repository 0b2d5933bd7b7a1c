#ifndef KSVM_ERRORS_HPP
#define KSVM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ksvm {

// Violated contract on an operation's inputs. CLI maps this to exit code 2.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Malformed file content (CSV/JSON). CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failure. CLI maps this to exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ksvm

#endif
