#pragma once

#include <stdexcept>
#include <string>

namespace bestprox {

/// Malformed input: bad dimensions, out-of-range indices, unparsable scenarios.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation outside the domain of a function (e.g. F at a non-positive argument).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A hypothesis the construction depends on does not hold numerically.
class HypothesisError : public std::runtime_error {
public:
    enum class Kind { no_candidate, multiple_candidates };

    HypothesisError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace bestprox
