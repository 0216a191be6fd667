#ifndef KSET_ERRORS_HPP
#define KSET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kset {

// Bad user input: malformed values, frame mismatches, out-of-range parameters.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// The knowledge set has no members (contradictory constraints).
class EmptySetError : public std::runtime_error {
public:
    explicit EmptySetError(const std::string& what) : std::runtime_error(what) {}
};

// Conditioning on an event that has (or may have) probability zero.
class NullEventError : public std::runtime_error {
public:
    explicit NullEventError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kset

#endif
