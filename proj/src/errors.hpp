#ifndef RADICAL_ERRORS_HPP
#define RADICAL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rad {

// Malformed sequence text. `offset` is the byte position of the first
// offending character.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, std::size_t offset)
        : std::runtime_error(std::move(msg)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Violated precondition or out-of-domain argument.
class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Broken internal invariant (e.g. a definitely negative radicand).
// Mathematically impossible in this family, so reaching it means a bug.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace rad

#endif
