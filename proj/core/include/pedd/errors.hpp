#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pedd {

/// Syntax error in polynomial or data-file text. `position` is a 0-based
/// character offset into the offending string.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Raised when generic data (beta, chart) failed its genericity checks even
/// after the retry budget, or when the input is inherently degenerate
/// (e.g. the variety is contained in the isotropic quadric).
class GenericityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a plane-curve singularity falls outside the node/cusp class
/// and no user-supplied (multiplicity, branches, delta) data covers it.
class UnsupportedSingularityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pedd
