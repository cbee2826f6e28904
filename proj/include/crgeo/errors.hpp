#pragma once

#include <stdexcept>
#include <string>

namespace crgeo {

// Input text could not be tokenized or parsed. Carries a 1-based source position.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, int line, int col)
        : std::runtime_error(std::move(msg)), line(line), col(col) {}
    int line;
    int col;
};

// A documented precondition of an operation was violated (bad q, point off the
// hypersurface, non-graph-form input, ...).
class precondition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A search budget (length cap, ansatz degree) was exhausted before the
// computation could be decided either way.
class inconclusive_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace crgeo
