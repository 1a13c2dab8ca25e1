#pragma once

#include <stdexcept>
#include <string>

namespace plsforge {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotAnEdge : Error {
    using Error::Error;
};
struct DimensionError : Error {
    using Error::Error;
};
struct InvalidArgument : Error {
    using Error::Error;
};
struct InvalidInstance : Error {
    using Error::Error;
};
struct NotADag : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct NotCanonical : Error {
    using Error::Error;
};
struct ScaleTooSmall : Error {
    using Error::Error;
};

// Parse failures carry the 1-based position of the offending token.
struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& msg, int line_, int column_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

} // namespace plsforge
