#pragma once

#include <stdexcept>
#include <string>

namespace fcpca {

/// Coarse failure categories; the CLI maps them to distinct exit codes.
enum class ErrorKind {
    InvalidArgument,   // bad parameters, invalid basis, usage-level misuse
    Dimension,         // mismatched vector/matrix/basis sizes
    Domain,            // evaluation point outside the basis interval
    Format,            // malformed input files (ragged rows, bad header, ...)
    Parse,             // unparseable numeric field
    Io,                // filesystem failures
    EmptyInput,        // empty dataset/file where data is required
    InsufficientData,  // too few curves (globally or per class)
    DegenerateData,    // zero covariance / all functions discarded
    IllConditioned,    // linear system unusable even after ridge fallback
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

} // namespace fcpca
