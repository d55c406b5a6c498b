#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexread {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The text produced no measurable prose (no sentences or no words).
class DegenerateTextError : public Error {
public:
    enum class Reason { NoWords, NoSentences };

    DegenerateTextError(Reason reason, std::string document_id = {});

    Reason reason() const noexcept { return reason_; }
    const std::string& document_id() const noexcept { return document_id_; }

private:
    Reason reason_;
    std::string document_id_;
};

/// Invalid statistical input: mismatched lengths, constant columns, zero variance.
class StatsError : public Error {
public:
    using Error::Error;
};

/// Malformed manifest or results file. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class InvalidIdentifierError : public Error {
public:
    using Error::Error;
};

}  // namespace lexread
