#include "lexread/error.hpp"

#include <utility>

namespace lexread {

namespace {

std::string degenerate_message(DegenerateTextError::Reason reason, const std::string& id) {
    std::string msg = reason == DegenerateTextError::Reason::NoWords
                          ? "degenerate text: no word tokens"
                          : "degenerate text: no sentences";
    if (!id.empty()) {
        msg = id + ": " + msg;
    }
    return msg;
}

}  // namespace

DegenerateTextError::DegenerateTextError(Reason reason, std::string document_id)
    : Error(degenerate_message(reason, document_id)),
      reason_(reason),
      document_id_(std::move(document_id)) {}

ParseError::ParseError(const std::string& what, std::size_t line)
    : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

}  // namespace lexread
