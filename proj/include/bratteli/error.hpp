#pragma once

#include <stdexcept>
#include <string>

namespace bratteli {

enum class ErrorKind {
    invalid_spec,     // malformed input file or option
    invalid_diagram,  // structural violation (zero row/column, shape mismatch)
    range,            // level/index out of the materialized range
    resource,         // digit cap or iteration budget exhausted
    numeric,          // convergence failure in float-mode estimation
    refused,          // precondition not met (e.g. unseparated clustering)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    const char* kind_name() const {
        switch (kind_) {
        case ErrorKind::invalid_spec: return "invalid-spec";
        case ErrorKind::invalid_diagram: return "invalid-diagram";
        case ErrorKind::range: return "range";
        case ErrorKind::resource: return "resource";
        case ErrorKind::numeric: return "numeric";
        case ErrorKind::refused: return "refused";
        }
        return "error";
    }

private:
    ErrorKind kind_;
};

}  // namespace bratteli
