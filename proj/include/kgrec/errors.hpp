#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kgrec {

// Every failure the library reports, bucketed for CLI exit codes:
// usage/config problems exit 1, bad input data exits 2, logic faults exit 3.
enum class ErrorCategory {
    config,
    parameter,
    parse,
    schema,
    duplicate_id,
    referential,
    ontology,
    ambiguity,
    empty_description,
    empty_list,
    empty_vocab,
    missing_class,
    dimension,
    empty_input,
    version,
    io,
    internal,
};

inline std::string_view category_name(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::config: return "config error";
        case ErrorCategory::parameter: return "parameter error";
        case ErrorCategory::parse: return "parse error";
        case ErrorCategory::schema: return "schema error";
        case ErrorCategory::duplicate_id: return "duplicate-id error";
        case ErrorCategory::referential: return "referential error";
        case ErrorCategory::ontology: return "ontology error";
        case ErrorCategory::ambiguity: return "ambiguity error";
        case ErrorCategory::empty_description: return "empty-description error";
        case ErrorCategory::empty_list: return "empty-list error";
        case ErrorCategory::empty_vocab: return "empty-vocab error";
        case ErrorCategory::missing_class: return "missing-class error";
        case ErrorCategory::dimension: return "dimension error";
        case ErrorCategory::empty_input: return "empty-input error";
        case ErrorCategory::version: return "version error";
        case ErrorCategory::io: return "io error";
        case ErrorCategory::internal: return "internal error";
    }
    return "error";
}

class Error : public std::runtime_error {
  public:
    Error(std::string module, ErrorCategory category, const std::string& message)
        : std::runtime_error(std::string(module) + ": " +
                             std::string(category_name(category)) + ": " + message),
          module_(std::move(module)),
          category_(category) {}

    const std::string& module() const noexcept { return module_; }
    ErrorCategory category() const noexcept { return category_; }

    int exit_code() const noexcept {
        switch (category_) {
            case ErrorCategory::config:
            case ErrorCategory::parameter:
                return 1;
            case ErrorCategory::internal:
                return 3;
            default:
                return 2;
        }
    }

  private:
    std::string module_;
    ErrorCategory category_;
};

}  // namespace kgrec
