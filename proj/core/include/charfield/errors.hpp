#pragma once

#include <stdexcept>
#include <string>

namespace charfield {

// Every recoverable failure in the library is reported as an Error carrying
// one of these codes. Callers that care about the cause switch on code();
// everyone else sees a std::runtime_error with a readable message.
enum class Errc {
    not_a_unit,
    spec_mismatch,
    char_two,
    infinite_carrier,
    empty_set,
    division_by_zero,
    precision_exhausted,
    insufficient_precision,
    not_a_square,
    unsupported_prime,
    scale_error,
    precondition_violated,
    not_a_subgroup,
    zero_value,
    bad_config,
    io_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace charfield
