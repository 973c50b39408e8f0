#pragma once

#include <stdexcept>
#include <string>

namespace kl {

/* Every domain error carries a stable code so callers (and the CLI) can
 * dispatch on the condition instead of parsing message text. */
enum class errc {
    non_uniform_margins,
    negative_entry,
    bad_shape,
    not_staircase,
    index_out_of_range,
    not_extendable,
    mismatched_shape,
    not_involution,
    not_fixed_point_free,
    equal_inputs,
    window_undefined,
    outside_formula_range,
    search_failed,
    invalid_sequence,
    budget_exceeded,
    degree_mismatch,
    range_too_small,
    flow_infeasible,
    precondition_violation,
    verification_failed,
    parse_error,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

} // namespace kl
