#pragma once

#include <stdexcept>
#include <string>

namespace hdflow {

// Error conditions surfaced by the library. CLI maps any of these to exit
// status 2 (bad parameters) unless noted otherwise at the call site.
enum class errc {
    not_prime,
    not_irreducible,
    not_monic,
    division_by_zero,
    ctx_mismatch,
    out_of_range,
    both_zero,
    char_mismatch,
    not_square,
    exact_division_failed,
    shape_mismatch,
    index_out_of_range,
    unsupported_prime,
    degenerate_base_point,
    indeterminate,
    sign_resolution_failed,
    point_not_on_curve,
    field_too_large,
    unsupported_mode,
    bound_exceeded,
    internal_error,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
  public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

} // namespace hdflow
