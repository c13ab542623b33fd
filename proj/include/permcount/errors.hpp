#pragma once

#include <stdexcept>
#include <string>

namespace permcount {

enum class errc {
    not_prime,
    reducible_modulus,
    degree_mismatch,
    mixed_order,
    not_rational,
    size_mismatch,
    field_too_small,
    range_exceeded,
    non_integer_result,
    invalid_permutation,
    parse_error,
};

inline const char* errc_name(errc c)
{
    switch (c) {
    case errc::not_prime:          return "NotPrime";
    case errc::reducible_modulus:  return "ReducibleModulus";
    case errc::degree_mismatch:    return "DegreeMismatch";
    case errc::mixed_order:        return "MixedOrder";
    case errc::not_rational:       return "NotRational";
    case errc::size_mismatch:      return "SizeMismatch";
    case errc::field_too_small:    return "FieldTooSmall";
    case errc::range_exceeded:     return "RangeExceeded";
    case errc::non_integer_result: return "NonIntegerResult";
    case errc::invalid_permutation: return "InvalidPermutation";
    case errc::parse_error:        return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what)
{
    throw Error(code, what);
}

} // namespace permcount
