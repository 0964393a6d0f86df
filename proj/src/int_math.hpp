#pragma once

#include <cstdint>

namespace septimal::detail {

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    const std::int64_t q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

static_assert(floor_div(-1, 4) == -1 && floor_div(3, 4) == 0 && ceil_div(-6, 7) == 0 && ceil_div(1, 7) == 1);

} // namespace septimal::detail
