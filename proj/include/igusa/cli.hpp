#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "igusa/cyclo.hpp"

namespace igusa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitUsage = 64;

/// Runs the command line `args` (without the program name). Results go to
/// `out`; usage text and structured error objects go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1", "q^a", "z^j" or "z^j*q^a".
UnitScalar parse_unit_scalar(std::string_view text);

}  // namespace igusa::cli
