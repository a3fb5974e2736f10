#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace shiftlab {

/// Splits on `sep`, trimming whitespace from each piece.
std::vector<std::string> split(std::string_view text, char sep);
std::string trim(std::string_view text);

/// Strict full-string parse; throws ContractError naming `what` on failure.
double parse_real(std::string_view text, std::string_view what);

/// Accepts "2", "-0.5", "1+2i", "1-0.25i", "3i", "-i".
std::complex<double> parse_complex(std::string_view text, std::string_view what);

}  // namespace shiftlab
