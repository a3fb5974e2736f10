#include "shiftlab/parse_util.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "shiftlab/errors.hpp"

namespace shiftlab {

std::string trim(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (s.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw ContractError(std::string(what) + ": cannot parse number '" + s + "'");
  }
  return value;
}

std::complex<double> parse_complex(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  if (s.empty()) throw ContractError(std::string(what) + ": empty complex number");
  if (s.back() != 'i') return {parse_real(s, what), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not the leading sign or part of an exponent.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  auto imag_part = [&](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t, what);
  };
  if (split_at == std::string::npos) return {0.0, imag_part(body)};
  return {parse_real(body.substr(0, split_at), what), imag_part(body.substr(split_at))};
}

}  // namespace shiftlab
