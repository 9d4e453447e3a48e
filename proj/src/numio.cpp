#include "hhq/numio.hpp"

#include <charconv>
#include <system_error>

namespace hhq::num {

std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw guard_error("number formatting failed");
  return std::string(buf, p);
}

std::string fmt(cplx z) { return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")"; }

double parse_double(std::string_view tok) {
  double v{};
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw precondition_error("bad numeric token '" + std::string(tok) + "'");
  return v;
}

cplx parse_complex(std::string_view tok) {
  if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
    throw precondition_error("bad complex token '" + std::string(tok) + "'");
  auto body = tok.substr(1, tok.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string_view::npos)
    throw precondition_error("bad complex token '" + std::string(tok) + "'");
  return {parse_double(body.substr(0, comma)), parse_double(body.substr(comma + 1))};
}

}  // namespace hhq::num
