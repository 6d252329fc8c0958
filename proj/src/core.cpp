#include "mixent/core.hpp"

#include <charconv>
#include <cstdio>

namespace mixent {

namespace {

double parse_number(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw PreconditionError("not a number: '" + std::string(text) + "'");
  return value;
}

}  // namespace

Exponent::Exponent(double value) : value_(value) {
  if (std::isnan(value) || value <= 0.0)
    throw PreconditionError("exponent must lie in (0, inf], got " + std::to_string(value));
}

Exponent Exponent::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity" || text == "oo")
    return infinity();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    double num = parse_number(text.substr(0, slash));
    double den = parse_number(text.substr(slash + 1));
    if (den == 0.0) throw PreconditionError("zero denominator in exponent '" + std::string(text) + "'");
    return Exponent(num / den);
  }
  return Exponent(parse_number(text));
}

std::string Exponent::str() const {
  if (is_inf()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  // prefer the short form when it round-trips
  char short_buf[32];
  std::snprintf(short_buf, sizeof short_buf, "%g", value_);
  return std::stod(short_buf) == value_ ? std::string(short_buf) : std::string(buf);
}

std::string ExponentTuple::str() const {
  return "p=" + p.str() + " q=" + q.str() + " r=" + r.str() + " u=" + u.str();
}

QuasiNormConstant quasi_norm_constant(Exponent gamma) {
  if (gamma.value() >= 1.0) return {1.0};
  return {std::pow(2.0, gamma.reciprocal() - 1.0)};
}

QuasiNormConstant mixed_quasi_norm_constant(Exponent p, Exponent q) {
  return quasi_norm_constant(min(Exponent(1.0), min(p, q)));
}

double identity_norm(const ExponentTuple& params, Shape shape) {
  const double outer = std::max(0.0, params.r.reciprocal() - params.p.reciprocal());
  const double inner = std::max(0.0, params.u.reciprocal() - params.q.reciprocal());
  return std::pow(double(shape.b), outer) * std::pow(double(shape.d), inner);
}

bool sandwich_check(long long packing_count_at_2eps, long long covering_count_at_eps,
                    long long packing_count_at_eps) {
  if (packing_count_at_2eps < 0 || covering_count_at_eps < 0 || packing_count_at_eps < 0)
    throw PreconditionError("sandwich_check: counts must be nonnegative");
  return packing_count_at_2eps <= covering_count_at_eps && covering_count_at_eps <= packing_count_at_eps;
}

}  // namespace mixent
