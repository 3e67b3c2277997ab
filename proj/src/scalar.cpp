#include "parabolic/error.hpp"
#include "parabolic/scalar.hpp"

#include <charconv>
#include <cstdio>
#include <limits>

namespace parabolic {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::CompositionBase: return "CompositionBase";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotParabolicBlockForm: return "NotParabolicBlockForm";
    case ErrorCode::DegenerateX: return "DegenerateX";
    case ErrorCode::ResonantC: return "ResonantC";
    case ErrorCode::SolvabilityObstruction: return "SolvabilityObstruction";
    case ErrorCode::BadHead: return "BadHead";
    case ErrorCode::BadScale: return "BadScale";
    case ErrorCode::NotInvariantJet: return "NotInvariantJet";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::NotFormalSolution: return "NotFormalSolution";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::BadPoint: return "BadPoint";
    case ErrorCode::SectorEscape: return "SectorEscape";
    case ErrorCode::NotFixedOrigin: return "NotFixedOrigin";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::string_view kind_name(Kind k) noexcept {
  return k == Kind::rational ? "rational" : "float";
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::SchemaError, "non-finite value cannot be made exact");
  Rational r;
  mpq_set_d(r.get_mpq_t(), v);
  return r;
}

std::string to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string to_string(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_string_17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_integer_text(s)) throw Error(ErrorCode::SchemaError, "malformed integer '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

// Exact value of a decimal literal such as -1.25e-3.
Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size())
      throw Error(ErrorCode::SchemaError, "malformed exponent in '" + std::string(s) + "'");
    s = s.substr(0, e);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_point) throw Error(ErrorCode::SchemaError, "malformed decimal '" + std::string(s) + "'");
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      throw Error(ErrorCode::SchemaError, "malformed number '" + std::string(s) + "'");
    }
  }
  if (digits.empty()) throw Error(ErrorCode::SchemaError, "empty number");
  mpz_class num(digits, 10);
  long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(num * scale) : Rational(num, scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw Error(ErrorCode::SchemaError, "empty coefficient");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(trim(text.substr(0, slash)));
    mpz_class den = parse_integer(trim(text.substr(slash + 1)));
    if (den == 0) throw Error(ErrorCode::SchemaError, "zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (is_integer_text(text)) return Rational(parse_integer(text));
  return parse_decimal(text);
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (text.find('/') != std::string_view::npos) return parse_rational(text).get_d();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec == std::errc::result_out_of_range) return parse_rational(text).get_d();
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCode::SchemaError, "malformed number '" + std::string(text) + "'");
  return v;
}

double log_abs(const Rational& v) {
  if (sgn(v) == 0) return -std::numeric_limits<double>::infinity();
  long exp_num = 0, exp_den = 0;
  double m_num = mpz_get_d_2exp(&exp_num, v.get_num_mpz_t());
  double m_den = mpz_get_d_2exp(&exp_den, v.get_den_mpz_t());
  return std::log(std::fabs(m_num)) - std::log(m_den) +
         static_cast<double>(exp_num - exp_den) * std::log(2.0);
}

double log_abs(double v) { return std::log(std::fabs(v)); }

}  // namespace parabolic
