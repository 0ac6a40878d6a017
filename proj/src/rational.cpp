#include "mvd/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "mvd/errors.hpp"

namespace mvd {

Rat rat_pow10(long e) {
  Rat ten(10);
  Rat r(1);
  long a = e < 0 ? -e : e;
  Rat base = ten;
  while (a > 0) {
    if (a & 1) r *= base;
    base *= base;
    a >>= 1;
  }
  if (e < 0) return Rat(1) / r;
  return r;
}

static bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rat rat_from_string(const std::string& raw) {
  std::string s = raw;
  // trim
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw ParseError("empty rational literal");

  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.erase(s.begin());
  }
  if (s.empty()) throw ParseError("bare sign in rational literal '" + raw + "'");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("malformed rational '" + raw + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw ParseError("zero denominator in '" + raw + "'");
    Rat r(n, d);
    r.canonicalize();
    return neg ? Rat(-r) : r;
  }

  // decimal / scientific
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string es = s.substr(epos + 1);
    s = s.substr(0, epos);
    if (es.empty()) throw ParseError("empty exponent in '" + raw + "'");
    bool eneg = false;
    if (es[0] == '+' || es[0] == '-') {
      eneg = es[0] == '-';
      es.erase(es.begin());
    }
    if (!all_digits(es) || es.size() > 6) throw ParseError("bad exponent in '" + raw + "'");
    exp10 = std::strtol(es.c_str(), nullptr, 10);
    if (eneg) exp10 = -exp10;
  }

  std::string intpart = s, fracpart;
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    intpart = s.substr(0, dot);
    fracpart = s.substr(dot + 1);
  }
  if (intpart.empty() && fracpart.empty())
    throw ParseError("malformed rational '" + raw + "'");
  if ((!intpart.empty() && !all_digits(intpart)) || (!fracpart.empty() && !all_digits(fracpart)))
    throw ParseError("malformed rational '" + raw + "'");

  mpz_class digits(intpart.empty() ? std::string("0") : intpart);
  for (char c : fracpart) digits = digits * 10 + (c - '0');
  Rat r(digits);
  r *= rat_pow10(exp10 - static_cast<long>(fracpart.size()));
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_str();  // "p/q" or "p"
}

double rat_to_double(const Rat& r) { return r.get_d(); }

}  // namespace mvd
