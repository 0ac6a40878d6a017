#pragma once

#include <gmpxx.h>

#include <string>

namespace mvd {

// Exact rational arithmetic (GMP). Vote weights, comparison thresholds,
// election probabilities and adversarial metric entries are all kept exact;
// doubles appear only at the LP boundary and in reports.
using Rat = mpq_class;

// Accepts "p/q", integers, and decimal/scientific literals ("0.25", "1e-5"),
// all parsed exactly. Throws ParseError on malformed input or zero denominator.
Rat rat_from_string(const std::string& s);

// Canonical form: "p/q" after reduction, or just "p" when q == 1.
std::string rat_to_string(const Rat& r);

double rat_to_double(const Rat& r);

// 10^e as an exact rational (e may be negative).
Rat rat_pow10(long e);

}  // namespace mvd
