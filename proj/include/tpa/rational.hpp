#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace tpa {

// Exact rational arithmetic for clocks, distances and constraint solving.
// Floating point is never used for semantics: time advancement and guard
// evaluation need exact equality tests.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "3", "-7/2", "2.0", "0.125". Returns nullopt on malformed input.
std::optional<Rat> parse_rat(const std::string& text);

// Canonical text form: integers print bare, otherwise "p/q".
std::string rat_to_string(const Rat& r);

// SMT-LIB2 form: nonnegative integers as numerals, fractions as (/ p q),
// negatives wrapped in (- ...).
std::string rat_to_smt(const Rat& r);

} // namespace tpa
