#pragma once

// RB1 instance files and assignment files.
//
//   RB1
//   n=<int> k=<int> d=<int> m=<int> rel=<int> mode=<exact|bernoulli> alpha=<real> r=<real> p=<real> seed=<uint64>
//   C <i1> ... <ik> : <code1> <code2> ...      (m lines, both lists ascending)
//
// LF line endings; reals use 17 significant digits so they round-trip.

#include <string>
#include <string_view>

#include "rbcsp/core.hpp"

namespace rbcsp {

/// %.17g.
std::string format_real(double x);

std::string serialize_instance(const Instance& inst);

/// Throws ParseError (with a 1-based line number) on malformed text and on
/// any instance invariant violation.
Instance parse_instance(std::string_view text);

std::string serialize_assignment(const Assignment& a);
Assignment parse_assignment(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace rbcsp
