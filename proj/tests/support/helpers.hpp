#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "numeric.hpp"

namespace lim::test {

inline Rational q(const char* text) { return parse_number(text); }

inline Vec<Rational> qv(std::initializer_list<const char*> entries) {
  Vec<Rational> out;
  for (const char* e : entries) out.push_back(parse_number(e));
  return out;
}

inline SimplexVector sv(std::initializer_list<const char*> entries) {
  std::vector<Rational> coords;
  for (const char* e : entries) coords.push_back(parse_number(e));
  return SimplexVector::checked(std::move(coords), "test");
}

}  // namespace lim::test
