#pragma once

#include <initializer_list>
#include <vector>

#include "doctest.h"
#include "fanoforge/cone.hpp"

namespace testutil {

inline fanoforge::RationalVector V(std::initializer_list<long> xs) {
  fanoforge::RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline std::vector<fanoforge::RationalVector> Vs(
    std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<fanoforge::RationalVector> out;
  for (auto r : rows) out.push_back(V(r));
  return out;
}

inline fanoforge::Cone C(std::initializer_list<std::initializer_list<long>> rows) {
  return fanoforge::Cone::canonicalize(Vs(rows));
}

}  // namespace testutil

namespace doctest {
template <>
struct StringMaker<std::vector<fanoforge::RationalVector>> {
  static String convert(const std::vector<fanoforge::RationalVector>& vs) {
    std::string s = "[";
    for (const auto& v : vs) s += fanoforge::to_string(v) + " ";
    return String((s + "]").c_str());
  }
};
}  // namespace doctest

#include <fstream>
#include <string>

namespace testutil {

inline nlohmann::json load_json(const std::string& relative) {
  std::ifstream in(std::string(FANOFORGE_TEST_DATA) + "/" + relative);
  REQUIRE_MESSAGE(in.good(), "cannot open " << relative);
  return nlohmann::json::parse(in);
}

}  // namespace testutil
