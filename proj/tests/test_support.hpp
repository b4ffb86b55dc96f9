#ifndef BIMOMENT_TEST_SUPPORT_HPP
#define BIMOMENT_TEST_SUPPORT_HPP

#include <string>
#include <vector>

#include "bimoment/model.hpp"

namespace bimoment::testing {

inline std::vector<Rational> grid(std::initializer_list<const char*> cells) {
  std::vector<Rational> out;
  for (const char* c : cells) out.push_back(Rational::parse(c));
  return out;
}

// Mass 1/3 at (0,0), (1,1), (2,2).
inline JointPMF three_point() { return JointPMF(2, 2, grid({"1/3", "0", "0", "0", "1/3", "0", "0", "0", "1/3"})); }

inline JointPMF uniform_unit_square() { return JointPMF(1, 1, grid({"1/4", "1/4", "1/4", "1/4"})); }

inline std::string fixture(const std::string& name) { return std::string(BIMOMENT_FIXTURE_DIR) + "/" + name; }

}  // namespace bimoment::testing

#endif  // BIMOMENT_TEST_SUPPORT_HPP
