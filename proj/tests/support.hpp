#pragma once

#include "oracle.hpp"
#include "wilsonpar/polynomial.hpp"

namespace support {

inline oracle::QPoly to_oracle(const wilsonpar::RationalPolynomial& p) { return oracle::QPoly(p.coefficients()); }

inline oracle::BPoly to_oracle(const wilsonpar::BParamPolynomial& p) {
  std::vector<oracle::QPoly> c;
  for (const auto& v : p.coefficients()) c.push_back(to_oracle(v));
  return oracle::BPoly(c);
}

}  // namespace support
