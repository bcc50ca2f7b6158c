#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "sgc/error.hpp"

namespace sgc {

// Exact rational arithmetic for rates, bandwidths and gamma grids.
using Rat = boost::rational<std::int64_t>;

inline Rat make_rat(std::int64_t num, std::int64_t den = 1) { return Rat(num, den); }

// Renders as "a" for integers and "a/b" otherwise.
std::string rat_to_string(const Rat& r);

// Accepts "a", "a/b" and exact decimals such as "0.05" (= 1/20).
Rat parse_rational(const std::string& text);

} // namespace sgc
