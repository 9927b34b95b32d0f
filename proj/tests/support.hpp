#pragma once

#include <ostream>

#include "maxmodel/series.hpp"

namespace maxmodel {

// readable gtest failure messages
inline void PrintTo(const LaurentSeries& s, std::ostream* os) { *os << s.to_string(); }

}  // namespace maxmodel
