#pragma once

#include "pavecount/bigcount.hpp"
#include "pavecount/bitset.hpp"
#include "pavecount/bounds.hpp"
#include "pavecount/constructions.hpp"
#include "pavecount/error.hpp"
#include "pavecount/graph.hpp"
#include "pavecount/ksubset.hpp"
#include "pavecount/matroid.hpp"
#include "pavecount/serialize.hpp"
#include "pavecount/stable_count.hpp"

namespace pavecount {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pavecount
