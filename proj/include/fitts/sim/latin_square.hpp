#pragma once

#include <cstddef>
#include <vector>

namespace fitts::sim {

using LatinSquare = std::vector<std::vector<std::size_t>>;

/// Williams design: row 0 is [0, 1, n-1, 2, n-2, ...] and row r adds r mod n.
/// Each ordered adjacent pair appears exactly once. Throws std::invalid_argument
/// for odd or zero n.
LatinSquare balanced_latin_square(std::size_t n);

}  // namespace fitts::sim
