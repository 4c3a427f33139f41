#include "fitts/sim/latin_square.hpp"

#include <stdexcept>

namespace fitts::sim {

LatinSquare balanced_latin_square(std::size_t n) {
  if (n == 0 || n % 2 != 0) {
    throw std::invalid_argument("balanced_latin_square: n must be even and positive");
  }
  std::vector<std::size_t> first(n, 0);
  for (std::size_t j = 1; j < n; ++j) {
    first[j] = (j % 2 == 1) ? (j + 1) / 2 : n - j / 2;
  }
  LatinSquare square(n, std::vector<std::size_t>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < n; ++j) square[r][j] = (first[j] + r) % n;
  }
  return square;
}

}  // namespace fitts::sim
