#pragma once

#include "tropicore/matrix.hpp"

// Shared fixtures: the two reducible reference matrices used across the
// suites, in both algebras.

inline tropicore::Matrix example1(tropicore::Semiring sr) {
  return tropicore::Matrix::from_rows(
      {
          {0.1206, 0, 0, 0, 0},
          {0.5895, 0.2904, 1, 0.8797, 0.4253},
          {0.2262, 0.6171, 0.3439, 1, 0.3127},
          {0.3846, 0.2653, 0.5841, 0.2607, 1},
          {0.5830, 1, 0.1078, 0.5944, 0.1788},
      },
      sr);
}

inline tropicore::Matrix example2(tropicore::Semiring sr) {
  return tropicore::Matrix::from_rows(
      {
          {0, 1, 0, 0},
          {1, 0, 0, 0},
          {0.6718, 0.2240, 0.5805, 0.1868},
          {0.6951, 0.6678, 0.4753, 0.3735},
      },
      sr);
}

inline tropicore::Matrix nilpotent3(tropicore::Semiring sr) {
  return tropicore::Matrix::from_rows(
      {
          {0, 0.7, 0.2},
          {0, 0, 1.5},
          {0, 0, 0},
      },
      sr);
}
