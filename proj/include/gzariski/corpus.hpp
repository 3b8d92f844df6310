#ifndef GZARISKI_CORPUS_HPP
#define GZARISKI_CORPUS_HPP

#include <vector>

#include "gzariski/instance.hpp"

namespace gz {

// Built-in instances exercised by `verify --corpus`:
//   INST-A  F2[x]/(x^2), Z2-graded by degree parity, M = R
//   INST-B  Z4, trivial grading, M = Z4
//   INST-C  F2, M = F2 x F2 (componentwise action)
//   INST-D  Z6, M = Z6
//   INST-E  F2, M = F2^3 (15-point qp spectrum; exercises subset sampling)
//   INST-S  F2, M = F2 (one-point spectrum simple module)
//   INST-Z  F2, M = 0 (zero module)
const std::vector<InstanceDesc>& builtin_corpus();

const InstanceDesc* find_instance(const std::string& name);

} // namespace gz

#endif
