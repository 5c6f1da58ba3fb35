#pragma once

#include <string>
#include <vector>

#include "pcjsr/alphabet.hpp"

namespace pcjsr {

// Integer-entried benchmark instances bundled with the tool so `jsr reproduce`
// needs no external data files.
struct Benchmark {
  std::string id;
  std::string description;
  MatrixSet matrices;
};

const std::vector<Benchmark>& benchmarks();

// Fails with InvalidInput when the id is unknown.
const Benchmark& benchmark(const std::string& id);

}  // namespace pcjsr
