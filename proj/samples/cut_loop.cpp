// Copyright 2026 The qapcut Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Root ab-cut loop on a seeded random instance; prints the bound after each
// round and every cut found.
//
//   cut_loop [n] [seed]

#include <cstdlib>
#include <iostream>

#include "qapcut.hpp"

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 5;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  const qapcut::QapInstance inst = qapcut::random_instance(n, seed);
  const qapcut::BoundTables bounds = qapcut::compute_bounds(inst);
  const qapcut::RootCutResult r = qapcut::root_cut_loop(inst, bounds);

  for (std::size_t i = 0; i < r.bounds.size(); ++i)
    std::cout << "round " << i << "  bound " << r.bounds[i] << '\n';
  for (const qapcut::AbCut& c : r.cuts) std::cout << qapcut::to_json(c).dump() << '\n';
  if (n <= qapcut::kBruteForceMaxSize)
    std::cout << "optimum " << qapcut::brute_force_optimum(inst).value << '\n';
}
