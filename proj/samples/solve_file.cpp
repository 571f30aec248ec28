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

// Reads a QAPLIB file, runs branch-and-cut and prints the assignment.
//
//   solve_file data/line3.dat

#include <fstream>
#include <iostream>

#include "qapcut.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: solve_file FILE\n";
    return 1;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << "cannot open " << argv[1] << '\n';
    return 2;
  }
  try {
    const qapcut::QapInstance inst = qapcut::parse_qaplib(in);
    const qapcut::SolveReport r = qapcut::solve_bnc(inst);
    std::cout << "n = " << inst.size() << ", nodes = " << r.nodes << ", cuts = " << r.cuts.size()
              << '\n';
    std::cout << "root bound " << *r.root_bound_before << " -> " << *r.root_bound_after << '\n';
    std::cout << "optimum " << *r.incumbent_value << " at";
    for (int j : r.incumbent->one_based()) std::cout << ' ' << j;
    std::cout << '\n';
  } catch (const qapcut::Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
}
