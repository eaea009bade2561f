#pragma once

// Independent exact oracle. Looking backwards from a time t, the set of
// nodes through which node i's current version could have travelled grows
// whenever an outside node pushes into it, and the backward walk ends when
// the source pushes into the set. Node i's age is lambda_s times the
// expected absorption time of that set-valued Markov chain. The whole
// generator is assembled and solved as one sparse linear system, with no
// ordering of states and no shared code with the library solvers.

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <stdexcept>
#include <vector>

#include "gossipjam/network.hpp"

namespace oracle {

inline std::vector<double> ctmc_ages(const gossipjam::GossipNetwork& net) {
  const int n = net.size();
  if (n > 12) throw std::invalid_argument("oracle limited to 12 nodes");
  const int states = (1 << n) - 1;  // nonempty subsets, index mask - 1
  std::vector<Eigen::Triplet<double>> entries;
  Eigen::VectorXd rhs = Eigen::VectorXd::Ones(states);
  for (int mask = 1; mask <= states; ++mask) {
    double out = 0.0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) out += net.source_rate(i + 1);
    for (int j = 0; j < n; ++j) {
      if (mask >> j & 1) continue;
      double push = 0.0;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) push += net.rate(j + 1, i + 1);
      if (push == 0.0) continue;
      out += push;
      entries.emplace_back(mask - 1, (mask | 1 << j) - 1, -push);
    }
    entries.emplace_back(mask - 1, mask - 1, out);
  }
  Eigen::SparseMatrix<double> a(states, states);
  a.setFromTriplets(entries.begin(), entries.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw std::runtime_error("oracle generator is singular");
  const Eigen::VectorXd tau = lu.solve(rhs);
  std::vector<double> ages(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ages[static_cast<std::size_t>(i)] = net.lambda_s() * tau[(1 << i) - 1];
  return ages;
}

}  // namespace oracle
