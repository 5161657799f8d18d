// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace qpriv {

// Finite joint input distribution over (x, y) value pairs. Support is kept
// sorted so downstream reports are deterministically ordered.
class JointDistribution {
 public:
  struct Atom {
    std::string x;
    std::string y;
    double prob = 0;
  };

  JointDistribution() = default;
  explicit JointDistribution(std::vector<Atom> support);

  static JointDistribution uniform(const std::vector<std::string>& xs,
                                   const std::vector<std::string>& ys);

  const std::vector<Atom>& support() const { return support_; }

  std::vector<std::pair<std::string, double>> marginal_x() const;
  std::vector<std::pair<std::string, double>> marginal_y() const;

  // True when mu(x, y) factorizes as mu_x(x) * mu_y(y) within tol.
  bool is_product(double tol = 1e-12) const;

 private:
  std::vector<Atom> support_;
};

}  // namespace qpriv
