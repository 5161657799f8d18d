// SPDX-License-Identifier: Apache-2.0
#include "qpriv/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qpriv {

JointDistribution::JointDistribution(std::vector<Atom> support) : support_(std::move(support)) {
  double total = 0;
  for (const Atom& a : support_) {
    if (a.prob < 0) throw std::invalid_argument("negative probability");
    total += a.prob;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("distribution sums to " + std::to_string(total));
  }
  std::sort(support_.begin(), support_.end(), [](const Atom& a, const Atom& b) {
    return std::tie(a.x, a.y) < std::tie(b.x, b.y);
  });
  for (std::size_t i = 1; i < support_.size(); ++i) {
    if (support_[i].x == support_[i - 1].x && support_[i].y == support_[i - 1].y) {
      throw std::invalid_argument("duplicate support point (" + support_[i].x + ", " +
                                  support_[i].y + ")");
    }
  }
}

JointDistribution JointDistribution::uniform(const std::vector<std::string>& xs,
                                             const std::vector<std::string>& ys) {
  if (xs.empty() || ys.empty()) throw std::invalid_argument("empty alphabet");
  std::vector<Atom> atoms;
  atoms.reserve(xs.size() * ys.size());
  const double p = 1.0 / (static_cast<double>(xs.size()) * static_cast<double>(ys.size()));
  for (const std::string& x : xs) {
    for (const std::string& y : ys) {
      atoms.push_back(Atom{x, y, p});
    }
  }
  return JointDistribution(std::move(atoms));
}

std::vector<std::pair<std::string, double>> JointDistribution::marginal_x() const {
  std::map<std::string, double> acc;
  for (const Atom& a : support_) acc[a.x] += a.prob;
  return {acc.begin(), acc.end()};
}

std::vector<std::pair<std::string, double>> JointDistribution::marginal_y() const {
  std::map<std::string, double> acc;
  for (const Atom& a : support_) acc[a.y] += a.prob;
  return {acc.begin(), acc.end()};
}

bool JointDistribution::is_product(double tol) const {
  auto mx = marginal_x();
  auto my = marginal_y();
  std::map<std::pair<std::string, std::string>, double> joint;
  for (const Atom& a : support_) joint[{a.x, a.y}] = a.prob;
  for (const auto& [x, px] : mx) {
    for (const auto& [y, py] : my) {
      auto it = joint.find({x, y});
      double p = it == joint.end() ? 0.0 : it->second;
      if (std::abs(p - px * py) > tol) return false;
    }
  }
  return true;
}

}  // namespace qpriv
