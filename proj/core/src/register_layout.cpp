// SPDX-License-Identifier: Apache-2.0
#include "qpriv/register_layout.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace qpriv {

RegisterLayout::RegisterLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
  std::unordered_set<std::string_view> seen;
  for (const Register& r : regs_) {
    if (r.name.empty()) {
      throw std::invalid_argument("register name must be non-empty");
    }
    if (!seen.insert(r.name).second) {
      throw std::invalid_argument("duplicate register name: " + r.name);
    }
    if (r.width < 0) {
      throw std::invalid_argument("register width must be >= 0: " + r.name);
    }
    total_ += r.width;
  }
  if (total_ > kMaxQubits) {
    throw std::invalid_argument("layout exceeds the " + std::to_string(kMaxQubits) +
                                "-qubit cap (" + std::to_string(total_) + " requested)");
  }
}

std::vector<std::string> RegisterLayout::names() const {
  std::vector<std::string> out;
  out.reserve(regs_.size());
  for (const Register& r : regs_) out.push_back(r.name);
  return out;
}

int RegisterLayout::find(std::string_view name) const {
  for (std::size_t i = 0; i < regs_.size(); ++i) {
    if (regs_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

bool RegisterLayout::has(std::string_view name) const { return find(name) >= 0; }

int RegisterLayout::width(std::string_view name) const {
  int i = find(name);
  if (i < 0) throw std::invalid_argument("unknown register: " + std::string(name));
  return regs_[static_cast<std::size_t>(i)].width;
}

int RegisterLayout::shift(std::string_view name) const {
  int i = find(name);
  if (i < 0) throw std::invalid_argument("unknown register: " + std::string(name));
  int below = 0;
  for (std::size_t j = static_cast<std::size_t>(i) + 1; j < regs_.size(); ++j) {
    below += regs_[j].width;
  }
  return below;
}

RegisterLayout RegisterLayout::sub_layout(const std::vector<std::string>& keep) const {
  for (const std::string& name : keep) {
    if (!has(name)) throw std::invalid_argument("unknown register: " + name);
  }
  std::vector<Register> out;
  for (const Register& r : regs_) {
    if (std::find(keep.begin(), keep.end(), r.name) != keep.end()) out.push_back(r);
  }
  return RegisterLayout(std::move(out));
}

std::vector<std::string> RegisterLayout::complement(const std::vector<std::string>& regs) const {
  for (const std::string& name : regs) {
    if (!has(name)) throw std::invalid_argument("unknown register: " + name);
  }
  std::vector<std::string> out;
  for (const Register& r : regs_) {
    if (std::find(regs.begin(), regs.end(), r.name) == regs.end()) out.push_back(r.name);
  }
  return out;
}

int RegisterLayout::combined_width(const std::vector<std::string>& regs) const {
  int w = 0;
  for (const std::string& name : regs) w += width(name);
  return w;
}

RegisterLayout RegisterLayout::concat(const RegisterLayout& a, const RegisterLayout& b) {
  std::vector<Register> regs = a.regs_;
  regs.insert(regs.end(), b.regs_.begin(), b.regs_.end());
  return RegisterLayout(std::move(regs));
}

FieldIndexer::FieldIndexer(const RegisterLayout& layout, const std::vector<std::string>& regs) {
  std::unordered_set<std::string_view> seen;
  for (const std::string& name : regs) {
    if (!seen.insert(name).second) {
      throw std::invalid_argument("register listed twice: " + name);
    }
    int w = layout.width(name);
    if (w == 0) continue;  // width-0 registers carry no field bits
    parts_.push_back(Part{layout.shift(name), w, (std::uint64_t{1} << w) - 1});
    width_ += w;
  }
}

}  // namespace qpriv
