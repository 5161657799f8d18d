// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qpriv {

// Hard cap on dense simulation; protocols must declare total width up front.
inline constexpr int kMaxQubits = 20;

// Named, ordered qubit registers over a dense state vector.
//
// Ordering is big-endian: the first register occupies the most significant
// qubit positions of the basis index. Register order in the layout is
// authoritative; reorderings are explicit operations elsewhere.
class RegisterLayout {
 public:
  struct Register {
    std::string name;
    int width = 0;
    bool operator==(const Register&) const = default;
  };

  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Register> regs);
  RegisterLayout(std::initializer_list<Register> regs)
      : RegisterLayout(std::vector<Register>(regs)) {}

  int total_width() const { return total_; }
  std::uint64_t dim() const { return std::uint64_t{1} << total_; }
  const std::vector<Register>& registers() const { return regs_; }
  std::vector<std::string> names() const;

  bool has(std::string_view name) const;
  int width(std::string_view name) const;
  // Bit position of the least significant qubit of the register's field.
  int shift(std::string_view name) const;

  // Kept registers in their original layout order.
  RegisterLayout sub_layout(const std::vector<std::string>& keep) const;
  // All register names not listed in `regs`, in layout order.
  std::vector<std::string> complement(const std::vector<std::string>& regs) const;

  int combined_width(const std::vector<std::string>& regs) const;

  static RegisterLayout concat(const RegisterLayout& a, const RegisterLayout& b);

  bool operator==(const RegisterLayout&) const = default;

 private:
  int find(std::string_view name) const;  // -1 if absent

  std::vector<Register> regs_;
  int total_ = 0;
};

// Packs the fields of a register subset into a contiguous index, in the
// caller-given register order (first listed register most significant).
class FieldIndexer {
 public:
  FieldIndexer() = default;
  FieldIndexer(const RegisterLayout& layout, const std::vector<std::string>& regs);

  int width() const { return width_; }
  std::uint64_t dim() const { return std::uint64_t{1} << width_; }

  std::uint64_t extract(std::uint64_t full_index) const {
    std::uint64_t v = 0;
    for (const Part& p : parts_) {
      v = (v << p.width) | ((full_index >> p.src_shift) & p.mask);
    }
    return v;
  }

  // Overwrites the subset's bit positions of `base_index` with `field_value`.
  std::uint64_t deposit(std::uint64_t field_value, std::uint64_t base_index) const {
    std::uint64_t idx = base_index;
    for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
      idx = (idx & ~(it->mask << it->src_shift)) |
            ((field_value & it->mask) << it->src_shift);
      field_value >>= it->width;
    }
    return idx;
  }

 private:
  struct Part {
    int src_shift = 0;
    int width = 0;
    std::uint64_t mask = 0;
  };
  std::vector<Part> parts_;
  int width_ = 0;
};

}  // namespace qpriv
