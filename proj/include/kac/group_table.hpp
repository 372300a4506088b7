#pragma once

#include <complex>
#include <string>
#include <vector>

namespace kac {

/// Finite group given by its multiplication table; elements are 0..order-1.
class GroupTable {
 public:
  GroupTable() = default;
  /// Validates closure, associativity and the identity/inverse laws.
  GroupTable(std::vector<std::vector<int>> mul, int identity, std::string name = {});

  int order() const { return static_cast<int>(mul_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return mul_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  const std::vector<std::vector<int>>& table() const { return mul_; }
  const std::vector<int>& inverses() const { return inverse_; }
  const std::string& name() const { return name_; }

  bool is_abelian() const;

  /// Subgroup generated by the given elements, as a sorted element list.
  std::vector<int> generated_subgroup(const std::vector<int>& generators) const;

  /// All subgroups, sorted by order and then lexicographically.
  std::vector<std::vector<int>> subgroups() const;

  /// Multiplication table of a subgroup, reindexed to 0..|H|-1 in the order of
  /// `elements`.
  GroupTable restrict_to(const std::vector<int>& elements) const;

  /// Left cosets gH (left = true) or right cosets Hg, each sorted, in order of
  /// their smallest element.
  std::vector<std::vector<int>> cosets(const std::vector<int>& subgroup, bool left) const;

 private:
  std::vector<std::vector<int>> mul_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::string name_;
};

GroupTable cyclic_group(int n);
GroupTable direct_product(const GroupTable& a, const GroupTable& b);

/// One-dimensional characters g -> U(1), as value tables indexed by element.
/// Enumerated by their values on a greedy generating set; for a cyclic table
/// generated by 1 this yields chi_k(g) = exp(2 pi i k g / n) for k = 0..n-1.
std::vector<std::vector<std::complex<double>>> linear_characters(const GroupTable& t);

}  // namespace kac
