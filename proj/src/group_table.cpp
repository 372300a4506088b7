#include "kac/group_table.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "kac/error.hpp"

namespace kac {

GroupTable::GroupTable(std::vector<std::vector<int>> mul, int identity, std::string name)
    : mul_(std::move(mul)), identity_(identity), name_(std::move(name)) {
  const int n = static_cast<int>(mul_.size());
  if (n == 0) throw Error(ErrorCode::InvalidTable, "empty table");
  if (identity_ < 0 || identity_ >= n) throw Error(ErrorCode::InvalidTable, "identity out of range");
  for (const auto& row : mul_) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::InvalidTable, "table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error(ErrorCode::InvalidTable, "entry out of range");
  }
  for (int a = 0; a < n; ++a)
    if (mul_[identity_][a] != a || mul_[a][identity_] != a)
      throw Error(ErrorCode::InvalidTable, "identity law fails at " + std::to_string(a));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
          throw Error(ErrorCode::InvalidTable, "associativity fails");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (mul_[a][b] == identity_ && mul_[b][a] == identity_) inverse_[a] = b;
    if (inverse_[a] < 0) throw Error(ErrorCode::InvalidTable, "no inverse for " + std::to_string(a));
  }
}

bool GroupTable::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < a; ++b)
      if (mul_[a][b] != mul_[b][a]) return false;
  return true;
}

std::vector<int> GroupTable::generated_subgroup(const std::vector<int>& generators) const {
  std::vector<char> in(order(), 0);
  std::vector<int> members{identity_};
  in[identity_] = 1;
  // closure under right multiplication by generators suffices in a finite group
  for (std::size_t i = 0; i < members.size(); ++i)
    for (int g : generators) {
      int h = mul_[members[i]][g];
      if (!in[h]) {
        in[h] = 1;
        members.push_back(h);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<std::vector<int>> GroupTable::subgroups() const {
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> frontier{{identity_}};
  found.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& h : frontier)
      for (int g = 0; g < order(); ++g) {
        if (std::binary_search(h.begin(), h.end(), g)) continue;
        auto gens = h;
        gens.push_back(g);
        auto s = generated_subgroup(gens);
        if (found.insert(s).second) next.push_back(std::move(s));
      }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

GroupTable GroupTable::restrict_to(const std::vector<int>& elements) const {
  const int m = static_cast<int>(elements.size());
  std::vector<int> pos(order(), -1);
  for (int i = 0; i < m; ++i) pos[elements[i]] = i;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = pos[mul_[elements[i]][elements[j]]];
      if (p < 0) throw Error(ErrorCode::InvalidTable, "element list is not closed under multiplication");
      t[i][j] = p;
    }
  if (pos[identity_] < 0) throw Error(ErrorCode::InvalidTable, "subgroup misses the identity");
  return GroupTable(std::move(t), pos[identity_], name_ + "-sub");
}

std::vector<std::vector<int>> GroupTable::cosets(const std::vector<int>& subgroup, bool left) const {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  for (int g = 0; g < order(); ++g) {
    std::vector<int> c;
    for (int h : subgroup) c.push_back(left ? mul_[g][h] : mul_[h][g]);
    std::sort(c.begin(), c.end());
    if (seen.insert(c).second) out.push_back(std::move(c));
  }
  return out;
}

GroupTable cyclic_group(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidTable, "cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return GroupTable(std::move(t), 0, "Z" + std::to_string(n));
}

GroupTable direct_product(const GroupTable& a, const GroupTable& b) {
  const int na = a.order(), nb = b.order();
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2) t[a1 * nb + b1][a2 * nb + b2] = a.mul(a1, a2) * nb + b.mul(b1, b2);
  return GroupTable(std::move(t), a.identity() * nb + b.identity(), a.name() + "x" + b.name());
}

namespace {

int element_order(const GroupTable& t, int g) {
  int k = 1;
  for (int h = g; h != t.identity(); h = t.mul(h, g)) ++k;
  return k;
}

}  // namespace

std::vector<std::vector<std::complex<double>>> linear_characters(const GroupTable& t) {
  // greedy generating set: smallest element outside the current subgroup
  std::vector<int> gens;
  std::vector<int> sub{t.identity()};
  while (static_cast<int>(sub.size()) < t.order()) {
    int g = 0;
    while (std::binary_search(sub.begin(), sub.end(), g)) ++g;
    gens.push_back(g);
    sub = t.generated_subgroup(gens);
  }

  // words: every element as a product of generators, found by BFS
  std::vector<std::vector<int>> word(t.order());
  std::vector<char> seen(t.order(), 0);
  std::vector<int> queue{t.identity()};
  seen[t.identity()] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      int h = t.mul(queue[i], gens[k]);
      if (!seen[h]) {
        seen[h] = 1;
        word[h] = word[queue[i]];
        word[h].push_back(static_cast<int>(k));
        queue.push_back(h);
      }
    }

  std::vector<int> orders;
  for (int g : gens) orders.push_back(element_order(t, g));

  std::vector<std::vector<std::complex<double>>> chars;
  std::vector<int> exps(gens.size(), 0);
  const double two_pi = 2 * std::numbers::pi;
  while (true) {
    std::vector<std::complex<double>> value(t.order());
    for (int g = 0; g < t.order(); ++g) {
      double phase = 0;
      for (int k : word[g]) phase += two_pi * exps[k] / orders[k];
      value[g] = std::polar(1.0, phase);
    }
    bool hom = true;
    for (int a = 0; a < t.order() && hom; ++a)
      for (int b = 0; b < t.order() && hom; ++b)
        hom = std::abs(value[t.mul(a, b)] - value[a] * value[b]) < 1e-9;
    if (hom) chars.push_back(std::move(value));

    std::size_t k = 0;
    while (k < exps.size() && ++exps[k] == orders[k]) exps[k++] = 0;
    if (k == exps.size()) break;
  }
  return chars;
}

}  // namespace kac
