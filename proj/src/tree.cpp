#include "wildsim/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace wildsim {

OrderedTree OrderedTree::leaf() { return OrderedTree("0"); }

OrderedTree OrderedTree::node(const OrderedTree& left, const OrderedTree& right) {
  std::string code;
  code.reserve(1 + left.code_.size() + right.code_.size());
  code.push_back('1');
  code += left.code_;
  code += right.code_;
  return OrderedTree(std::move(code));
}

std::optional<OrderedTree> OrderedTree::parse(std::string_view code) {
  if (code.empty()) return std::nullopt;
  // One slot is open for the root; '1' fills a slot and opens two, '0'
  // fills one. The code is valid iff the open count reaches zero exactly at
  // the end.
  long open = 1;
  for (size_t i = 0; i < code.size(); ++i) {
    if (code[i] == '1') {
      open += 1;
    } else if (code[i] == '0') {
      open -= 1;
    } else {
      return std::nullopt;
    }
    if (open == 0 && i + 1 != code.size()) return std::nullopt;
  }
  if (open != 0) return std::nullopt;
  return OrderedTree(std::string(code));
}

std::pair<OrderedTree, OrderedTree> OrderedTree::children() const {
  if (is_leaf()) {
    throw std::logic_error("leaf tree has no children");
  }
  long open = 1;
  size_t i = 1;
  for (; i < code_.size(); ++i) {
    open += code_[i] == '1' ? 1 : -1;
    if (open == 0) break;
  }
  return {OrderedTree(code_.substr(1, i)), OrderedTree(code_.substr(i + 1))};
}

std::vector<OrderedTree> enumerate_trees(int max_nodes) {
  if (max_nodes < 1) {
    throw std::invalid_argument("enumerate_trees needs max_nodes >= 1");
  }
  const int max_leaves = (max_nodes + 1) / 2;
  // by_leaves[l] = all trees with exactly l leaves (2l-1 nodes).
  std::vector<std::vector<OrderedTree>> by_leaves(max_leaves + 1);
  if (max_leaves >= 1) by_leaves[1].push_back(OrderedTree::leaf());
  for (int l = 2; l <= max_leaves; ++l) {
    for (int k = 1; k <= l - 1; ++k) {
      for (const auto& left : by_leaves[k]) {
        for (const auto& right : by_leaves[l - k]) {
          by_leaves[l].push_back(OrderedTree::node(left, right));
        }
      }
    }
  }
  std::vector<OrderedTree> all;
  for (int l = 1; l <= max_leaves; ++l) {
    all.insert(all.end(), by_leaves[l].begin(), by_leaves[l].end());
  }
  std::sort(all.begin(), all.end(), [](const OrderedTree& a, const OrderedTree& b) {
    return a.code() < b.code();
  });
  return all;
}

}  // namespace wildsim
