#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wildsim {

// Finite full binary ordered tree (every node has 0 or 2 children), stored
// as its canonical preorder code: '1' for an internal node, '0' for a leaf.
// The trivial tree is "0"; a root with two leaf children is "100".
class OrderedTree {
 public:
  static OrderedTree leaf();
  static OrderedTree node(const OrderedTree& left, const OrderedTree& right);

  // Validates the prefix property; returns nullopt on malformed codes.
  static std::optional<OrderedTree> parse(std::string_view code);

  const std::string& code() const { return code_; }
  bool is_leaf() const { return code_.size() == 1; }
  int node_count() const { return static_cast<int>(code_.size()); }
  int leaf_count() const { return (node_count() + 1) / 2; }
  int internal_count() const { return node_count() / 2; }

  // Left and right subtrees of a non-leaf tree.
  std::pair<OrderedTree, OrderedTree> children() const;

  friend bool operator==(const OrderedTree& a, const OrderedTree& b) {
    return a.code_ == b.code_;
  }

 private:
  explicit OrderedTree(std::string code) : code_(std::move(code)) {}
  std::string code_;
};

// All full binary ordered trees with node_count <= max_nodes, each exactly
// once, in code-lexicographic order. The number of trees with n leaves is
// the Catalan number C(n-1).
std::vector<OrderedTree> enumerate_trees(int max_nodes);

}  // namespace wildsim
