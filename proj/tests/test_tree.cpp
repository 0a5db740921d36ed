#include <doctest.h>

#include <set>

#include "wildsim/tree.hpp"

using namespace wildsim;

TEST_CASE("codec basics") {
  const OrderedTree leaf = OrderedTree::leaf();
  CHECK(leaf.code() == "0");
  CHECK(leaf.leaf_count() == 1);
  CHECK(leaf.node_count() == 1);
  CHECK(leaf.internal_count() == 0);

  const OrderedTree two = OrderedTree::node(leaf, leaf);
  CHECK(two.code() == "100");
  CHECK(two.leaf_count() == 2);
  CHECK(two.internal_count() == 1);

  const OrderedTree left_comb = OrderedTree::node(two, leaf);
  CHECK(left_comb.code() == "11000");
  const OrderedTree right_comb = OrderedTree::node(leaf, two);
  CHECK(right_comb.code() == "10100");
  CHECK(left_comb.leaf_count() == 3);

  const auto [l, r] = left_comb.children();
  CHECK(l == two);
  CHECK(r == leaf);
}

TEST_CASE("parse validates the prefix property") {
  CHECK(OrderedTree::parse("0").has_value());
  CHECK(OrderedTree::parse("100").has_value());
  CHECK(OrderedTree::parse("1100100").has_value());
  for (const char* bad : {"", "1", "00", "01", "10", "101", "1000", "100100", "x"}) {
    CHECK_FALSE(OrderedTree::parse(bad).has_value());
  }
}

TEST_CASE("exhaustive round-trip up to 9 nodes") {
  for (const OrderedTree& t : enumerate_trees(9)) {
    const auto parsed = OrderedTree::parse(t.code());
    REQUIRE(parsed.has_value());
    CHECK(*parsed == t);
    CHECK(t.node_count() == 2 * t.leaf_count() - 1);
    if (!t.is_leaf()) {
      const auto [l, r] = t.children();
      CHECK(OrderedTree::node(l, r) == t);
    }
  }
}

TEST_CASE("enumeration counts are Catalan numbers") {
  CHECK(enumerate_trees(1).size() == 1);
  CHECK(enumerate_trees(7).size() == 9);  // 1 + 1 + 2 + 5

  const auto trees = enumerate_trees(11);
  int by_leaves[7] = {};
  for (const auto& t : trees) by_leaves[t.leaf_count()] += 1;
  CHECK(by_leaves[1] == 1);
  CHECK(by_leaves[2] == 1);
  CHECK(by_leaves[3] == 2);
  CHECK(by_leaves[4] == 5);
  CHECK(by_leaves[5] == 14);
  CHECK(by_leaves[6] == 42);

  // Every tree exactly once, in code-lexicographic order.
  std::set<std::string> codes;
  for (const auto& t : trees) codes.insert(t.code());
  CHECK(codes.size() == trees.size());
  for (size_t i = 1; i < trees.size(); ++i) {
    CHECK(trees[i - 1].code() < trees[i].code());
  }
}
