#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wildsim/errors.hpp"
#include "wildsim/rng.hpp"

namespace wildsim::detail {

// Arena for collision-history trees. Nodes hold child indices; kLeaf marks
// a leaf. One arena serves one replicate (including all nested partner
// simulations) and is reused across replicates.
class TreeArena {
 public:
  static constexpr int32_t kLeaf = -1;

  void clear() { nodes_.clear(); }

  int32_t add(int32_t left, int32_t right) {
    nodes_.push_back(Node{left, right});
    return static_cast<int32_t>(nodes_.size()) - 1;
  }

  // Canonical preorder code ('1' internal, '0' leaf) of the subtree rooted
  // at the given index.
  std::string code(int32_t root) const {
    std::string out;
    std::vector<int32_t> stack{root};
    while (!stack.empty()) {
      const int32_t cur = stack.back();
      stack.pop_back();
      if (cur == kLeaf) {
        out.push_back('0');
      } else {
        out.push_back('1');
        stack.push_back(nodes_[static_cast<size_t>(cur)].right);
        stack.push_back(nodes_[static_cast<size_t>(cur)].left);
      }
    }
    return out;
  }

 private:
  struct Node {
    int32_t left;
    int32_t right;
  };
  std::vector<Node> nodes_;
};

template <class State>
struct RecursiveOutcome {
  State state;
  uint64_t n = 0;      // collisions accumulated (internal tree nodes)
  int32_t tree = TreeArena::kLeaf;
};

// Recursive branching simulation driven by an explicit work stack. The
// depth of the partner recursion is random and unbounded, so the call stack
// is never used.
//
// Model requirements:
//   State  sample_initial(RngStream&) const;
//   double jump_rate(const State&) const;   // exponential parameter, > 0
//   State  collide(const State& self, const State& partner, RngStream&) const;
//
// The partner requested at jump j of a frame runs on the stream
// split(j) of that frame's stream, so the partner's randomness is
// independent of everything drawn so far and the whole run is reproducible.
// Throws CapExceededError once the total number of collisions would exceed
// cap.
template <class State, class Model>
RecursiveOutcome<State> run_recursive(double horizon, const Model& model,
                                      RngStream stream, uint64_t cap,
                                      TreeArena& arena) {
  struct Frame {
    double horizon;
    RngStream rng;
    uint64_t jump_index = 0;
    State state;
    double s = 0.0;
    uint64_t n = 0;
    int32_t tree = TreeArena::kLeaf;
  };

  uint64_t total_jumps = 0;
  std::vector<Frame> stack;
  {
    Frame root;
    root.horizon = horizon;
    root.rng = stream;
    root.state = model.sample_initial(root.rng);
    stack.push_back(std::move(root));
  }

  for (;;) {
    Frame& f = stack.back();
    f.s += f.rng.next_exponential(model.jump_rate(f.state));
    if (f.s < f.horizon) {
      if (++total_jumps > cap) {
        throw CapExceededError("collision cap exceeded");
      }
      Frame child;
      child.horizon = f.s;  // partner simulated at the absolute jump time
      child.rng = f.rng.split(f.jump_index++);
      child.state = model.sample_initial(child.rng);
      stack.push_back(std::move(child));
      continue;
    }
    // Frame finished: either return or fold into the parent as its partner.
    RecursiveOutcome<State> done{std::move(f.state), f.n, f.tree};
    stack.pop_back();
    if (stack.empty()) {
      return done;
    }
    Frame& parent = stack.back();
    parent.state = model.collide(parent.state, done.state, parent.rng);
    parent.n += done.n + 1;
    parent.tree = arena.add(parent.tree, done.tree);
  }
}

}  // namespace wildsim::detail
