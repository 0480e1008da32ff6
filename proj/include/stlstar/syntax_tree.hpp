// Indexed syntax tree.
//
// Nodes are numbered so that every child index is strictly greater than its
// parent index (root = 0, depth first, left before right), which makes each
// subtree a contiguous index range and lets evaluation walk from the highest
// index down.
//
// For every freeze variable x the tree records subtree(x): the contiguous
// range of nodes strictly below x's freeze node, up to but not into nested
// freeze subtrees (the nested freeze node itself belongs to the outer
// subtree). Freeze variables are ordered outermost first; the monitor
// requires them to form a chain (at most one nested freeze per subtree).

#ifndef STLSTAR_SYNTAX_TREE_HPP
#define STLSTAR_SYNTAX_TREE_HPP

#include <stdexcept>
#include <vector>

#include "formula.hpp"

namespace stlstar {

struct TreeNode {
  const Formula* formula = nullptr;
  NodeKind kind = NodeKind::Atom;
  int parent = -1;
  int left = -1;   // child indices, -1 if absent
  int right = -1;
  int subtree_end = 0;  // last index of the subtree rooted here (inclusive)
  int freeze_level = 0; // number of enclosing freeze nodes (including self for Freeze)
};

struct FreezeSubtree {
  FrozenKey var = 0;
  int freeze_node = -1;  // the Freeze node binding var ("parent" of the range)
  int root = -1;         // first node of the range (root of the subformula)
  int first = -1;        // == root
  int last = -1;         // last node of the range, inclusive
};

class SyntaxTree {
public:
  explicit SyntaxTree(FormulaPtr f) : formula_(std::move(f)) {
    check_bindings(*formula_);
    build(formula_.get(), -1, 0);
    index_freezes();
  }

  const FormulaPtr& formula() const { return formula_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const TreeNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }

  // Freeze variables, outermost first. Levels are 1-based in the monitor.
  int freeze_count() const { return static_cast<int>(freezes_.size()); }
  const FreezeSubtree& freeze(int level1) const {
    return freezes_[static_cast<std::size_t>(level1 - 1)];
  }

  // Nodes above the outermost freeze node (the whole tree when no freeze).
  int top_first() const { return 0; }
  int top_last() const {
    return freezes_.empty() ? size() - 1 : freezes_.front().freeze_node;
  }

  // True when node j lies strictly inside the outermost freeze subtree,
  // i.e. it is evaluated per instantiation rather than at the top level.
  bool inside_freeze(int j) const {
    if (freezes_.empty()) return false;
    int fn = freezes_.front().freeze_node;
    return j > fn && j <= nodes_[static_cast<std::size_t>(fn)].subtree_end;
  }

private:
  int build(const Formula* f, int parent, int level) {
    int idx = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    nodes_[static_cast<std::size_t>(idx)].formula = f;
    nodes_[static_cast<std::size_t>(idx)].kind = f->kind;
    nodes_[static_cast<std::size_t>(idx)].parent = parent;
    int lvl = level + (f->kind == NodeKind::Freeze ? 1 : 0);
    nodes_[static_cast<std::size_t>(idx)].freeze_level = lvl;
    if (f->left)
      nodes_[static_cast<std::size_t>(idx)].left = build(f->left.get(), idx, lvl);
    if (f->right)
      nodes_[static_cast<std::size_t>(idx)].right = build(f->right.get(), idx, lvl);
    nodes_[static_cast<std::size_t>(idx)].subtree_end =
        static_cast<int>(nodes_.size()) - 1;
    return idx;
  }

  void index_freezes() {
    // Freeze nodes in index order are outermost first for a chain; verify
    // the chain property while collecting.
    std::vector<int> freeze_nodes;
    for (int i = 0; i < size(); ++i)
      if (nodes_[static_cast<std::size_t>(i)].kind == NodeKind::Freeze)
        freeze_nodes.push_back(i);
    for (std::size_t k = 1; k < freeze_nodes.size(); ++k) {
      int prev = freeze_nodes[k - 1];
      int curr = freeze_nodes[k];
      if (curr > nodes_[static_cast<std::size_t>(prev)].subtree_end)
        throw std::runtime_error(
            "freeze variables must form a nested chain for monitoring");
    }
    for (std::size_t k = 0; k < freeze_nodes.size(); ++k) {
      int fn = freeze_nodes[k];
      FreezeSubtree sub;
      sub.var = nodes_[static_cast<std::size_t>(fn)].formula->var;
      sub.freeze_node = fn;
      sub.root = fn + 1;  // body root directly follows the freeze node
      sub.first = sub.root;
      // range ends at the nested freeze node (inclusive) or the subtree end
      int end = nodes_[static_cast<std::size_t>(fn)].subtree_end;
      if (k + 1 < freeze_nodes.size()) end = freeze_nodes[k + 1];
      sub.last = end;
      freezes_.push_back(sub);
    }
  }

  FormulaPtr formula_;
  std::vector<TreeNode> nodes_;
  std::vector<FreezeSubtree> freezes_;
};

}  // namespace stlstar

#endif  // STLSTAR_SYNTAX_TREE_HPP
