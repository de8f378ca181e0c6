#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlal {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Path of child selectors from the root: 0 for the body/operator, 1 for
/// the operand of an application.
using Occurrence = std::vector<std::uint8_t>;

/// "e" for the root, else dot-separated selectors.
std::string to_string(const Occurrence& path);

/// Term tree stored in a vector. Nodes are appended parent-first, so ids
/// follow pre-order when built recursively.
template <class Node>
class TermArena {
public:
    NodeId add(Node n) {
        nodes_.push_back(std::move(n));
        return static_cast<NodeId>(nodes_.size() - 1);
    }

    void link(NodeId parent, int slot, NodeId child) {
        nodes_[parent].child[slot] = child;
        nodes_[child].parent = parent;
    }

    void set_root(NodeId r) { root_ = r; }
    NodeId root() const { return root_; }
    std::size_t size() const { return nodes_.size(); }
    const Node& node(NodeId id) const { return nodes_.at(id); }
    Node& mutable_node(NodeId id) { return nodes_.at(id); }

    Occurrence occurrence(NodeId id) const {
        Occurrence path;
        for (NodeId n = id; n != root_; n = nodes_.at(n).parent) {
            NodeId p = nodes_.at(n).parent;
            if (p == kNoNode) throw std::out_of_range("node is not below the root");
            path.push_back(nodes_[p].child[0] == n ? 0 : 1);
        }
        return {path.rbegin(), path.rend()};
    }

    NodeId at(const Occurrence& path) const {
        NodeId n = root_;
        for (auto sel : path) {
            if (sel > 1 || nodes_.at(n).child[sel] == kNoNode)
                throw std::out_of_range("invalid occurrence " + to_string(path));
            n = nodes_[n].child[sel];
        }
        return n;
    }

    /// True when `n` lies in the subtree rooted at `ancestor` (inclusive).
    bool contains(NodeId ancestor, NodeId n) const {
        for (; n != kNoNode; n = nodes_.at(n).parent)
            if (n == ancestor) return true;
        return false;
    }

    /// Subtree nodes in pre-order.
    std::vector<NodeId> subtree(NodeId top) const {
        std::vector<NodeId> out, stack{top};
        while (!stack.empty()) {
            NodeId n = stack.back();
            stack.pop_back();
            out.push_back(n);
            const Node& nd = nodes_[n];
            if (nd.child[1] != kNoNode) stack.push_back(nd.child[1]);
            if (nd.child[0] != kNoNode) stack.push_back(nd.child[0]);
        }
        return out;
    }

private:
    std::vector<Node> nodes_;
    NodeId root_ = kNoNode;
};

}  // namespace dlal
