#pragma once

#include <deque>
#include <mutex>
#include <unordered_set>

namespace justness::detail {

/// Append-only hash-consing table. Nodes live for the whole program, so
/// handles are plain pointers.
template <class Node, class Hash, class Eq>
class Interner {
public:
    const Node* intern(Node&& candidate)
    {
        std::lock_guard lock(mu_);
        if (auto it = index_.find(&candidate); it != index_.end()) return *it;
        store_.push_back(std::move(candidate));
        const Node* p = &store_.back();
        index_.insert(p);
        return p;
    }

    std::size_t size() const
    {
        std::lock_guard lock(mu_);
        return store_.size();
    }

private:
    struct PtrHash {
        std::size_t operator()(const Node* n) const { return Hash()(*n); }
    };
    struct PtrEq {
        bool operator()(const Node* a, const Node* b) const { return Eq()(*a, *b); }
    };
    mutable std::mutex mu_;
    std::deque<Node> store_;
    std::unordered_set<const Node*, PtrHash, PtrEq> index_;
};

} // namespace justness::detail
