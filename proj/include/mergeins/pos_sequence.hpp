#ifndef MERGEINS_POS_SEQUENCE_HPP
#define MERGEINS_POS_SEQUENCE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mergeins {

// Positional sequence backed by an AVL tree ordered by position. Each node
// stores its subtree size, so insert-at-index and get-by-index run in
// O(log n). Items are never compared with each other.
//
// Nodes live in a contiguous pool and refer to each other by index, which
// keeps the structure cheap to move and avoids per-node allocation.
template <class T>
class PosSequence {
    using index_type = std::uint32_t;
    static constexpr index_type nil = static_cast<index_type>(-1);

    struct Node {
        T value;
        index_type left = nil;
        index_type right = nil;
        index_type size = 1;
        std::int8_t height = 1;
    };

public:
    using value_type = T;
    using size_type = std::size_t;

    class const_iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = T;
        using difference_type = std::ptrdiff_t;
        using pointer = const T*;
        using reference = const T&;

        const_iterator() = default;

        reference operator*() const { return seq_->nodes_[stack_.back()].value; }
        pointer operator->() const { return &**this; }

        const_iterator& operator++()
        {
            index_type n = seq_->nodes_[stack_.back()].right;
            stack_.pop_back();
            push_left(n);
            return *this;
        }
        const_iterator operator++(int)
        {
            auto copy = *this;
            ++*this;
            return copy;
        }

        friend bool operator==(const const_iterator& a, const const_iterator& b)
        {
            if (a.stack_.empty() || b.stack_.empty())
                return a.stack_.empty() == b.stack_.empty();
            return a.stack_.back() == b.stack_.back();
        }

    private:
        friend class PosSequence;

        explicit const_iterator(const PosSequence* seq) : seq_(seq)
        {
            stack_.reserve(64);
            push_left(seq->root_);
        }

        void push_left(index_type n)
        {
            while (n != nil) {
                stack_.push_back(n);
                n = seq_->nodes_[n].left;
            }
        }

        const PosSequence* seq_ = nullptr;
        std::vector<index_type> stack_;
    };

    PosSequence() = default;

    template <class It>
    PosSequence(It first, It last)
    {
        for (; first != last; ++first)
            push_back(*first);
    }

    size_type size() const noexcept { return root_ == nil ? 0 : nodes_[root_].size; }
    bool empty() const noexcept { return root_ == nil; }
    void reserve(size_type n) { nodes_.reserve(n); }

    // Tree height; 0 for the empty sequence.
    int height() const noexcept { return height_of(root_); }

    // Puts `item` at position `pos`; items previously at positions >= pos
    // move one to the right.
    void insert(size_type pos, T item)
    {
        if (pos > size())
            throw std::out_of_range("PosSequence::insert: position " + std::to_string(pos) +
                                    " exceeds length " + std::to_string(size()));
        if (nodes_.size() >= static_cast<size_type>(nil))
            throw std::length_error("PosSequence: capacity exhausted");
        nodes_.push_back(Node{std::move(item)});
        root_ = insert_at(root_, static_cast<index_type>(pos), static_cast<index_type>(nodes_.size() - 1));
    }

    void push_back(T item) { insert(size(), std::move(item)); }

    const T& get(size_type pos) const
    {
        if (pos >= size())
            throw std::out_of_range("PosSequence::get: position " + std::to_string(pos) +
                                    " out of range for length " + std::to_string(size()));
        index_type n = root_;
        auto p = static_cast<index_type>(pos);
        for (;;) {
            index_type ls = size_of(nodes_[n].left);
            if (p < ls) {
                n = nodes_[n].left;
            } else if (p == ls) {
                return nodes_[n].value;
            } else {
                p -= ls + 1;
                n = nodes_[n].right;
            }
        }
    }

    const T& operator[](size_type pos) const { return get(pos); }

    const_iterator begin() const { return const_iterator(this); }
    const_iterator end() const { return const_iterator(); }

    std::vector<T> to_vector() const { return std::vector<T>(begin(), end()); }

private:
    index_type size_of(index_type n) const noexcept { return n == nil ? 0 : nodes_[n].size; }
    int height_of(index_type n) const noexcept { return n == nil ? 0 : nodes_[n].height; }

    void update(index_type n) noexcept
    {
        Node& node = nodes_[n];
        node.size = 1 + size_of(node.left) + size_of(node.right);
        node.height = static_cast<std::int8_t>(1 + std::max(height_of(node.left), height_of(node.right)));
    }

    index_type rotate_right(index_type n) noexcept
    {
        index_type l = nodes_[n].left;
        nodes_[n].left = nodes_[l].right;
        nodes_[l].right = n;
        update(n);
        update(l);
        return l;
    }

    index_type rotate_left(index_type n) noexcept
    {
        index_type r = nodes_[n].right;
        nodes_[n].right = nodes_[r].left;
        nodes_[r].left = n;
        update(n);
        update(r);
        return r;
    }

    index_type rebalance(index_type n) noexcept
    {
        update(n);
        int balance = height_of(nodes_[n].left) - height_of(nodes_[n].right);
        if (balance > 1) {
            index_type l = nodes_[n].left;
            if (height_of(nodes_[l].left) < height_of(nodes_[l].right))
                nodes_[n].left = rotate_left(l);
            return rotate_right(n);
        }
        if (balance < -1) {
            index_type r = nodes_[n].right;
            if (height_of(nodes_[r].right) < height_of(nodes_[r].left))
                nodes_[n].right = rotate_right(r);
            return rotate_left(n);
        }
        return n;
    }

    // Depth is bounded by the AVL height (< 1.45 log2 n), so recursion is fine.
    index_type insert_at(index_type n, index_type pos, index_type fresh)
    {
        if (n == nil)
            return fresh;
        index_type ls = size_of(nodes_[n].left);
        if (pos <= ls) {
            index_type child = insert_at(nodes_[n].left, pos, fresh);
            nodes_[n].left = child;
        } else {
            index_type child = insert_at(nodes_[n].right, pos - ls - 1, fresh);
            nodes_[n].right = child;
        }
        return rebalance(n);
    }

    std::vector<Node> nodes_;
    index_type root_ = nil;
};

} // namespace mergeins

#endif // MERGEINS_POS_SEQUENCE_HPP
