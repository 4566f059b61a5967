#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "sghh/scalar.hpp"

namespace sghh {

using Index = std::uint64_t;

struct Entry {
    Index idx;
    Scalar val;
};

// Sorted by index, no stored zeros (after normalize()).
class SparseVec {
public:
    SparseVec() = default;

    // unsorted append; call normalize() before reading
    void push(Index i, const Scalar& c) {
        if (!c.is_zero()) e_.push_back({i, c});
    }
    void normalize();

    bool empty() const { return e_.empty(); }
    std::size_t size() const { return e_.size(); }
    const std::vector<Entry>& entries() const { return e_; }
    auto begin() const { return e_.begin(); }
    auto end() const { return e_.end(); }
    const Entry& front() const { return e_.front(); }
    void clear() { e_.clear(); }

    Scalar at(Index i) const;
    // this += c * x, both normalized
    void axpy(const Scalar& c, const SparseVec& x);
    SparseVec scaled(const Scalar& c) const;
    SparseVec shifted(Index offset) const;

    void add(const SparseVec& x);
    void sub(const SparseVec& x);
    SparseVec& operator+=(const SparseVec& o) { add(o); return *this; }
    SparseVec& operator-=(const SparseVec& o) { sub(o); return *this; }
    friend SparseVec operator+(SparseVec a, const SparseVec& b);
    friend SparseVec operator-(SparseVec a, const SparseVec& b);
    friend bool operator==(const SparseVec& a, const SparseVec& b);

private:
    std::vector<Entry> e_;
};

}  // namespace sghh
