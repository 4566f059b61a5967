#include "sghh/sparse.hpp"

namespace sghh {

void SparseVec::normalize() {
    std::sort(e_.begin(), e_.end(), [](const Entry& a, const Entry& b) { return a.idx < b.idx; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < e_.size();) {
        Entry acc = e_[i];
        std::size_t j = i + 1;
        for (; j < e_.size() && e_[j].idx == acc.idx; ++j) acc.val += e_[j].val;
        if (!acc.val.is_zero()) e_[out++] = std::move(acc);
        i = j;
    }
    e_.resize(out);
}

Scalar SparseVec::at(Index i) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), i, [](const Entry& a, Index k) { return a.idx < k; });
    if (it != e_.end() && it->idx == i) return it->val;
    return Scalar{};
}

void SparseVec::add(const SparseVec& x) {
    if (!x.empty()) axpy(x.front().val.field().one(), x);
}

void SparseVec::sub(const SparseVec& x) {
    if (!x.empty()) axpy(-x.front().val.field().one(), x);
}

void SparseVec::axpy(const Scalar& c, const SparseVec& x) {
    if (x.empty() || c.is_zero()) return;
    std::vector<Entry> out;
    out.reserve(e_.size() + x.e_.size());
    std::size_t i = 0, j = 0;
    while (i < e_.size() || j < x.e_.size()) {
        if (j == x.e_.size() || (i < e_.size() && e_[i].idx < x.e_[j].idx)) {
            out.push_back(std::move(e_[i++]));
        } else {
            Scalar v = c * x.e_[j].val;
            if (i < e_.size() && e_[i].idx == x.e_[j].idx) {
                v += e_[i].val;
                ++i;
            }
            if (!v.is_zero()) out.push_back({x.e_[j].idx, std::move(v)});
            ++j;
        }
    }
    e_ = std::move(out);
}

SparseVec SparseVec::scaled(const Scalar& c) const {
    SparseVec r;
    if (c.is_zero()) return r;
    r.e_.reserve(e_.size());
    for (const auto& t : e_) r.e_.push_back({t.idx, t.val * c});
    return r;
}

SparseVec SparseVec::shifted(Index offset) const {
    SparseVec r = *this;
    for (auto& t : r.e_) t.idx += offset;
    return r;
}

SparseVec operator+(SparseVec a, const SparseVec& b) {
    a.add(b);
    return a;
}

SparseVec operator-(SparseVec a, const SparseVec& b) {
    a.sub(b);
    return a;
}

bool operator==(const SparseVec& a, const SparseVec& b) {
    if (a.e_.size() != b.e_.size()) return false;
    for (std::size_t i = 0; i < a.e_.size(); ++i)
        if (a.e_[i].idx != b.e_[i].idx || !(a.e_[i].val == b.e_[i].val)) return false;
    return true;
}

}  // namespace sghh
