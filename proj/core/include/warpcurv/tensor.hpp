#pragma once

#include <cassert>
#include <vector>

namespace warpcurv {

/// Dense rank-3 array with uniform extent n per index.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

    double& operator()(int i, int j, int k) {
        return data_[idx(i, j, k)];
    }
    double operator()(int i, int j, int k) const {
        return data_[idx(i, j, k)];
    }
    int extent() const noexcept { return n_; }

private:
    std::size_t idx(int i, int j, int k) const {
        assert(i >= 0 && i < n_ && j >= 0 && j < n_ && k >= 0 && k < n_);
        return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
    }
    int n_ = 0;
    std::vector<double> data_;
};

/// Dense rank-4 array with uniform extent n per index.
class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(int n)
        : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

    double& operator()(int i, int j, int k, int l) {
        return data_[idx(i, j, k, l)];
    }
    double operator()(int i, int j, int k, int l) const {
        return data_[idx(i, j, k, l)];
    }
    int extent() const noexcept { return n_; }

private:
    std::size_t idx(int i, int j, int k, int l) const {
        assert(i >= 0 && i < n_ && j >= 0 && j < n_ && k >= 0 && k < n_ &&
               l >= 0 && l < n_);
        return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
    }
    int n_ = 0;
    std::vector<double> data_;
};

}  // namespace warpcurv
