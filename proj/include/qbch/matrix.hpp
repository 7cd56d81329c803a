// Small dense square matrices for desk-scale numeric checks.

#ifndef QBCH_MATRIX_HPP
#define QBCH_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace qbch {

/// Square matrix, row-major. Entries must stay finite.
template <class T>
class BasicMatrix {
public:
    using value_type = T;

    BasicMatrix() = default;
    explicit BasicMatrix(int dim) : dim_(check_dim(dim)), a_(static_cast<std::size_t>(dim) * dim, T(0)) {}

    BasicMatrix(int dim, std::vector<T> entries) : dim_(check_dim(dim)), a_(std::move(entries)) {
        if (a_.size() != static_cast<std::size_t>(dim) * dim)
            throw std::invalid_argument("matrix: expected " + std::to_string(dim * dim) + " entries, got " +
                                        std::to_string(a_.size()));
        require_finite("matrix");
    }

    BasicMatrix(std::initializer_list<std::initializer_list<T>> rows) {
        dim_ = check_dim(static_cast<int>(rows.size()));
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != dim_) throw std::invalid_argument("matrix: rows must be square");
            a_.insert(a_.end(), r.begin(), r.end());
        }
        require_finite("matrix");
    }

    static BasicMatrix identity(int dim) {
        BasicMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = T(1);
        return m;
    }

    static BasicMatrix diagonal(const std::vector<T>& d) {
        BasicMatrix m(static_cast<int>(d.size()));
        for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
        return m;
    }

    int dim() const { return dim_; }
    const std::vector<T>& entries() const { return a_; }

    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

    bool is_finite() const {
        if constexpr (std::is_floating_point_v<T>) {
            for (const T& v : a_)
                if (!std::isfinite(v)) return false;
        }
        return true;
    }

    void require_finite(const char* where) const {
        if (!is_finite()) throw std::invalid_argument(std::string(where) + ": non-finite matrix entry");
    }

    bool is_zero() const {
        for (const T& v : a_)
            if (v != T(0)) return false;
        return true;
    }

    BasicMatrix transpose() const {
        BasicMatrix t(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    T frobenius() const {
        using std::sqrt;
        T s(0);
        for (const T& v : a_) s += v * v;
        return T(sqrt(s));
    }

    T max_abs() const {
        using std::abs;
        T m(0);
        for (const T& v : a_) {
            const T a(abs(v));
            if (a > m) m = a;
        }
        return m;
    }

    BasicMatrix& operator+=(const BasicMatrix& b) {
        same_dim(b, "+");
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
        return *this;
    }
    BasicMatrix& operator-=(const BasicMatrix& b) {
        same_dim(b, "-");
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= b.a_[i];
        return *this;
    }
    BasicMatrix& operator*=(T s) {
        for (T& v : a_) v *= s;
        return *this;
    }

    friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
    friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
    friend BasicMatrix operator-(BasicMatrix a) { return a *= T(-1); }
    friend BasicMatrix operator*(T s, BasicMatrix a) { return a *= s; }
    friend BasicMatrix operator*(BasicMatrix a, T s) { return a *= s; }

    friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
        a.same_dim(b, "*");
        const int n = a.dim_;
        BasicMatrix c(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

    template <class U>
    BasicMatrix<U> cast() const {
        std::vector<U> e;
        e.reserve(a_.size());
        for (const T& v : a_) e.emplace_back(v);
        return BasicMatrix<U>(dim_, std::move(e));
    }

private:
    static int check_dim(int dim) {
        if (dim < 1) throw std::invalid_argument("matrix: dimension must be positive");
        return dim;
    }

    void same_dim(const BasicMatrix& b, const char* op) const {
        if (dim_ != b.dim_)
            throw std::invalid_argument(std::string("matrix ") + op + ": dimension mismatch " +
                                        std::to_string(dim_) + " vs " + std::to_string(b.dim_));
    }

    int dim_ = 0;
    std::vector<T> a_;
};

using DenseMatrix = BasicMatrix<double>;

template <class T>
BasicMatrix<T> commutator(const BasicMatrix<T>& a, const BasicMatrix<T>& b) {
    return a * b - b * a;
}

/// a^k for k >= 0.
template <class T>
BasicMatrix<T> matrix_power(const BasicMatrix<T>& a, int k) {
    if (k < 0) throw std::invalid_argument("matrix_power: negative exponent");
    BasicMatrix<T> r = BasicMatrix<T>::identity(a.dim());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

}  // namespace qbch

#endif  // QBCH_MATRIX_HPP
