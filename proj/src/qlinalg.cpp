#include "obstr/qlinalg.hpp"

namespace obstr {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw input_error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw input_error("rational with zero denominator: " + s);
        return Rational(num, den);
    } catch (const std::exception&) {
        throw input_error("malformed rational literal: " + s);
    }
}

std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

Integer binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Integer acc = 1;
    for (long long i = 1; i <= k; ++i) {
        acc *= (n - k + i);
        acc /= i;
    }
    return acc;
}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool QMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMatrix QMatrix::mul(const QMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw input_error("matrix product dimension mismatch");
    QMatrix p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& x = at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Rational& y = rhs.at(k, j);
                if (y != 0) p.at(i, j) += x * y;
            }
        }
    return p;
}

QMatrix QMatrix::operator+(const QMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw input_error("matrix sum dimension mismatch");
    QMatrix s = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] += rhs.a_[i];
    return s;
}

QMatrix QMatrix::operator-(const QMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw input_error("matrix difference dimension mismatch");
    QMatrix s = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] -= rhs.a_[i];
    return s;
}

QMatrix QMatrix::scaled(const Rational& c) const {
    QMatrix s = *this;
    for (auto& x : s.a_) x *= c;
    return s;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw input_error("matrix apply dimension mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0 && v[j] != 0) out[i] += at(i, j) * v[j];
    return out;
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(std::vector<std::vector<Rational>>& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<Rational>> to_rows(const QMatrix& m) {
    std::vector<std::vector<Rational>> rows(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m.at(i, j);
    return rows;
}

}  // namespace

std::size_t QMatrix::rank() const {
    auto rows = to_rows(*this);
    return echelon(rows).size();
}

std::optional<std::vector<Rational>> QMatrix::solve(const std::vector<Rational>& b) const {
    if (b.size() != rows_) throw input_error("solve dimension mismatch");
    std::vector<std::vector<Rational>> aug(rows_, std::vector<Rational>(cols_ + 1));
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug[i][j] = at(i, j);
        aug[i][cols_] = b[i];
    }
    auto pivots = echelon(aug);
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // inconsistent
    std::vector<Rational> x(cols_);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols_];
    return x;
}

std::vector<std::vector<Rational>> QMatrix::kernel_basis() const {
    auto rows = to_rows(*this);
    auto pivots = echelon(rows);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols_);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t cohomology_dim(const QMatrix& d_out, const QMatrix& d_in) {
    if (d_out.cols() != d_in.rows())
        throw input_error("cohomology_dim: differentials are not composable");
    if (!d_out.mul(d_in).is_zero())
        throw validation_error("cohomology_dim: not a complex (d_out * d_in != 0)");
    std::size_t ker = d_out.cols() - d_out.rank();
    return ker - d_in.rank();
}

}  // namespace obstr
