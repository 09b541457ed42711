#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace obstr {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// malformed or out-of-contract input (CLI exit code 2)
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a mathematical validation that failed (CLI exit code 1)
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& r);

// C(n, k) over arbitrary precision; zero outside 0 <= k <= n.
Integer binomial(long long n, long long k);

// Dense matrix over Q, column-vector convention: an r x c matrix maps Q^c -> Q^r.
class QMatrix {
  public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const QMatrix& o) const = default;

    QMatrix transpose() const;
    QMatrix mul(const QMatrix& rhs) const;
    QMatrix operator+(const QMatrix& rhs) const;
    QMatrix operator-(const QMatrix& rhs) const;
    QMatrix scaled(const Rational& c) const;

    std::vector<Rational> apply(const std::vector<Rational>& v) const;

    std::size_t rank() const;

    // Some x with A x = b when consistent.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

    // Basis of ker(A), one column vector per basis element.
    std::vector<std::vector<Rational>> kernel_basis() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

// dim ker(d_out) - rank(d_in) for a two-step complex  U --d_in--> V --d_out--> W.
// Throws validation_error when d_out * d_in != 0.
std::size_t cohomology_dim(const QMatrix& d_out, const QMatrix& d_in);

}  // namespace obstr
