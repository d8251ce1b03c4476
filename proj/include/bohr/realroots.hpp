#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace bohr {

/// Real polynomial in ascending-degree order: coeffs()[i] multiplies r^i.
/// Trailing exact zeros are trimmed on construction, so the zero polynomial
/// has an empty coefficient list and degree -1.
class RealPolynomial {
public:
    struct Term {
        double coeff;
        int power;
    };

    RealPolynomial() = default;
    explicit RealPolynomial(std::vector<double> coeffs);

    /// Accumulates terms exponent by exponent; repeated powers are summed.
    static RealPolynomial from_terms(std::initializer_list<Term> terms);
    static RealPolynomial from_terms(std::span<const Term> terms);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    double operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0.0; }
    double leading() const { return coeffs_.back(); }
    double max_abs_coeff() const noexcept;

    double operator()(double x) const noexcept;

    RealPolynomial derivative() const;
    RealPolynomial monic() const;
    /// Divides by the largest coefficient magnitude.
    RealPolynomial normalized() const;
    /// Zeroes coefficients whose magnitude is at most `threshold`, then trims.
    RealPolynomial chopped(double threshold) const;

    friend RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b);
    friend RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b);
    friend RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b);
    friend RealPolynomial operator*(double s, const RealPolynomial& p);

    friend bool operator==(const RealPolynomial&, const RealPolynomial&) = default;

private:
    void trim();

    std::vector<double> coeffs_;
};

struct PolynomialDivision {
    RealPolynomial quotient;
    RealPolynomial remainder;
};

/// Long division; remainder coefficients below `rel_tol` times the dividend's
/// largest coefficient are treated as zero.
PolynomialDivision divide(const RealPolynomial& num, const RealPolynomial& den, double rel_tol = 1e-10);

/// Monic gcd by the Euclidean algorithm with relative remainder chopping.
RealPolynomial polynomial_gcd(const RealPolynomial& a, const RealPolynomial& b, double rel_tol = 1e-10);

struct SquareFreeFactor {
    RealPolynomial factor; // monic, square-free
    int multiplicity;
};

/// Yun's decomposition p = lc * prod factor_i^i. Throws EmptyPolynomial for p == 0.
std::vector<SquareFreeFactor> square_free_decomposition(const RealPolynomial& p);

/// p / gcd(p, p'), monic. Throws EmptyPolynomial for p == 0.
RealPolynomial square_free_factor(const RealPolynomial& p);

struct Root {
    double value;
    int multiplicity;
};

struct RootSet {
    std::vector<Root> roots; // strictly increasing values, all in (0, 1)

    bool empty() const noexcept { return roots.empty(); }
    std::size_t size() const noexcept { return roots.size(); }
};

inline constexpr double kDefaultRootTolerance = 1e-12;
inline constexpr double kResidualTolerance = 1e-10;

/// All real roots of p in (0, 1). Critical points come from the derivative
/// chain, so tangential roots without a sign change are still found; the
/// multiplicity counts how many successive derivatives vanish there.
RootSet roots_in_unit_interval(const RealPolynomial& p, double tol = kDefaultRootTolerance);

/// Largest root value; throws NoRootInInterval on an empty set.
double maximal_root(const RootSet& rs);

} // namespace bohr
