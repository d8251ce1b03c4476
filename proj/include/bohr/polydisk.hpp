#pragma once

#include "bohr/functionals.hpp"
#include "bohr/series.hpp"

#include <map>
#include <variant>
#include <vector>

namespace bohr {

inline constexpr int kMaxDimension = 8;

using Point = std::vector<Complex>;
using MultiIndex = std::vector<int>;

/// Holomorphic map from the unit polydisk in C^n to C^n, one component per
/// output coordinate.
class PolydiskMap {
public:
    /// Schur function applied to coordinate `coord`
    struct Univariate {
        int coord;
        SchurSpec spec;
    };
    /// finite sum of coefficient * z^alpha
    struct MonomialPoly {
        std::map<MultiIndex, Complex> terms;
    };
    using Component = std::variant<Univariate, MonomialPoly>;

    /// Throws ParamRange for dim outside [1, 8], a component count other than
    /// dim, or malformed coordinates / multi-indices.
    PolydiskMap(int dim, std::vector<Component> components);

    int dim() const noexcept { return dim_; }
    const std::vector<Component>& components() const noexcept { return components_; }
    bool all_univariate() const noexcept;

private:
    int dim_;
    std::vector<Component> components_;
};

/// Component l is the extremal z_l^m (a - z_l^k)/(1 - a z_l^k).
PolydiskMap componentwise_extremal(int dim, double a, int m, int k);

/// Two-variable map whose unrestricted norm-type Bohr sum exceeds 1 at
/// (1/sqrt2, 1/sqrt2): components z_l (z_l - a_l)/(1 - a_l z_l) with
/// a_1 = 1/sqrt2 and a_2 = 2/sqrt5.
PolydiskMap liu_liu_map();

struct HomogeneousNormProfile {
    Point point;
    std::vector<double> norms; // norms[s] = max_l |degree-s part of f_l at point|
    double coeff_bound = 0.0;  // 1 when some component has an infinite expansion
    int trunc_order = 0;
};

HomogeneousNormProfile homogeneous_norms(const PolydiskMap& F, const Point& z, int M);

/// Coefficients of lambda -> f_l(lambda z0) with z0 rescaled to max-modulus 1.
TruncatedSeries slice_series(const PolydiskMap& F, const Point& direction, int component, int M);

/// Degree-wise max over components of the slice coefficient magnitudes.
TruncatedSeries slice_envelope(const PolydiskMap& F, const Point& direction, int M);

/// Multidimensional refined sum at z = r * direction (direction rescaled to
/// max-modulus 1; empty means the diagonal). The hypothesis gate is skippable.
FunctionalValue norm_functional(const PolydiskMap& F, const FunctionalSpec& spec, double r, int M,
                                const Point& direction = {}, bool check_hypothesis = true);

} // namespace bohr
