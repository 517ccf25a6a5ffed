#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace carleson {

/// Dyadic interval [j*2^-k, (j+1)*2^-k) of [0,1).
struct DyadicInterval {
    int scale = 0;           // k >= 0
    std::uint64_t index = 0; // 0 <= j < 2^k

    double length() const { return 1.0 / static_cast<double>(std::uint64_t{1} << scale); }
    double lo() const { return static_cast<double>(index) * length(); }
    double hi() const { return static_cast<double>(index + 1) * length(); }
    double center() const { return (static_cast<double>(index) + 0.5) * length(); }

    DyadicInterval parent() const { return {scale - 1, index >> 1}; }
    DyadicInterval left_child() const { return {scale + 1, index << 1}; }
    DyadicInterval right_child() const { return {scale + 1, (index << 1) | 1}; }

    // subset test: this ⊆ other (nested-or-disjoint)
    bool subset_of(const DyadicInterval& other) const {
        return scale >= other.scale && (index >> (scale - other.scale)) == other.index;
    }
    bool contains_point(double x) const { return x >= lo() && x < hi(); }

    friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
    friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

/// Finite union of half-open intervals reduced mod 1.
/// Parts are kept sorted, pairwise disjoint, merged, within [0,1).
class TorusSet {
public:
    TorusSet() = default;
    /// Build from arbitrary (possibly wrapping, overlapping) intervals; normalizes.
    static TorusSet from_intervals(std::vector<std::pair<double, double>> raw);
    static TorusSet from_interval(double lo, double hi);
    static TorusSet from_dyadic(const DyadicInterval& I);
    static TorusSet full();
    /// Build from a grid mask of 2^K cells.
    static TorusSet from_mask(const std::vector<std::uint8_t>& mask);

    const std::vector<std::pair<double, double>>& parts() const { return parts_; }
    double measure() const;
    bool empty() const { return parts_.empty(); }
    bool is_full() const;

    bool contains_point(double x) const;
    /// Interval [lo,hi) ⊆ this?
    bool contains_interval(double lo, double hi) const;
    bool contains(const DyadicInterval& I) const { return contains_interval(I.lo(), I.hi()); }
    bool contains(const TorusSet& other) const;

    TorusSet unite(const TorusSet& other) const;
    TorusSet intersect(const TorusSet& other) const;
    TorusSet complement() const;

    std::vector<std::uint8_t> to_mask(int K) const;

    friend bool operator==(const TorusSet&, const TorusSet&) = default;

private:
    std::vector<std::pair<double, double>> parts_;
    void normalize();
};

/// Concentric dilation of each component by factor b, mod 1; overlaps merged,
/// components of length >= 1 saturate to the full torus.
TorusSet dilate_set(const TorusSet& S, double b);
TorusSet dilate_set(const DyadicInterval& I, double b);

/// Complex-valued step function on the uniform 2^K-point grid of the torus.
struct GridFunction {
    int K = 0;
    std::vector<std::complex<double>> values; // size 2^K

    static GridFunction zero(int K);
    static GridFunction constant(int K, std::complex<double> c);
    static GridFunction indicator(int K, const TorusSet& E);

    std::size_t size() const { return values.size(); }
    double point(std::size_t m) const { return static_cast<double>(m) / static_cast<double>(size()); }
    double cell_width() const { return 1.0 / static_cast<double>(size()); }

    std::complex<double> integral() const;
    GridFunction abs() const;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(std::complex<double> c, const GridFunction& f);

/// Per-scale averages of |f|: avg[k][j] = average of |f| over the dyadic
/// interval (k, j). The same arrays back both the maximal function and the
/// stopping-interval search so the two agree bitwise.
std::vector<std::vector<double>> dyadic_averages(const GridFunction& f);

/// Dyadic Hardy-Littlewood maximal function (strictly dyadic ancestors).
GridFunction dyadic_maximal(const GridFunction& f);

/// Maximal dyadic J with avg_J |f| > 2^-alpha. Union equals {Mf > 2^-alpha}.
std::vector<DyadicInterval> stopping_intervals(const GridFunction& f, int alpha);
std::vector<DyadicInterval> stopping_intervals(const std::vector<std::vector<double>>& avg,
                                               double threshold);

/// lambda_f(t) = |{ |f| > t }| (exact grid measure).
double distribution_function(const GridFunction& f, double t);

/// |values| sorted nonincreasing.
GridFunction decreasing_rearrangement(const GridFunction& f);

/// sup_t t*lambda_f(t) evaluated as max_j (j*2^-K)*f*_j.
double weak_quasinorm(const GridFunction& f);

/// (2^-K sum |v|^p)^(1/p); max|v| for p = infinity.
double lp_norm(const GridFunction& f, double p);

} // namespace carleson
