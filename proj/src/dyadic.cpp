#include "carleson/dyadic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace carleson {

// ---------------------------------------------------------------------------
// TorusSet

void TorusSet::normalize() {
    std::vector<std::pair<double, double>> in;
    in.reserve(parts_.size() + 2);
    double covered = 0.0;
    for (auto [lo, hi] : parts_) {
        if (hi <= lo) continue;
        if (hi - lo >= 1.0) { // saturates
            parts_ = {{0.0, 1.0}};
            return;
        }
        // reduce lo into [0,1)
        double shift = std::floor(lo);
        lo -= shift;
        hi -= shift;
        if (hi <= 1.0) {
            in.push_back({lo, hi});
        } else { // wraps
            in.push_back({lo, 1.0});
            in.push_back({0.0, hi - 1.0});
        }
        covered += hi - lo;
        (void)covered;
    }
    std::sort(in.begin(), in.end());
    parts_.clear();
    for (auto [lo, hi] : in) {
        if (!parts_.empty() && lo <= parts_.back().second) {
            parts_.back().second = std::max(parts_.back().second, hi);
        } else {
            parts_.push_back({lo, hi});
        }
    }
}

TorusSet TorusSet::from_intervals(std::vector<std::pair<double, double>> raw) {
    TorusSet s;
    s.parts_ = std::move(raw);
    s.normalize();
    return s;
}

TorusSet TorusSet::from_interval(double lo, double hi) { return from_intervals({{lo, hi}}); }

TorusSet TorusSet::from_dyadic(const DyadicInterval& I) { return from_interval(I.lo(), I.hi()); }

TorusSet TorusSet::full() { return from_interval(0.0, 1.0); }

TorusSet TorusSet::from_mask(const std::vector<std::uint8_t>& mask) {
    const std::size_t n = mask.size();
    std::vector<std::pair<double, double>> parts;
    std::size_t i = 0;
    while (i < n) {
        if (!mask[i]) { ++i; continue; }
        std::size_t j = i;
        while (j < n && mask[j]) ++j;
        parts.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
        i = j;
    }
    return from_intervals(std::move(parts));
}

double TorusSet::measure() const {
    double m = 0.0;
    for (auto [lo, hi] : parts_) m += hi - lo;
    return m;
}

bool TorusSet::is_full() const {
    return parts_.size() == 1 && parts_[0].first == 0.0 && parts_[0].second == 1.0;
}

bool TorusSet::contains_point(double x) const {
    x -= std::floor(x);
    for (auto [lo, hi] : parts_) {
        if (x < lo) return false;
        if (x < hi) return true;
    }
    return false;
}

bool TorusSet::contains_interval(double lo, double hi) const {
    if (hi <= lo) return true;
    for (auto [a, b] : parts_) {
        if (lo >= a && hi <= b) return true;
    }
    return false;
}

bool TorusSet::contains(const TorusSet& other) const {
    for (auto [lo, hi] : other.parts_) {
        if (!contains_interval(lo, hi)) return false;
    }
    return true;
}

TorusSet TorusSet::unite(const TorusSet& other) const {
    std::vector<std::pair<double, double>> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return from_intervals(std::move(all));
}

TorusSet TorusSet::intersect(const TorusSet& other) const {
    std::vector<std::pair<double, double>> out;
    auto it = other.parts_.begin();
    for (auto [lo, hi] : parts_) {
        for (auto [a, b] : other.parts_) {
            double l = std::max(lo, a), h = std::min(hi, b);
            if (l < h) out.push_back({l, h});
        }
    }
    (void)it;
    return from_intervals(std::move(out));
}

TorusSet TorusSet::complement() const {
    std::vector<std::pair<double, double>> out;
    double prev = 0.0;
    for (auto [lo, hi] : parts_) {
        if (lo > prev) out.push_back({prev, lo});
        prev = hi;
    }
    if (prev < 1.0) out.push_back({prev, 1.0});
    return from_intervals(std::move(out));
}

std::vector<std::uint8_t> TorusSet::to_mask(int K) const {
    const std::size_t n = std::size_t{1} << K;
    std::vector<std::uint8_t> mask(n, 0);
    for (auto [lo, hi] : parts_) {
        // cell m is in the set iff [m/n,(m+1)/n) ⊆ some part; with grid-aligned
        // sets this is iff the cell midpoint lies in the part
        auto first = static_cast<std::size_t>(std::ceil(lo * n - 0.5));
        for (std::size_t m = first; m < n; ++m) {
            double mid = (static_cast<double>(m) + 0.5) / n;
            if (mid >= hi) break;
            if (mid >= lo) mask[m] = 1;
        }
    }
    return mask;
}

TorusSet dilate_set(const TorusSet& S, double b) {
    if (b <= 0.0) throw std::invalid_argument("dilate_set: b must be positive");
    std::vector<std::pair<double, double>> out;
    out.reserve(S.parts().size());
    for (auto [lo, hi] : S.parts()) {
        double c = 0.5 * (lo + hi);
        double half = 0.5 * b * (hi - lo);
        out.push_back({c - half, c + half});
    }
    return TorusSet::from_intervals(std::move(out));
}

TorusSet dilate_set(const DyadicInterval& I, double b) {
    return dilate_set(TorusSet::from_dyadic(I), b);
}

// ---------------------------------------------------------------------------
// GridFunction

GridFunction GridFunction::zero(int K) {
    return {K, std::vector<std::complex<double>>(std::size_t{1} << K)};
}

GridFunction GridFunction::constant(int K, std::complex<double> c) {
    return {K, std::vector<std::complex<double>>(std::size_t{1} << K, c)};
}

GridFunction GridFunction::indicator(int K, const TorusSet& E) {
    GridFunction f = zero(K);
    auto mask = E.to_mask(K);
    for (std::size_t m = 0; m < mask.size(); ++m) {
        if (mask[m]) f.values[m] = 1.0;
    }
    return f;
}

std::complex<double> GridFunction::integral() const {
    std::complex<double> s = 0.0;
    for (const auto& v : values) s += v;
    return s * cell_width();
}

GridFunction GridFunction::abs() const {
    GridFunction g = *this;
    for (auto& v : g.values) v = std::abs(v);
    return g;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    assert(a.K == b.K);
    GridFunction out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    assert(a.K == b.K);
    GridFunction out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
    return out;
}

GridFunction operator*(std::complex<double> c, const GridFunction& f) {
    GridFunction out = f;
    for (auto& v : out.values) v *= c;
    return out;
}

// ---------------------------------------------------------------------------
// Maximal function and stopping intervals

std::vector<std::vector<double>> dyadic_averages(const GridFunction& f) {
    std::vector<std::vector<double>> avg(f.K + 1);
    avg[f.K].resize(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) avg[f.K][j] = std::abs(f.values[j]);
    for (int k = f.K - 1; k >= 0; --k) {
        const auto& fine = avg[k + 1];
        auto& coarse = avg[k];
        coarse.resize(std::size_t{1} << k);
        for (std::size_t j = 0; j < coarse.size(); ++j) {
            coarse[j] = 0.5 * (fine[2 * j] + fine[2 * j + 1]);
        }
    }
    return avg;
}

GridFunction dyadic_maximal(const GridFunction& f) {
    auto avg = dyadic_averages(f);
    GridFunction out = GridFunction::zero(f.K);
    for (std::size_t m = 0; m < f.size(); ++m) {
        double best = 0.0;
        for (int k = 0; k <= f.K; ++k) {
            best = std::max(best, avg[k][m >> (f.K - k)]);
        }
        out.values[m] = best;
    }
    return out;
}

std::vector<DyadicInterval> stopping_intervals(const std::vector<std::vector<double>>& avg,
                                               double threshold) {
    std::vector<DyadicInterval> out;
    const int K = static_cast<int>(avg.size()) - 1;
    // iterative DFS, left-to-right so output is sorted
    std::vector<DyadicInterval> stack{{0, 0}};
    while (!stack.empty()) {
        DyadicInterval I = stack.back();
        stack.pop_back();
        if (avg[I.scale][I.index] > threshold) {
            out.push_back(I);
        } else if (I.scale < K) {
            stack.push_back(I.right_child());
            stack.push_back(I.left_child());
        }
    }
    return out;
}

std::vector<DyadicInterval> stopping_intervals(const GridFunction& f, int alpha) {
    return stopping_intervals(dyadic_averages(f), std::pow(2.0, -alpha));
}

// ---------------------------------------------------------------------------
// Distribution, rearrangement, norms

double distribution_function(const GridFunction& f, double t) {
    std::size_t count = 0;
    for (const auto& v : f.values) {
        if (std::abs(v) > t) ++count;
    }
    return static_cast<double>(count) * f.cell_width();
}

GridFunction decreasing_rearrangement(const GridFunction& f) {
    GridFunction out = f.abs();
    std::sort(out.values.begin(), out.values.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  return a.real() > b.real();
              });
    return out;
}

double weak_quasinorm(const GridFunction& f) {
    GridFunction star = decreasing_rearrangement(f);
    double best = 0.0;
    for (std::size_t j = 0; j < star.size(); ++j) {
        double t = static_cast<double>(j + 1) * f.cell_width();
        best = std::max(best, t * star.values[j].real());
    }
    return best;
}

double lp_norm(const GridFunction& f, double p) {
    if (p <= 0.0) throw std::invalid_argument("lp_norm: p must be positive");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (const auto& v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(s * f.cell_width(), 1.0 / p);
}

} // namespace carleson
