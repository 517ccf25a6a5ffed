#include "carleson/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace carleson::svg {

namespace {
const char* kPalette[10] = {"#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee",
                            "#aa3377", "#bbbbbb", "#e07020", "#117755", "#882255"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string color_for(int i) { return kPalette[((i % 10) + 10) % 10]; }
} // namespace

std::string tiles_svg(const MassDecomposition& dec, const std::map<int, CZDecomposition>* cz,
                      int K) {
    const double W = 760.0, H = 420.0, pad = 20.0, strip_h = 80.0;
    const double total_h = pad * 3 + H + strip_h;
    const double fmax = static_cast<double>(std::uint64_t{1} << K);
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W + 2 * pad)
        << "\" height=\"" << num(total_h) << "\">\n";
    out << "<rect x=\"" << num(pad) << "\" y=\"" << num(pad) << "\" width=\"" << num(W)
        << "\" height=\"" << num(H) << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // alpha assignment per tile for stroke colors
    std::map<std::uint64_t, int> alpha_of;
    if (cz) {
        for (const auto& [n, czd] : *cz) {
            for (const auto& [alpha, tiles] : czd.by_alpha) {
                for (const auto& P : tiles) alpha_of[P.key()] = alpha;
            }
        }
    }
    for (const auto& [n, tiles] : dec.levels) {
        for (const auto& P : tiles) {
            const double x = pad + P.time().lo() * W;
            const double w = P.time_length() * W;
            const double h = P.freq_length() / fmax * H;
            const double y = pad + H - P.freq_hi() / fmax * H;
            std::string stroke = "#222222";
            if (cz) {
                auto it = alpha_of.find(P.key());
                if (it != alpha_of.end()) stroke = color_for(it->second);
            }
            out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
                << "\" height=\"" << num(h) << "\" fill=\"" << color_for(n)
                << "\" fill-opacity=\"0.45\" stroke=\"" << stroke << "\" stroke-width=\"0.6\">"
                << "<title>n=" << n << " k=" << P.k << " j=" << P.j << " m=" << P.m
                << "</title></rect>\n";
        }
    }

    // first-layer counting function per level, as a step polyline
    const double sy = pad * 2 + H;
    out << "<rect x=\"" << num(pad) << "\" y=\"" << num(sy) << "\" width=\"" << num(W)
        << "\" height=\"" << num(strip_h) << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    double cmax = 1.0;
    for (const auto& [n, seq] : dec.layers) {
        if (seq.empty()) continue;
        for (const auto& v : seq.front().counting.values) cmax = std::max(cmax, v.real());
    }
    for (const auto& [n, seq] : dec.layers) {
        if (seq.empty()) continue;
        const auto& cnt = seq.front().counting;
        out << "<polyline fill=\"none\" stroke=\"" << color_for(n)
            << "\" stroke-width=\"1\" points=\"";
        for (std::size_t x = 0; x <= cnt.size(); ++x) {
            const double v = cnt.values[x == cnt.size() ? cnt.size() - 1 : x].real();
            const double px = pad + static_cast<double>(x) / static_cast<double>(cnt.size()) * W;
            const double py = sy + strip_h - v / cmax * (strip_h - 4.0);
            if (x > 0) out << " ";
            out << num(px) << "," << num(py);
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string decay_svg(const VerificationReport& rep) {
    const double W = 640.0, H = 360.0, pad = 40.0;
    // families with a per-level context n=...
    std::map<std::string, std::map<int, double>> series;
    for (const auto& c : rep.checks) {
        auto pos = c.context.find("n=");
        if (pos == std::string::npos) continue;
        if (pos > 0 && c.context[pos - 1] != ' ') continue;
        int n = std::atoi(c.context.c_str() + pos + 2);
        auto& m = series[c.name][n];
        m = std::max(m, c.ratio);
    }
    double rmax = 1.0;
    int nmax = 1;
    for (const auto& [name, pts] : series) {
        for (const auto& [n, r] : pts) {
            if (std::isfinite(r)) rmax = std::max(rmax, r);
            nmax = std::max(nmax, n);
        }
    }
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W + 2 * pad)
        << "\" height=\"" << num(H + 2 * pad) << "\">\n";
    out << "<rect x=\"" << num(pad) << "\" y=\"" << num(pad) << "\" width=\"" << num(W)
        << "\" height=\"" << num(H) << "\" fill=\"none\" stroke=\"#333333\"/>\n";
    int idx = 0;
    for (const auto& [name, pts] : series) {
        const std::string col = color_for(idx);
        out << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& [n, r] : pts) {
            if (!std::isfinite(r)) continue;
            const double px = pad + static_cast<double>(n) / static_cast<double>(nmax) * W;
            const double py = pad + H - r / rmax * (H - 6.0);
            if (!first) out << " ";
            out << num(px) << "," << num(py);
            first = false;
        }
        out << "\"/>\n";
        out << "<text x=\"" << num(pad + 8.0) << "\" y=\"" << num(pad + 16.0 + 14.0 * idx)
            << "\" font-size=\"11\" fill=\"" << col << "\">" << name
            << " (max ratio vs n)</text>\n";
        ++idx;
    }
    out << "<text x=\"" << num(pad + W / 2.0 - 10.0) << "\" y=\"" << num(pad * 2 + H - 4.0)
        << "\" font-size=\"11\" fill=\"#333333\">n</text>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace carleson::svg
