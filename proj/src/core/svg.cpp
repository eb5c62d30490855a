// Copyright 2026 The rrls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rrls {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 400;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

/// Piecewise-linear resample of a monotone-in-step series at step x.
double sample_series(const std::vector<std::pair<long long, double>>& series, double x) {
    if (x <= static_cast<double>(series.front().first)) return series.front().second;
    if (x >= static_cast<double>(series.back().first)) return series.back().second;
    for (std::size_t i = 1; i < series.size(); ++i) {
        double x0 = static_cast<double>(series[i - 1].first);
        double x1 = static_cast<double>(series[i].first);
        if (x <= x1) {
            double t = x1 > x0 ? (x - x0) / (x1 - x0) : 1.0;
            return series[i - 1].second + t * (series[i].second - series[i - 1].second);
        }
    }
    return series.back().second;
}

} // namespace

std::string training_curve_svg(
    const std::string& title,
    const std::vector<std::vector<std::pair<long long, double>>>& per_seed_series) {
    std::vector<const std::vector<std::pair<long long, double>>*> series;
    for (const auto& s : per_seed_series)
        if (!s.empty()) series.push_back(&s);
    if (series.empty()) throw std::invalid_argument("training_curve_svg: no data");

    long long max_step = 0;
    for (const auto* s : series) max_step = std::max(max_step, s->back().first);
    if (max_step <= 0) max_step = 1;

    constexpr int kSamples = 120;
    std::vector<double> grid(kSamples), mean(kSamples), low(kSamples), high(kSamples);
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kSamples; ++i) {
        grid[i] = static_cast<double>(max_step) * i / (kSamples - 1);
        double m = 0.0;
        for (const auto* s : series) m += sample_series(*s, grid[i]);
        m /= static_cast<double>(series.size());
        double var = 0.0;
        for (const auto* s : series) {
            double d = sample_series(*s, grid[i]) - m;
            var += d * d;
        }
        double sd = std::sqrt(var / static_cast<double>(series.size()));
        mean[i] = m;
        low[i] = m - sd;
        high[i] = m + sd;
        y_min = std::min(y_min, low[i]);
        y_max = std::max(y_max, high[i]);
    }
    if (y_max <= y_min) {
        y_max = y_min + 1.0;
        y_min -= 1.0;
    }

    auto sx = [&](double step) {
        return kMarginLeft + (kWidth - kMarginLeft - kMarginRight) * step /
                                 static_cast<double>(max_step);
    };
    auto sy = [&](double y) {
        return kHeight - kMarginBottom -
               (kHeight - kMarginTop - kMarginBottom) * (y - y_min) / (y_max - y_min);
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n"
        << "  <text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

    // std band
    out << "  <polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
    for (int i = 0; i < kSamples; ++i)
        out << fmt(sx(grid[i])) << "," << fmt(sy(high[i])) << " ";
    for (int i = kSamples - 1; i >= 0; --i)
        out << fmt(sx(grid[i])) << "," << fmt(sy(low[i])) << " ";
    out << "\"/>\n";

    // mean line
    out << "  <polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\" points=\"";
    for (int i = 0; i < kSamples; ++i)
        out << fmt(sx(grid[i])) << "," << fmt(sy(mean[i])) << " ";
    out << "\"/>\n";

    // axes
    out << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kHeight - kMarginBottom
        << "\" x2=\"" << kWidth - kMarginRight << "\" y2=\"" << kHeight - kMarginBottom
        << "\" stroke=\"black\"/>\n"
        << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << kHeight - kMarginBottom << "\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        double step = static_cast<double>(max_step) * tick / 4.0;
        double y = y_min + (y_max - y_min) * tick / 4.0;
        out << "  <text x=\"" << fmt(sx(step)) << "\" y=\"" << kHeight - kMarginBottom + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << static_cast<long long>(step) << "</text>\n";
        out << "  <text x=\"" << kMarginLeft - 6 << "\" y=\"" << fmt(sy(y) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt(y) << "</text>\n";
    }
    out << "  <text x=\"" << (kWidth + kMarginLeft - kMarginRight) / 2 << "\" y=\""
        << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << "env steps</text>\n"
        << "  <text x=\"16\" y=\"" << (kHeight + kMarginTop - kMarginBottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        << "transform=\"rotate(-90 16 " << (kHeight + kMarginTop - kMarginBottom) / 2
        << ")\">mean return</text>\n"
        << "</svg>\n";
    return out.str();
}

} // namespace rrls
