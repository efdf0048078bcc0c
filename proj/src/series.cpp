// Copyright 2026 The ecsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ecsim/series.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace ecsim {
namespace {

std::string format_cell(const Column& c, std::size_t row) {
    const double v = c.values[row];
    if (c.integral) return fmt::format("{}", static_cast<long long>(std::llround(v)));
    return format_number(v);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

// Round tick spacing covering [lo, hi] with about five intervals.
double nice_step(double lo, double hi) {
    const double span = hi - lo;
    if (!(span > 0.0)) return 1.0;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double f : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        if (raw <= f * mag) return f * mag;
    }
    return 10.0 * mag;
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return fmt::format("{:.15g}", value);
}

void SeriesRecord::validate() const {
    for (const auto& c : columns) {
        if (c.values.size() != rows()) {
            throw std::invalid_argument("column '" + c.name + "' has mismatched length");
        }
    }
}

void write_csv(std::ostream& os, const SeriesRecord& record) {
    record.validate();
    for (const auto& [key, value] : record.metadata) os << "# " << key << ": " << value << '\n';
    for (std::size_t i = 0; i < record.columns.size(); ++i) {
        os << (i ? "," : "") << record.columns[i].name;
    }
    os << '\n';
    for (std::size_t r = 0; r < record.rows(); ++r) {
        for (std::size_t i = 0; i < record.columns.size(); ++i) {
            os << (i ? "," : "") << format_cell(record.columns[i], r);
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const SeriesRecord& record) {
    record.validate();
    nlohmann::ordered_json doc;
    auto& meta = doc["metadata"];
    meta = nlohmann::ordered_json::object();
    for (const auto& [key, value] : record.metadata) meta[key] = value;
    auto& cols = doc["columns"];
    cols = nlohmann::ordered_json::array();
    for (const auto& c : record.columns) cols.push_back(c.name);
    auto& rows = doc["rows"];
    rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < record.rows(); ++r) {
        auto row = nlohmann::ordered_json::array();
        for (const auto& c : record.columns) {
            if (c.integral) {
                row.push_back(std::llround(c.values[r]));
            } else {
                row.push_back(c.values[r]);
            }
        }
        rows.push_back(std::move(row));
    }
    os << doc.dump(2) << '\n';
}

void write_svg(std::ostream& os, const SeriesRecord& record, const std::string& title,
               const std::vector<std::string>& y_columns) {
    record.validate();
    if (record.columns.empty()) throw std::invalid_argument("nothing to plot");
    if (y_columns.empty() || y_columns.size() > 2) {
        throw std::invalid_argument("SVG plots take one or two series");
    }
    const Column& xs = record.columns.front();
    std::vector<const Column*> series;
    for (const auto& name : y_columns) {
        auto it = std::find_if(record.columns.begin(), record.columns.end(),
                               [&](const Column& c) { return c.name == name; });
        if (it == record.columns.end()) throw std::invalid_argument("no column '" + name + "'");
        series.push_back(&*it);
    }

    constexpr double width = 640, height = 420, left = 70, right = 20, top = 40, bottom = 50;
    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    if (record.rows() > 0) {
        const auto [xmin, xmax] = std::minmax_element(xs.values.begin(), xs.values.end());
        x_lo = *xmin;
        x_hi = *xmax;
        y_lo = INFINITY;
        y_hi = -INFINITY;
        for (const auto* s : series) {
            for (double v : s->values) {
                if (!std::isfinite(v)) continue;
                y_lo = std::min(y_lo, v);
                y_hi = std::max(y_hi, v);
            }
        }
        if (!std::isfinite(y_lo)) y_lo = 0, y_hi = 1;
    }
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    if (y_hi <= y_lo) {
        y_lo -= 0.5;
        y_hi += 0.5;
    }
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    const auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * (width - left - right); };
    const auto py = [&](double y) { return height - bottom - (y - y_lo) / (y_hi - y_lo) * (height - top - bottom); };

    os << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
        "viewBox=\"0 0 {} {}\">\n",
        width, height, width, height);
    os << "<!--\n";
    for (const auto& [key, value] : record.metadata) {
        os << "  " << xml_escape(key) << ": " << xml_escape(value) << '\n';
    }
    os << "-->\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
                      "text-anchor=\"middle\">{}</text>\n",
                      width / 2, xml_escape(title));

    // Axes and ticks.
    os << fmt::format("<g stroke=\"black\" fill=\"none\"><rect x=\"{}\" y=\"{}\" width=\"{}\" "
                      "height=\"{}\"/></g>\n",
                      left, top, width - left - right, height - top - bottom);
    os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    const double xs_step = nice_step(x_lo, x_hi);
    for (double t = std::ceil(x_lo / xs_step) * xs_step; t <= x_hi + 1e-9 * xs_step; t += xs_step) {
        os << fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"black\"/>"
                          "<text x=\"{0:.2f}\" y=\"{3}\" text-anchor=\"middle\">{4:.4g}</text>\n",
                          px(t), height - bottom, height - bottom + 5, height - bottom + 18, t);
    }
    const double ys_step = nice_step(y_lo, y_hi);
    for (double t = std::ceil(y_lo / ys_step) * ys_step; t <= y_hi + 1e-9 * ys_step; t += ys_step) {
        os << fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"black\"/>"
                          "<text x=\"{3}\" y=\"{4:.2f}\" text-anchor=\"end\">{5:.4g}</text>\n",
                          left - 5, py(t), left, left - 8, py(t) + 4, t);
    }
    os << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                      (left + width - right) / 2, height - 12, xml_escape(xs.name));
    os << "</g>\n";

    static constexpr const char* colors[] = {"#1f3b73", "#b0489a"};
    static constexpr const char* dashes[] = {"", " stroke-dasharray=\"6,4\""};
    for (std::size_t s = 0; s < series.size(); ++s) {
        os << fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\"{} points=\"",
                          colors[s], dashes[s]);
        for (std::size_t r = 0; r < record.rows(); ++r) {
            const double v = series[s]->values[r];
            if (!std::isfinite(v)) continue;
            os << fmt::format("{:.2f},{:.2f} ", px(xs.values[r]), py(v));
        }
        os << "\"/>\n";
        os << fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" "
                          "fill=\"{}\">{}</text>\n",
                          width - right - 150, top + 18 + 16 * static_cast<double>(s), colors[s],
                          xml_escape(series[s]->name));
    }
    os << "</svg>\n";
}

}  // namespace ecsim
