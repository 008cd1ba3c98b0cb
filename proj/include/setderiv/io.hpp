#pragma once

#include <string>
#include <vector>

namespace setderiv {

/// Shortest decimal representation that round-trips; infinities print as
/// "inf"/"-inf".
std::string format_double(double v);

/// CSV with '#'-prefixed metadata lines, a header row, and '.' decimals.
class CsvWriter {
public:
    void meta(const std::string& line) { meta_.push_back(line); }
    void header(std::vector<std::string> cols) { header_ = std::move(cols); }
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
    std::string str() const;
    void save(const std::string& path) const;

private:
    std::vector<std::string> meta_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal hand-rolled SVG line plot; log-log when all data is positive.
/// Non-positive values are clamped to the smallest positive datum so a
/// converged zero still shows up at the plot floor.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<PlotSeries>& series, bool loglog = true);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace setderiv
