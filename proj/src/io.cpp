#include "setderiv/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "setderiv/errors.hpp"
#include "setderiv/geometry.hpp"

namespace setderiv {

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string CsvWriter::str() const {
    std::ostringstream os;
    for (const auto& m : meta_) os << "# " << m << '\n';
    for (size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << header_[i];
    os << '\n';
    for (const auto& r : rows_) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
    }
    return os.str();
}

void CsvWriter::save(const std::string& path) const { write_text_file(path, str()); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::Other, "cannot write " + path);
    f << content;
}

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<PlotSeries>& series, bool loglog) {
    const int W = 640, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = kInf, xmax = -kInf, ymin = kInf, ymax = -kInf;
    double ypos_min = kInf;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (s.y[i] > 0) ypos_min = std::min(ypos_min, s.y[i]);
        }
    if (!std::isfinite(ypos_min)) ypos_min = 1e-12;

    auto tx = [&](double v) { return loglog ? std::log10(std::max(v, 1e-300)) : v; };
    auto ty = [&](double v) { return loglog ? std::log10(std::max(v, ypos_min / 10)) : v; };

    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, tx(s.x[i]));
            xmax = std::max(xmax, tx(s.x[i]));
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    if (!(xmax > xmin)) { xmin -= 1; xmax += 1; }
    if (!(ymax > ymin)) { ymin -= 1; ymax += 1; }

    auto px = [&](double v) { return ml + (tx(v) - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double v) { return H - mb - (ty(v) - ymin) / (ymax - ymin) * (H - mt - mb); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    os << "<rect width='100%' height='100%' fill='white'/>\n";
    os << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
       << "</text>\n";
    os << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
       << "' stroke='black'/>\n";
    os << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
       << "' stroke='black'/>\n";
    // Axis extremes as tick labels.
    os << "<text x='" << ml << "' y='" << H - mb + 18 << "' font-size='11'>"
       << (loglog ? "1e" + format_double(xmin) : format_double(xmin)) << "</text>\n";
    os << "<text x='" << W - mr - 40 << "' y='" << H - mb + 18 << "' font-size='11'>"
       << (loglog ? "1e" + format_double(xmax) : format_double(xmax)) << "</text>\n";
    os << "<text x='4' y='" << H - mb << "' font-size='11'>"
       << (loglog ? "1e" + format_double(ymin) : format_double(ymin)) << "</text>\n";
    os << "<text x='4' y='" << mt + 10 << "' font-size='11'>"
       << (loglog ? "1e" + format_double(ymax) : format_double(ymax)) << "</text>\n";

    int ci = 0;
    for (const auto& s : series) {
        const char* col = colors[ci % 5];
        os << "<polyline fill='none' stroke='" << col << "' stroke-width='1.5' points='";
        for (size_t i = 0; i < s.x.size(); ++i)
            os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        os << "'/>\n";
        for (size_t i = 0; i < s.x.size(); ++i)
            os << "<circle cx='" << px(s.x[i]) << "' cy='" << py(s.y[i]) << "' r='3' fill='" << col
               << "'/>\n";
        os << "<text x='" << W - mr - 120 << "' y='" << mt + 14 + 14 * ci
           << "' font-size='12' fill='" << col << "'>" << s.label << "</text>\n";
        ++ci;
    }
    os << "</svg>\n";
    write_text_file(path, os.str());
}

}  // namespace setderiv
