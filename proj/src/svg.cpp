#include "npk/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <vector>

namespace npk::svg {

namespace {

struct Pt {
    double n, lo, hi;  // lo/hi in log10 units
};

double log10_clamped(double x, double floor_val) {
    return std::log10(std::max(x, floor_val));
}

std::string fmt(double x) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(2) << x;
    return s.str();
}

}  // namespace

std::string semilog_band_plot(const Trajectory& t, const std::string& key,
                              const std::string& title) {
    std::vector<Pt> pts;
    double max_hi = 0;
    for (const auto& r : t.records) {
        const Enclosure* e = nullptr;
        if (key == "lambda0" && r.lambda0.dim > 0)
            e = &r.lambda0.value;
        else if (auto it = r.aux.find(key); it != r.aux.end())
            e = &it->second;
        if (!e) continue;
        double lo = e->lo().to_double(), hi = e->hi().to_double();
        pts.push_back({static_cast<double>(r.n), lo, hi});
        max_hi = std::max(max_hi, hi);
    }
    if (pts.empty()) throw InvalidParameter("svg: no data for series " + key);
    // log floor: 40 decades below the largest upper edge, so certified
    // zeros and tiny lower edges stay on the canvas
    double floor_val = std::max(max_hi, 1e-300) * 1e-40;
    double ymin = 1e300, ymax = -1e300, xmin = 1e300, xmax = -1e300;
    for (auto& p : pts) {
        p.lo = log10_clamped(p.lo, floor_val);
        p.hi = log10_clamped(p.hi, floor_val);
        ymin = std::min(ymin, p.lo);
        ymax = std::max(ymax, p.hi);
        xmin = std::min(xmin, p.n);
        xmax = std::max(xmax, p.n);
    }
    if (ymax - ymin < 1e-9) { ymax += 0.5; ymin -= 0.5; }
    if (xmax - xmin < 1e-9) { xmax += 0.5; xmin -= 0.5; }

    const double W = 720, H = 480, L = 70, R = 20, T = 40, B = 50;
    auto X = [&](double n) { return L + (n - xmin) / (xmax - xmin) * (W - L - R); };
    auto Y = [&](double v) { return H - B - (v - ymin) / (ymax - ymin) * (H - T - B); };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" << title << "</text>\n";

    // horizontal decade grid lines
    for (long d = static_cast<long>(std::ceil(ymin)); d <= static_cast<long>(std::floor(ymax)); ++d) {
        double y = Y(static_cast<double>(d));
        s << "<line x1=\"" << L << "\" y1=\"" << fmt(y) << "\" x2=\"" << W - R << "\" y2=\""
          << fmt(y) << "\" stroke=\"#ddd\"/>\n"
          << "<text x=\"" << L - 6 << "\" y=\"" << fmt(y + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << d
          << "</text>\n";
    }
    // x ticks
    long step = std::max(1L, static_cast<long>((xmax - xmin) / 10));
    for (long n = static_cast<long>(std::ceil(xmin)); n <= static_cast<long>(xmax); n += step) {
        double x = X(static_cast<double>(n));
        s << "<line x1=\"" << fmt(x) << "\" y1=\"" << H - B << "\" x2=\"" << fmt(x) << "\" y2=\""
          << H - B + 5 << "\" stroke=\"#333\"/>\n"
          << "<text x=\"" << fmt(x) << "\" y=\"" << H - B + 20
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << n
          << "</text>\n";
    }
    s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"#333\"/>\n"
      << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\" stroke=\"#333\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">n</text>\n";

    // band polygon: upper edge left-to-right, lower edge right-to-left
    s << "<polygon fill=\"#4477aa\" fill-opacity=\"0.35\" stroke=\"none\" points=\"";
    for (const auto& p : pts) s << fmt(X(p.n)) << "," << fmt(Y(p.hi)) << " ";
    for (auto it = pts.rbegin(); it != pts.rend(); ++it)
        s << fmt(X(it->n)) << "," << fmt(Y(it->lo)) << " ";
    s << "\"/>\n";
    auto edge = [&](bool upper, const char* color) {
        s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : pts) s << fmt(X(p.n)) << "," << fmt(Y(upper ? p.hi : p.lo)) << " ";
        s << "\"/>\n";
    };
    edge(true, "#4477aa");
    edge(false, "#aa3344");
    s << "<text x=\"" << W - R << "\" y=\"" << T - 6
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << key
      << " upper (blue) / lower (red) edges</text>\n";
    s << "</svg>\n";
    return s.str();
}

}  // namespace npk::svg
