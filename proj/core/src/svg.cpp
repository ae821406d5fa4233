#include "segmint/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace segmint {

namespace {

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                          "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string color_of(int cluster) {
    return kPalette[static_cast<std::size_t>(cluster) % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

void text(std::ostringstream& ss, double x, double y, const std::string& s, int size = 11,
          const std::string& anchor = "start") {
    ss << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-size=\"" << size
       << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << s << "</text>\n";
}

void line(std::ostringstream& ss, double x1, double y1, double x2, double y2,
          const std::string& stroke = "#333", double width = 1.0) {
    ss << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
       << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt(width)
       << "\"/>\n";
}

void rect(std::ostringstream& ss, double x, double y, double w, double h,
          const std::string& fill, const std::string& stroke = "#333") {
    ss << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(w)
       << "\" height=\"" << fmt(h) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
       << "\" fill-opacity=\"0.7\"/>\n";
}

}  // namespace

std::string render_boxplot_svg(const std::string& attribute,
                               const std::vector<BoxStat>& per_cluster) {
    const int box_w = 46;
    const int gap = 26;
    const int margin_left = 72;
    const int margin_top = 40;
    const int plot_h = 260;
    const int width =
        margin_left + static_cast<int>(per_cluster.size()) * (box_w + gap) + gap + 20;
    const int height = margin_top + plot_h + 50;

    double lo = per_cluster.front().min;
    double hi = per_cluster.front().max;
    for (const auto& s : per_cluster) {
        lo = std::min(lo, s.min);
        hi = std::max(hi, s.max);
    }
    if (hi <= lo) hi = lo + 1.0;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    auto y_of = [&](double v) { return margin_top + plot_h * (1.0 - (v - lo) / (hi - lo)); };

    std::ostringstream ss;
    ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\">\n";
    ss << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(ss, margin_left, 22, attribute + " by cluster", 14);

    // y axis with 5 ticks
    line(ss, margin_left - 8, margin_top, margin_left - 8, margin_top + plot_h);
    for (int t = 0; t <= 4; ++t) {
        const double v = lo + (hi - lo) * t / 4.0;
        const double y = y_of(v);
        line(ss, margin_left - 12, y, margin_left - 8, y);
        text(ss, margin_left - 16, y + 4, fmt(v), 10, "end");
    }

    for (std::size_t c = 0; c < per_cluster.size(); ++c) {
        const BoxStat& s = per_cluster[c];
        const double x = margin_left + gap + static_cast<double>(c) * (box_w + gap);
        const double cx = x + box_w / 2.0;
        line(ss, cx, y_of(s.min), cx, y_of(s.q1));
        line(ss, cx, y_of(s.q3), cx, y_of(s.max));
        line(ss, cx - 10, y_of(s.min), cx + 10, y_of(s.min));
        line(ss, cx - 10, y_of(s.max), cx + 10, y_of(s.max));
        rect(ss, x, y_of(s.q3), box_w, y_of(s.q1) - y_of(s.q3), color_of(static_cast<int>(c)));
        line(ss, x, y_of(s.median), x + box_w, y_of(s.median), "#111", 2.0);
        text(ss, cx, margin_top + plot_h + 18, std::to_string(c), 11, "middle");
    }
    text(ss, margin_left + (width - margin_left) / 2.0, height - 12, "cluster", 11, "middle");
    ss << "</svg>\n";
    return ss.str();
}

std::string render_biplot_svg(const Eigen::MatrixXd& scores, const std::vector<int>& assignments,
                              int k, const Eigen::MatrixXd& loadings,
                              const std::vector<std::string>& attributes,
                              const std::string& title) {
    const int size = 560;
    const int margin = 56;
    const double plot = size - 2.0 * margin;

    double lo_x = scores.col(0).minCoeff(), hi_x = scores.col(0).maxCoeff();
    double lo_y = scores.col(1).minCoeff(), hi_y = scores.col(1).maxCoeff();
    if (hi_x <= lo_x) hi_x = lo_x + 1.0;
    if (hi_y <= lo_y) hi_y = lo_y + 1.0;
    const double pad_x = 0.05 * (hi_x - lo_x), pad_y = 0.05 * (hi_y - lo_y);
    lo_x -= pad_x;
    hi_x += pad_x;
    lo_y -= pad_y;
    hi_y += pad_y;

    auto px = [&](double v) { return margin + plot * (v - lo_x) / (hi_x - lo_x); };
    auto py = [&](double v) { return margin + plot * (1.0 - (v - lo_y) / (hi_y - lo_y)); };

    std::ostringstream ss;
    ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
       << "\">\n";
    ss << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(ss, margin, 24, title, 14);
    line(ss, margin, size - margin, size - margin, size - margin);
    line(ss, margin, margin, margin, size - margin);
    text(ss, size / 2.0, size - 16, "component 1", 11, "middle");

    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        ss << "<circle cx=\"" << fmt(px(scores(i, 0))) << "\" cy=\"" << fmt(py(scores(i, 1)))
           << "\" r=\"2.4\" fill=\"" << color_of(assignments[static_cast<std::size_t>(i)])
           << "\" fill-opacity=\"0.55\"/>\n";
    }

    // loading arrows scaled into the plot
    const double arrow_scale = 0.42 * std::min(hi_x - lo_x, hi_y - lo_y) /
                               std::max(1e-12, loadings.cwiseAbs().maxCoeff());
    const double ox = (lo_x + hi_x) / 2.0, oy = (lo_y + hi_y) / 2.0;
    for (Eigen::Index a = 0; a < loadings.rows(); ++a) {
        const double tx = ox + loadings(a, 0) * arrow_scale;
        const double ty = oy + loadings(a, 1) * arrow_scale;
        line(ss, px(ox), py(oy), px(tx), py(ty), "#555", 1.2);
        text(ss, px(tx) + 3, py(ty) - 3, attributes[static_cast<std::size_t>(a)], 9);
    }

    // legend
    for (int c = 0; c < k; ++c) {
        const double y = margin + 16.0 * c;
        ss << "<circle cx=\"" << fmt(size - margin + 14.0) << "\" cy=\"" << fmt(y)
           << "\" r=\"4\" fill=\"" << color_of(c) << "\"/>\n";
        text(ss, size - margin + 24.0, y + 4, std::to_string(c), 10);
    }
    ss << "</svg>\n";
    return ss.str();
}

std::string render_index_curves_svg(const std::vector<IndexCurve>& curves,
                                    const std::string& title) {
    const int width = 640, height = 420, margin = 64;
    std::ostringstream ss;
    ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\">\n";
    ss << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(ss, margin, 24, title, 14);

    int k_lo = 0, k_hi = 1;
    bool first = true;
    for (const auto& c : curves) {
        for (int k : c.k) {
            if (first) {
                k_lo = k_hi = k;
                first = false;
            }
            k_lo = std::min(k_lo, k);
            k_hi = std::max(k_hi, k);
        }
    }
    if (k_hi <= k_lo) k_hi = k_lo + 1;

    const double plot_w = width - 2.0 * margin;
    const double plot_h = height - 2.0 * margin;
    auto px = [&](double k) { return margin + plot_w * (k - k_lo) / (k_hi - k_lo); };
    line(ss, margin, height - margin, width - margin, height - margin);
    for (int k = k_lo; k <= k_hi; ++k) {
        line(ss, px(k), height - margin, px(k), height - margin + 4);
        text(ss, px(k), height - margin + 18, std::to_string(k), 10, "middle");
    }
    text(ss, width / 2.0, height - 14, "k", 11, "middle");

    // each curve normalized to [0, 1] so indices with different scales share
    // the frame; the argmax is what matters
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const auto& c = curves[ci];
        if (c.value.empty()) continue;
        double lo = *std::min_element(c.value.begin(), c.value.end());
        double hi = *std::max_element(c.value.begin(), c.value.end());
        if (hi <= lo) hi = lo + 1.0;
        ss << "<polyline fill=\"none\" stroke=\"" << color_of(static_cast<int>(ci))
           << "\" stroke-width=\"1.8\" points=\"";
        for (std::size_t i = 0; i < c.k.size(); ++i) {
            const double y = margin + plot_h * (1.0 - (c.value[i] - lo) / (hi - lo));
            ss << fmt(px(c.k[i])) << ',' << fmt(y) << ' ';
        }
        ss << "\"/>\n";
        const double ly = margin + 16.0 * static_cast<double>(ci);
        line(ss, width - margin - 110, ly, width - margin - 90, ly,
             color_of(static_cast<int>(ci)), 2.0);
        text(ss, width - margin - 84, ly + 4, c.name, 10);
    }
    ss << "</svg>\n";
    return ss.str();
}

}  // namespace segmint
