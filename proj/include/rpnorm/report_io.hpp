#ifndef RPNORM_REPORT_IO_HPP_
#define RPNORM_REPORT_IO_HPP_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>

#include "rpnorm/empirical_stats.hpp"
#include "rpnorm/errors.hpp"
#include "rpnorm/format.hpp"

namespace rpnorm {

inline void write_text_file(const std::filesystem::path &path, const std::string &contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigurationError("cannot write '" + path.string() + "'");
  out << contents;
  if (!out) throw ConfigurationError("write failed for '" + path.string() + "'");
}

/// CSV: index,value.
inline void write_samples_csv(std::ostream &out, std::span<const double> values) {
  out << "index,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) out << i << ',' << fmt_double(values[i]) << '\n';
}

/// CSV: order,estimate,stderr_plugin,stderr_jackknife,gaussian_reference.
inline void write_moments_csv(std::ostream &out, std::span<const MomentEstimate> moments) {
  out << "order,estimate,stderr_plugin,stderr_jackknife,gaussian_reference\n";
  for (const auto &m : moments) {
    // E G^k: 0 for odd k, (k-1)!! for even k.
    double reference = 0.0;
    if (m.order % 2 == 0) {
      reference = 1.0;
      for (int k = m.order - 1; k > 1; k -= 2) reference *= k;
    }
    out << m.order << ',' << fmt_double(m.estimate) << ',' << fmt_double(m.stderr_plugin) << ','
        << fmt_double(m.stderr_jackknife) << ',' << fmt_double(reference) << '\n';
  }
}

/// CSV: bin_low,bin_high,count,density,normal_density_mid.
inline void write_histogram_csv(std::ostream &out, const Histogram &h) {
  out << "bin_low,bin_high,count,density,normal_density_mid\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const double mid = 0.5 * (h.edges[b] + h.edges[b + 1]);
    out << fmt_double(h.edges[b]) << ',' << fmt_double(h.edges[b + 1]) << ',' << h.counts[b]
        << ',' << fmt_double(h.density[b]) << ',' << fmt_double(normal_pdf(mid)) << '\n';
  }
}

/*
 * Self-contained SVG of a density histogram with the standard normal density
 * drawn over it as a reference curve.
 */
inline std::string histogram_svg(const Histogram &h, const std::string &title) {
  constexpr double width = 640.0, height = 400.0;
  constexpr double left = 50.0, right = 20.0, top = 40.0, bottom = 40.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const double x_lo = h.edges.front();
  const double x_hi = h.edges.back();
  double y_max = normal_pdf(0.0);
  for (const double d : h.density) y_max = std::max(y_max, d);
  y_max *= 1.1;
  auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto sy = [&](double y) { return top + plot_h - y / y_max * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const double x0 = sx(h.edges[b]);
    const double x1 = sx(h.edges[b + 1]);
    const double y = sy(h.density[b]);
    svg << "<rect x=\"" << fmt_fixed(x0, 2) << "\" y=\"" << fmt_fixed(y, 2) << "\" width=\""
        << fmt_fixed(x1 - x0, 2) << "\" height=\"" << fmt_fixed(top + plot_h - y, 2)
        << "\" fill=\"#9ecae1\" stroke=\"#3182bd\" stroke-width=\"0.5\"/>\n";
  }
  svg << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
  constexpr int kCurvePoints = 200;
  for (int i = 0; i <= kCurvePoints; ++i) {
    const double x = x_lo + (x_hi - x_lo) * i / kCurvePoints;
    svg << fmt_fixed(sx(x), 2) << ',' << fmt_fixed(sy(normal_pdf(x)), 2)
        << (i == kCurvePoints ? "" : " ");
  }
  svg << "\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double x = x_lo + (x_hi - x_lo) * tick / 4.0;
    svg << "<text x=\"" << fmt_fixed(sx(x), 2) << "\" y=\"" << height - 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt_fixed(x, 2) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rpnorm

#endif  // RPNORM_REPORT_IO_HPP_
