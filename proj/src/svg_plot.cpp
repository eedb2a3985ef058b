#include <algorithm>
#include <cmath>
#include <sstream>

#include "cechpix/io.hpp"

namespace cechpix {

std::string diagram_svg(const PersistenceDiagram& d) {
  constexpr double size = 400.0, margin = 50.0, rail = 20.0;
  double hi = 0.0;
  for (const auto& p : d.points) {
    hi = std::max(hi, p.birth);
    if (!p.essential()) hi = std::max(hi, p.death);
  }
  if (hi <= 0) hi = 1.0;
  hi *= 1.05;
  auto sx = [&](double v) { return margin + v / hi * size; };
  auto sy = [&](double v) { return margin + rail + size - v / hi * size; };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ostringstream o;
  const double w = size + 2 * margin, h = size + 2 * margin + rail;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
    << ' ' << h << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<line class=\"axis\" x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(hi) << "\" y2=\"" << sy(0)
    << "\" stroke=\"black\"/>\n";
  o << "<line class=\"axis\" x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(0) << "\" y2=\"" << sy(hi)
    << "\" stroke=\"black\"/>\n";
  o << "<line class=\"diagonal\" x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(hi) << "\" y2=\"" << sy(hi)
    << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  o << "<line class=\"rail\" x1=\"" << sx(0) << "\" y1=\"" << margin << "\" x2=\"" << sx(hi) << "\" y2=\"" << margin
    << "\" stroke=\"gray\"/>\n";
  o << "<text x=\"" << sx(hi / 2) << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\" font-size=\"12\">birth</text>\n";
  o << "<text x=\"14\" y=\"" << sy(hi / 2) << "\" font-size=\"12\" transform=\"rotate(-90 14 " << sy(hi / 2)
    << ")\" text-anchor=\"middle\">death</text>\n";
  o << "<text x=\"" << sx(0) - 6 << "\" y=\"" << margin + 4 << "\" text-anchor=\"end\" font-size=\"12\">inf</text>\n";
  for (const auto& p : d.points) {
    const char* c = colors[static_cast<std::size_t>(p.dim) % 6];
    const double y = p.essential() ? margin : sy(p.death);
    o << "<circle class=\"point dim" << p.dim << "\" cx=\"" << sx(p.birth) << "\" cy=\"" << y
      << "\" r=\"3.5\" fill=\"" << c << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace cechpix
