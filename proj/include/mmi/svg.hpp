#pragma once

// SVG wall diagrams for two ideals: one polyline per C-facet, drawn inside
// the box, with the log-canonical region hatched.

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "mmi/enumeration.hpp"
#include "mmi/error.hpp"
#include "mmi/geometry2d.hpp"
#include "mmi/rational.hpp"
#include "mmi/region.hpp"
#include "mmi/resolution.hpp"

namespace mmi::svg {

/// Decimal text of q rounded half up to `digits` places, computed exactly.
inline std::string decimal(const Rational& q, int digits = 3) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Integer scaled = floor_of(q * Rational(scale) + Rational(1, 2));
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.str();
  if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return (negative && s != "0" ? "-" : "") + s;
}

/// "6z1+2z2=4"
inline std::string hyperplane_label(const std::vector<Rational>& a, const Rational& c, const std::string& rel = "=") {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (a[i] != 1) out += to_string(a[i]);
    out += "z" + std::to_string(i + 1);
  }
  return out + rel + to_string(c);
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '<') out += "&lt;";
    else if (ch == '>') out += "&gt;";
    else if (ch == '&') out += "&amp;";
    else out += ch;
  }
  return out;
}

inline std::string render_walls(const LogResolution& res, const EnumerationResult& e) {
  if (e.box.size() != 2) throw Error(ErrorCode::GeometryUnsupported, "wall diagrams need exactly two ideals");
  const Rational width = 600, height = 600, margin = 40;
  const Rational sx = width / e.box[0], sy = height / e.box[1];
  auto X = [&](const Rational& z1) { return decimal(margin + z1 * sx); };
  auto Y = [&](const Rational& z2) { return decimal(margin + height - z2 * sy); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << decimal(width + 2 * margin) << ' '
      << decimal(height + 2 * margin) << "\" width=\"" << decimal(width + 2 * margin) << "\" height=\""
      << decimal(height + 2 * margin) << "\">\n";
  out << "<defs>\n"
      << "<clipPath id=\"box\"><rect x=\"" << X(0) << "\" y=\"" << Y(e.box[1]) << "\" width=\"" << decimal(width)
      << "\" height=\"" << decimal(height) << "\"/></clipPath>\n"
      << "<pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"8\" height=\"8\" patternTransform=\"rotate(45)\">"
      << "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"gray\" stroke-width=\"1.5\"/></pattern>\n"
      << "</defs>\n";

  // Box and axes.
  out << "<rect x=\"" << X(0) << "\" y=\"" << Y(e.box[1]) << "\" width=\"" << decimal(width) << "\" height=\""
      << decimal(height) << "\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"2,3\"/>\n";
  out << "<text x=\"" << X(e.box[0]) << "\" y=\"" << decimal(margin + height + 25) << "\" text-anchor=\"end\">z1 = "
      << to_string(e.box[0]) << "</text>\n";
  out << "<text x=\"" << decimal(margin - 5) << "\" y=\"" << decimal(margin - 10) << "\">z2 = " << to_string(e.box[1])
      << "</text>\n";

  // Log-canonical region, hatched.
  if (!e.records.empty()) {
    const geo::Polygon lct = region_polygon(e.records.front().region);
    out << "<polygon class=\"lct-region\" clip-path=\"url(#box)\" fill=\"url(#hatch)\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < lct.size(); ++i) out << (i ? " " : "") << X(lct[i].x) << ',' << Y(lct[i].y);
    out << "\"/>\n";
  }

  out << "<g class=\"walls\" clip-path=\"url(#box)\" fill=\"none\" stroke=\"black\" stroke-width=\"2\">\n";
  for (const auto& rec : e.records)
    for (const auto& f : rec.cfacets) {
      const std::size_t j = f.components.front();
      const Rational c = res.canonical[j] + 1 + rec.divisor()[j];
      std::string ids;
      for (std::size_t k : f.components) ids += (ids.empty() ? "" : ",") + res.graph.id(k);
      const std::string label = ids + ": " + hyperplane_label(res.ideals.column(j), c);
      out << "<polyline class=\"wall\" data-record=\"" << rec.id << "\" points=\"" << X(f.from[0]) << ','
          << Y(f.from[1]) << ' ' << X(f.to[0]) << ',' << Y(f.to[1]) << "\"><title>" << escape(label)
          << "</title></polyline>\n";
    }
  out << "</g>\n";

  out << "<g class=\"labels\" clip-path=\"url(#box)\" font-size=\"9\" fill=\"black\">\n";
  for (const auto& rec : e.records)
    for (const auto& f : rec.cfacets) {
      const std::size_t j = f.components.front();
      const Rational c = res.canonical[j] + 1 + rec.divisor()[j];
      out << "<text x=\"" << X(f.midpoint[0]) << "\" y=\"" << Y(f.midpoint[1]) << "\">" << escape(res.graph.id(j))
          << ": " << escape(hyperplane_label(res.ideals.column(j), c)) << "</text>\n";
    }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace mmi::svg
