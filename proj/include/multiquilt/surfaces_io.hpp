// Serialization for quilted surfaces.
//
// Structured text: canonical-ordered JSON, lossless round trip.
//   {"rects": [{"id", "s_lo", "s_hi", "target", "thin"}],        s bounds may
//    "disks": [{"id", "colored_cap"}],                           be "inf"/"-inf"
//    "identifications": [{"a": [rect, side, lo, hi], "b": [...],
//                         "flip", "disk"}],
//    "ends": [{"rect", "toward_hi"}],
//    "seams": [{"label", "cap_disk", "segments": [[rect,s0,t0,s1,t1]]}]}
//
// SVG 1.1: schematic layout, one row per rectangle; identifications drawn as
// dashed connectors, seams as one path per branch with class "seam", ends as
// arrows, thin rectangles shaded.  Unbounded rectangles are clipped at a
// configurable s-window (SVG only).
#pragma once

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <string>

#include "surfaces.hpp"

namespace multiquilt {

namespace detail {

inline nlohmann::ordered_json s_bound_to_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}
inline double s_bound_from_json(const nlohmann::ordered_json& j) {
  if (j.is_string()) return j.get<std::string>() == "-inf" ? -kInf : kInf;
  return j.get<double>();
}
inline nlohmann::ordered_json arc_to_json(const ArcRef& a) {
  return nlohmann::ordered_json::array(
      {a.rect, static_cast<int>(a.side), s_bound_to_json(a.lo), s_bound_to_json(a.hi)});
}
inline ArcRef arc_from_json(const nlohmann::ordered_json& j) {
  return ArcRef{j.at(0).get<int>(), static_cast<Side>(j.at(1).get<int>()), s_bound_from_json(j.at(2)),
                s_bound_from_json(j.at(3))};
}

}  // namespace detail

inline nlohmann::ordered_json surface_to_json(const QuiltSurface& s) {
  using detail::s_bound_to_json;
  nlohmann::ordered_json j;
  j["rects"] = nlohmann::ordered_json::array();
  for (const auto& r : s.rects)
    j["rects"].push_back(nlohmann::ordered_json{{"id", r.id},
                                                {"s_lo", s_bound_to_json(r.s_lo)},
                                                {"s_hi", s_bound_to_json(r.s_hi)},
                                                {"target", r.target},
                                                {"thin", r.thin}});
  j["disks"] = nlohmann::ordered_json::array();
  for (const auto& d : s.disks)
    j["disks"].push_back(nlohmann::ordered_json{{"id", d.id}, {"colored_cap", d.colored_cap}});
  j["identifications"] = nlohmann::ordered_json::array();
  for (const auto& id : s.idents)
    j["identifications"].push_back(nlohmann::ordered_json{{"a", detail::arc_to_json(id.a)},
                                                          {"b", detail::arc_to_json(id.b)},
                                                          {"flip", id.flip},
                                                          {"disk", id.disk}});
  j["ends"] = nlohmann::ordered_json::array();
  for (const auto& e : s.ends)
    j["ends"].push_back(nlohmann::ordered_json{{"rect", e.rect}, {"toward_hi", e.toward_hi}});
  j["seams"] = nlohmann::ordered_json::array();
  for (const auto& br : s.seams) {
    nlohmann::ordered_json segs = nlohmann::ordered_json::array();
    for (const auto& g : br.segments)
      segs.push_back(nlohmann::ordered_json::array(
          {g.rect, s_bound_to_json(g.s0), g.t0, s_bound_to_json(g.s1), g.t1}));
    j["seams"].push_back(nlohmann::ordered_json{
        {"label", br.label}, {"cap_disk", br.cap_disk}, {"segments", segs}});
  }
  return j;
}

inline QuiltSurface surface_from_json(const nlohmann::ordered_json& j) {
  using detail::s_bound_from_json;
  QuiltSurface s;
  for (const auto& jr : j.at("rects"))
    s.rects.push_back(SurfRect{jr.at("id").get<int>(), s_bound_from_json(jr.at("s_lo")),
                               s_bound_from_json(jr.at("s_hi")), jr.at("target").get<std::string>(),
                               jr.at("thin").get<bool>()});
  for (const auto& jd : j.at("disks"))
    s.disks.push_back(VertexDisk{jd.at("id").get<int>(), jd.at("colored_cap").get<bool>()});
  for (const auto& ji : j.at("identifications"))
    s.idents.push_back(Identification{detail::arc_from_json(ji.at("a")),
                                      detail::arc_from_json(ji.at("b")), ji.at("flip").get<bool>(),
                                      ji.at("disk").get<int>()});
  for (const auto& je : j.at("ends"))
    s.ends.push_back(EndRef{je.at("rect").get<int>(), je.at("toward_hi").get<bool>()});
  for (const auto& js : j.at("seams")) {
    SeamBranch br;
    br.label = js.at("label").get<int>();
    br.cap_disk = js.at("cap_disk").get<int>();
    for (const auto& jg : js.at("segments"))
      br.segments.push_back(SeamSegment{jg.at(0).get<int>(), s_bound_from_json(jg.at(1)),
                                        jg.at(2).get<double>(), s_bound_from_json(jg.at(3)),
                                        jg.at(4).get<double>()});
    s.seams.push_back(std::move(br));
  }
  return s;
}

/// Schematic SVG: row m draws rectangle m with its s-axis horizontal,
/// clipped to [-clip, clip].
inline std::string surface_to_svg(const QuiltSurface& s, double clip = 10.0) {
  const double kScale = 24.0;   // pixels per unit s
  const double kRowH = 1.0;     // strip height in units (t-width is 1)
  const double kRowGap = 0.8;
  const double kMargin = 1.0;
  auto clip_lo = [&](double v) { return std::max(v, -clip); };
  auto clip_hi = [&](double v) { return std::min(v, clip); };
  auto x_of = [&](double sc) { return (sc + clip + kMargin) * kScale; };
  auto row_y = [&](int rect) { return (kMargin + rect * (kRowH + kRowGap)) * kScale; };
  // arc midpoint in drawing coordinates
  auto arc_mid = [&](const ArcRef& a) -> std::pair<double, double> {
    const SurfRect& r = s.rect(a.rect);
    double y0 = row_y(a.rect);
    if (a.side == Side::Left || a.side == Side::Right) {
      double x = x_of(a.side == Side::Left ? clip_lo(r.s_lo) : clip_hi(r.s_hi));
      return {x, y0 + (1.0 - 0.5 * (a.lo + a.hi)) * kRowH * kScale};
    }
    double x = x_of(0.5 * (clip_lo(a.lo) + clip_hi(a.hi)));
    return {x, y0 + (a.side == Side::Bottom ? kRowH * kScale : 0.0)};
  };

  std::ostringstream svg;
  svg.precision(6);
  double width = (2 * clip + 2 * kMargin) * kScale;
  double height = (kMargin * 2 + s.rects.size() * (kRowH + kRowGap)) * kScale;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" "
         "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\"/></marker></defs>\n";
  for (const auto& r : s.rects) {
    double x0 = x_of(clip_lo(r.s_lo)), x1 = x_of(clip_hi(r.s_hi));
    svg << "<rect class=\"patch " << (r.thin ? "thin" : "thick") << "\" x=\"" << x0 << "\" y=\""
        << row_y(r.id) << "\" width=\"" << (x1 - x0) << "\" height=\"" << kRowH * kScale
        << "\" fill=\"" << (r.thin ? "#dce6f2" : "#f2e6dc") << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << x0 + 4 << "\" y=\"" << row_y(r.id) + 14 << "\" font-size=\"10\">"
        << r.target << " #" << r.id << "</text>\n";
  }
  for (const auto& id : s.idents) {
    auto [xa, ya] = arc_mid(id.a);
    auto [xb, yb] = arc_mid(id.b);
    svg << "<line class=\"ident\" x1=\"" << xa << "\" y1=\"" << ya << "\" x2=\"" << xb
        << "\" y2=\"" << yb << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (const auto& br : s.seams) {
    svg << "<path class=\"seam\" fill=\"none\" stroke=\"#c00\" stroke-width=\"1.5\" d=\"";
    for (const auto& g : br.segments) {
      double y0 = row_y(g.rect);
      svg << "M" << x_of(clip_lo(std::min(g.s0, g.s1))) << "," << y0 + (1.0 - g.t0) * kRowH * kScale
          << " L" << x_of(clip_hi(std::max(g.s0, g.s1))) << ","
          << y0 + (1.0 - g.t1) * kRowH * kScale << " ";
    }
    svg << "\"/>\n";
  }
  for (size_t k = 0; k < s.ends.size(); ++k) {
    const EndRef& e = s.ends[k];
    const SurfRect& r = s.rect(e.rect);
    double y = row_y(e.rect) + 0.5 * kRowH * kScale;
    double x0, x1;
    if (e.toward_hi) {
      x1 = x_of(clip_hi(r.s_hi));
      x0 = x1 - kScale;
    } else {
      x1 = x_of(clip_lo(r.s_lo));
      x0 = x1 + kScale;
    }
    svg << "<line class=\"end\" x1=\"" << x0 << "\" y1=\"" << y << "\" x2=\"" << x1 << "\" y2=\""
        << y << "\" stroke=\"#060\" marker-end=\"url(#arrow)\"/>\n";
    svg << "<text x=\"" << x1 << "\" y=\"" << y - 6 << "\" font-size=\"10\" fill=\"#060\">z" << k
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace multiquilt
