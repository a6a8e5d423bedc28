#include "ivt/plot.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "ivt/kernels.hpp"

namespace ivt {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  // Avoid "-0.000".
  if (std::string_view(buf) == "-0.000") return "0.000";
  return buf;
}

bool valid_range(const std::pair<double, double>& r) {
  return std::isfinite(r.first) && std::isfinite(r.second) && r.first < r.second;
}

struct PlottedPoint {
  int n;
  double x;
  double y;
};

struct TraceView {
  std::vector<PlottedPoint> dots;
  double epsilon = 0;
  std::string epsilon_text;
};

// Dot coordinates are the trace's own values, rounded once to double here.
TraceView view_of(const AnyTrace& trace) {
  return std::visit(
      [](const auto& t) {
        using T = std::decay_t<decltype(t.limit_estimate)>;
        TraceView view;
        for (const auto& s : t.steps) {
          view.dots.push_back(PlottedPoint{s.n, ScalarTraits<T>::to_double(s.c_n),
                                           ScalarTraits<T>::to_double(s.f_c_n)});
        }
        view.epsilon = ScalarTraits<T>::to_double(t.config.epsilon);
        if constexpr (std::is_same_v<T, Rational>) {
          const Rational& e = t.config.epsilon;
          view.epsilon_text = e.denominator() == 1 ? e.numerator().get_str()
                                                   : e.str();
        } else {
          view.epsilon_text = to_string(t.config.epsilon);
        }
        return view;
      },
      trace);
}

}  // namespace

PlotFrame PlotFrame::of(const PlotSpec& spec) {
  PlotFrame frame;
  frame.left = spec.style.margin;
  frame.top = spec.style.margin / 2;
  frame.plot_width = spec.style.width - 1.5 * spec.style.margin;
  frame.plot_height = spec.style.height - 1.5 * spec.style.margin;
  frame.x_range = spec.x_range;
  frame.y_range = spec.y_range;
  return frame;
}

double PlotFrame::to_px(double x) const {
  return left + (x - x_range.first) / (x_range.second - x_range.first) * plot_width;
}

double PlotFrame::to_py(double y) const {
  return top + (y_range.second - y) / (y_range.second - y_range.first) * plot_height;
}

double PlotFrame::from_px(double px) const {
  return x_range.first + (px - left) / plot_width * (x_range.second - x_range.first);
}

double PlotFrame::from_py(double py) const {
  return y_range.second - (py - top) / plot_height * (y_range.second - y_range.first);
}

std::string render_trace_svg(const PlotSpec& spec) {
  if (!valid_range(spec.x_range)) throw PlotError("degenerate x range");
  if (!valid_range(spec.y_range)) throw PlotError("degenerate y range");
  const PlotStyle& st = spec.style;
  if (st.width <= 2 * st.margin || st.height <= 2 * st.margin) {
    throw PlotError("canvas too small for its margins");
  }
  if (st.curve_samples < 2) throw PlotError("need at least two curve samples");
  const TraceView view = view_of(spec.trace);
  if (view.dots.empty()) throw PlotError("trace has no steps");

  const PlotFrame fr = PlotFrame::of(spec);
  const double eps = spec.epsilon_line.value_or(view.epsilon);
  const auto [x0, x1] = spec.x_range;
  const auto [y0, y1] = spec.y_range;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << st.width << "\" height=\"" << st.height << "\" viewBox=\"0 0 "
      << st.width << ' ' << st.height << "\">\n"
      << "<defs><clipPath id=\"plot-area\"><rect x=\"" << num(fr.left)
      << "\" y=\"" << num(fr.top) << "\" width=\"" << num(fr.plot_width)
      << "\" height=\"" << num(fr.plot_height) << "\"/></clipPath></defs>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // Axes through the origin when it is in view, otherwise along the frame.
  const double axis_y = (y0 <= 0 && 0 <= y1) ? 0.0 : y0;
  const double axis_x = (x0 <= 0 && 0 <= x1) ? 0.0 : x0;
  svg << "<g class=\"axes\" stroke=\"#000000\" stroke-width=\"0.8\" "
         "font-family=\"serif\" font-size=\"11\">\n"
      << "<line x1=\"" << num(fr.to_px(x0)) << "\" y1=\"" << num(fr.to_py(axis_y))
      << "\" x2=\"" << num(fr.to_px(x1)) << "\" y2=\"" << num(fr.to_py(axis_y))
      << "\"/>\n"
      << "<line x1=\"" << num(fr.to_px(axis_x)) << "\" y1=\"" << num(fr.to_py(y0))
      << "\" x2=\"" << num(fr.to_px(axis_x)) << "\" y2=\"" << num(fr.to_py(y1))
      << "\"/>\n";
  for (const double t : {-1.0, 1.0}) {
    const char* label = t < 0 ? "-1" : "1";
    if (x0 <= t && t <= x1) {
      const double px = fr.to_px(t);
      const double py = fr.to_py(axis_y);
      svg << "<line class=\"tick\" x1=\"" << num(px) << "\" y1=\"" << num(py - 4)
          << "\" x2=\"" << num(px) << "\" y2=\"" << num(py + 4) << "\"/>\n"
          << "<text x=\"" << num(px) << "\" y=\"" << num(py + 16)
          << "\" text-anchor=\"middle\" stroke=\"none\">" << label << "</text>\n";
    }
    if (y0 <= t && t <= y1) {
      const double px = fr.to_px(axis_x);
      const double py = fr.to_py(t);
      svg << "<line class=\"tick\" x1=\"" << num(px - 4) << "\" y1=\"" << num(py)
          << "\" x2=\"" << num(px + 4) << "\" y2=\"" << num(py) << "\"/>\n"
          << "<text x=\"" << num(px - 7) << "\" y=\"" << num(py + 4)
          << "\" text-anchor=\"end\" stroke=\"none\">" << label << "</text>\n";
    }
  }
  svg << "</g>\n";

  // Presentation-only curve; breaks where f is undefined.
  const auto samples = sample_curve(spec.function, x0, x1, st.curve_samples);
  svg << "<path class=\"curve\" clip-path=\"url(#plot-area)\" fill=\"none\" stroke=\""
      << st.curve_stroke << "\" stroke-width=\"" << num(st.curve_stroke_width)
      << "\" d=\"";
  bool pen_down = false;
  for (const auto& p : samples) {
    if (!p.defined || !std::isfinite(p.y)) {
      pen_down = false;
      continue;
    }
    svg << (pen_down ? " L" : (&p == &samples.front() ? "M" : " M"))
        << num(fr.to_px(p.x)) << ',' << num(fr.to_py(p.y));
    pen_down = true;
  }
  svg << "\"/>\n";

  if (y0 <= eps && eps <= y1) {
    const double py = fr.to_py(eps);
    svg << "<line class=\"epsilon\" x1=\"" << num(fr.to_px(x0)) << "\" y1=\""
        << num(py) << "\" x2=\"" << num(fr.to_px(x1)) << "\" y2=\"" << num(py)
        << "\" stroke=\"#000000\" stroke-width=\"0.8\" stroke-dasharray=\""
        << st.epsilon_dash << "\"/>\n"
        << "<text class=\"epsilon-label\" x=\"" << num(fr.to_px(x0) - 4)
        << "\" y=\"" << num(py + 4)
        << "\" text-anchor=\"end\" font-family=\"serif\" font-size=\"11\">"
        << "\xCE\xB5=" << view.epsilon_text << "</text>\n";
  }

  svg << "<g class=\"steps\" fill=\"#000000\">\n";
  for (const auto& d : view.dots) {
    svg << "<circle data-n=\"" << d.n << "\" cx=\"" << num(fr.to_px(d.x))
        << "\" cy=\"" << num(fr.to_py(d.y)) << "\" r=\"" << num(st.dot_radius)
        << "\"/>\n";
  }
  svg << "</g>\n";

  const PlottedPoint& last = view.dots.back();
  const double h = st.square_half_size;
  svg << "<rect class=\"limit\" x=\"" << num(fr.to_px(last.x) - h) << "\" y=\""
      << num(fr.to_py(last.y) - h) << "\" width=\"" << num(2 * h)
      << "\" height=\"" << num(2 * h)
      << "\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"1\"/>\n"
      << "</svg>\n";
  return svg.str();
}

}  // namespace ivt
