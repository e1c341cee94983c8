#include "srgcert/report.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "srgcert/errors.hpp"

namespace srgcert {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string margin_csv(const FeedbackVerdict& verdict) {
  std::string out = "omega,margin,worst_tau\n";
  for (const auto& r : verdict.per_frequency)
    out += format_real(r.omega) + ',' + format_real(r.margin) + ',' + format_real(r.worst_tau) + '\n';
  return out;
}

std::string cloud_csv(const std::vector<SrgCloud>& clouds) {
  std::string out = "omega,re,im,sample_kind\n";
  for (const auto& c : clouds) {
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const SampleKind kind = i < c.kinds.size() ? c.kinds[i] : SampleKind::Grid;
      out += format_real(c.omega) + ',' + format_real(c.points[i].real()) + ',' + format_real(c.points[i].imag()) +
             ',' + to_string(kind) + '\n';
    }
  }
  return out;
}

std::string locus_csv(const std::vector<DetLocus>& loci) {
  std::string out = "tau,omega,re,im\n";
  for (const auto& l : loci)
    for (const auto& s : l.samples)
      out += format_real(l.tau) + ',' + format_real(s.omega) + ',' + format_real(s.value.real()) + ',' +
             format_real(s.value.imag()) + '\n';
  return out;
}

namespace {

struct Box {
  double x0, x1, y0, y1;
};

// Robust view box: central 98% of the coordinates, padded, so a few huge
// inverted points do not squash the picture.
Box view_box(const std::vector<Point>& pts) {
  if (pts.empty()) return {-1, 1, -1, 1};
  std::vector<double> xs, ys;
  for (Point p : pts) {
    xs.push_back(p.real());
    ys.push_back(p.imag());
  }
  auto quantile = [](std::vector<double>& v, double q) {
    const std::size_t k = static_cast<std::size_t>(q * (v.size() - 1));
    std::nth_element(v.begin(), v.begin() + k, v.end());
    return v[k];
  };
  Box b{quantile(xs, 0.01), quantile(xs, 0.99), quantile(ys, 0.01), quantile(ys, 0.99)};
  b.x0 = std::min(b.x0, 0.0);
  b.x1 = std::max(b.x1, 0.0);
  b.y0 = std::min(b.y0, 0.0);
  b.y1 = std::max(b.y1, 0.0);
  const double w = std::max(b.x1 - b.x0, 1e-12), h = std::max(b.y1 - b.y0, 1e-12);
  const double pad = 0.05 * std::max(w, h);
  return {b.x0 - pad, b.x1 + pad, b.y0 - pad, b.y1 + pad};
}

class Canvas {
 public:
  Canvas(const Box& box, const std::string& title, bool timestamp) : box_(box) {
    out_ << std::setprecision(6);
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize + 2 * kPad << "\" height=\""
         << kSize + 2 * kPad << "\">\n";
    if (timestamp) {
      const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
      out_ << "<!-- generated " << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ") << " -->\n";
    }
    out_ << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out_ << "<text x=\"" << kPad << "\" y=\"" << kPad / 2 << "\" font-family=\"sans-serif\" font-size=\"14\">"
         << title << "</text>\n";
    // Axes through the origin.
    line(Point(box.x0, 0), Point(box.x1, 0), "#999");
    line(Point(0, box.y0), Point(0, box.y1), "#999");
  }

  void line(Point a, Point b, const std::string& color) {
    out_ << "<line x1=\"" << sx(a) << "\" y1=\"" << sy(a) << "\" x2=\"" << sx(b) << "\" y2=\"" << sy(b)
         << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
  }

  void dot(Point p, const std::string& color, double r = 1.2) {
    if (!inside(p)) return;
    out_ << "<circle cx=\"" << sx(p) << "\" cy=\"" << sy(p) << "\" r=\"" << r << "\" fill=\"" << color << "\"/>\n";
  }

  void polyline(const std::vector<Point>& pts, const std::string& color) {
    out_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
    for (Point p : pts) {
      const Point c(std::clamp(p.real(), box_.x0, box_.x1), std::clamp(p.imag(), box_.y0, box_.y1));
      out_ << sx(c) << ',' << sy(c) << ' ';
    }
    out_ << "\"/>\n";
  }

  void label(int row, const std::string& text, const std::string& color) {
    out_ << "<text x=\"" << kPad + 10 << "\" y=\"" << kPad + 20 + 18 * row
         << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">" << text << "</text>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  static constexpr double kSize = 600;
  static constexpr double kPad = 40;

  bool inside(Point p) const {
    return p.real() >= box_.x0 && p.real() <= box_.x1 && p.imag() >= box_.y0 && p.imag() <= box_.y1;
  }
  double scale() const { return kSize / std::max(box_.x1 - box_.x0, box_.y1 - box_.y0); }
  double sx(Point p) const { return kPad + (p.real() - box_.x0) * scale(); }
  double sy(Point p) const { return kPad + (box_.y1 - p.imag()) * scale(); }

  Box box_;
  std::ostringstream out_;
};

}  // namespace

std::string srg_projection_svg(const std::vector<PlotSeries>& series, double omega_lo, double omega_hi,
                               const std::string& title, bool timestamp) {
  std::vector<Point> all;
  for (const auto& s : series)
    for (const auto& c : s.clouds)
      if (c.omega >= omega_lo && c.omega <= omega_hi) all.insert(all.end(), c.points.begin(), c.points.end());
  Canvas canvas(view_box(all), title, timestamp);
  for (std::size_t k = 0; k < series.size(); ++k) {
    canvas.label(static_cast<int>(k), series[k].label, series[k].color);
    for (const auto& c : series[k].clouds)
      if (c.omega >= omega_lo && c.omega <= omega_hi)
        for (Point p : c.points) canvas.dot(p, series[k].color);
  }
  return canvas.finish();
}

std::string nyquist_svg(const DetLocus& locus, const std::string& title, bool timestamp) {
  std::vector<Point> pts{locus.limit};
  for (const auto& s : locus.samples) pts.push_back(s.value);
  Canvas canvas(view_box(pts), title, timestamp);
  pts.push_back(locus.limit);
  canvas.polyline(pts, "#1f77b4");
  canvas.dot(0.0, "#d62728", 4.0);
  canvas.label(0, "origin", "#d62728");
  return canvas.finish();
}

std::string sha256_hex(const std::string& content) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(content.data(), content.size(), digest, &length, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

ArtifactWriter::ArtifactWriter(std::string directory) : directory_(std::move(directory)) {
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) throw Error("cannot create output directory '" + directory_ + "': " + ec.message());
}

void ArtifactWriter::write(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::path(directory_) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << content;
  entries_.push_back({{"file", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
}

void ArtifactWriter::finish(const nlohmann::json& config) {
  const nlohmann::json manifest = {{"artifacts", entries_}, {"config", config}};
  const auto path = std::filesystem::path(directory_) / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << manifest.dump(2) << '\n';
}

}  // namespace srgcert
