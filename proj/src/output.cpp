#include "gyroform/output.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "gyroform/errors.hpp"

namespace gyroform {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("failed writing '" + path + "'");
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string s = "t,id,rx,ry,rz,xx,xy,xz,yx,yy,yz,zx,zy,zz,u,v,w\n";
  for (const auto& sample : traj.samples) {
    for (std::size_t i = 0; i < sample.states.size(); ++i) {
      const auto& st = sample.states[i];
      const ControlTriple c = i < sample.controls.size() ? sample.controls[i] : ControlTriple{};
      s += format_real(sample.t);
      s += ',';
      s += std::to_string(i);
      for (const Vec3* v : {&st.r, &st.x, &st.y, &st.z})
        for (int k = 0; k < 3; ++k) {
          s += ',';
          s += format_real((*v)(k));
        }
      for (double q : {c.u, c.v, c.w}) {
        s += ',';
        s += format_real(q);
      }
      s += '\n';
    }
  }
  return s;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  write_text_file(path, trajectory_csv(traj));
}

nlohmann::ordered_json report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["converged"] = r.converged;
  j["terminalClass"] = std::string(to_string(r.terminal));
  j["finalSeparation"] = r.final_separation;
  j["minSeparation"] = r.min_separation;
  j["maxLyapunovIncrease"] = r.max_lyapunov_increase;
  j["alignmentMetric"] = r.alignment_metric;
  j["wallTime"] = r.wall_time;
  j["aborted"] = r.aborted;
  j["diagnostic"] = r.diagnostic;
  return j;
}

RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.converged = j.at("converged").get<bool>();
  const auto cls = j.at("terminalClass").get<std::string>();
  bool known = false;
  for (TerminalClass c : {TerminalClass::None, TerminalClass::PerpendicularBaseline, TerminalClass::LeaderFollower,
                          TerminalClass::CirclingDiameter}) {
    if (cls == to_string(c)) {
      r.terminal = c;
      known = true;
    }
  }
  if (!known) throw Error("report: unknown terminalClass '" + cls + "'");
  r.final_separation = j.at("finalSeparation").get<double>();
  r.min_separation = j.at("minSeparation").get<double>();
  r.max_lyapunov_increase = j.at("maxLyapunovIncrease").get<double>();
  r.alignment_metric = j.at("alignmentMetric").get<double>();
  r.wall_time = j.at("wallTime").get<double>();
  r.aborted = j.at("aborted").get<bool>();
  r.diagnostic = j.at("diagnostic").get<std::string>();
  return r;
}

void write_report_json(const RunReport& report, const std::string& path) {
  write_text_file(path, report_to_json(report).dump(2) + "\n");
}

Projection Projection::parse(std::string_view text) {
  if (text == "xy") return {Kind::XY, Vec3::UnitZ()};
  if (text == "xz") return {Kind::XZ, Vec3::UnitY()};
  if (text == "yz") return {Kind::YZ, Vec3::UnitX()};
  if (text == "auto") return {Kind::Auto, Vec3::UnitZ()};
  Vec3 n;
  int k = 0;
  std::size_t pos = 0;
  while (k < 3) {
    const std::size_t comma = text.find(',', pos);
    std::string_view part = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) break;
    n(k++) = v;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (k != 3 || !(n.norm() > 0.0) || !n.allFinite())
    throw ContractError("projection: expected xy, xz, yz, auto or a nonzero normal 'nx,ny,nz'");
  return custom(n);
}

std::string Projection::to_string() const {
  switch (kind) {
    case Kind::XY:
      return "xy";
    case Kind::XZ:
      return "xz";
    case Kind::YZ:
      return "yz";
    case Kind::Auto:
      return "auto";
    case Kind::Custom:
      break;
  }
  return format_real(normal.x()) + "," + format_real(normal.y()) + "," + format_real(normal.z());
}

Vec3 formation_plane_normal(const Trajectory& traj, std::size_t tail) {
  if (traj.empty()) throw ContractError("formation_plane_normal: empty trajectory");
  const std::size_t first = traj.samples.size() > tail ? traj.samples.size() - tail : 0;
  Vec3 mean = Vec3::Zero();
  std::size_t count = 0;
  for (std::size_t k = first; k < traj.samples.size(); ++k)
    for (const auto& s : traj.samples[k].states) {
      mean += s.r;
      ++count;
    }
  mean /= static_cast<double>(count);
  Mat3 cov = Mat3::Zero();
  for (std::size_t k = first; k < traj.samples.size(); ++k)
    for (const auto& s : traj.samples[k].states) cov += (s.r - mean) * (s.r - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  Vec3 n = eig.eigenvectors().col(0);
  // Fix the sign so the result is reproducible: largest component positive.
  Eigen::Index idx;
  n.cwiseAbs().maxCoeff(&idx);
  if (n(idx) < 0.0) n = -n;
  return n;
}

std::pair<Vec3, Vec3> projection_axes(const Vec3& normal) {
  const Vec3 n = normal.normalized();
  Vec3 u = Vec3::Zero();
  for (int i = 0; i < 3; ++i) {
    const Vec3 e = Vec3::Unit(i);
    if (std::abs(e.dot(n)) < 0.9) {
      u = (e - e.dot(n) * n).normalized();
      break;
    }
  }
  return {u, n.cross(u)};
}

namespace {

constexpr double kCanvas = 800.0;
constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt_coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Trajectory& traj, const Projection& plane) {
  if (traj.empty() || traj.particles == 0) throw ContractError("plot_svg: empty trajectory");

  Vec3 ax, ay;
  switch (plane.kind) {
    case Projection::Kind::XY:
      ax = Vec3::UnitX(), ay = Vec3::UnitY();
      break;
    case Projection::Kind::XZ:
      ax = Vec3::UnitX(), ay = Vec3::UnitZ();
      break;
    case Projection::Kind::YZ:
      ax = Vec3::UnitY(), ay = Vec3::UnitZ();
      break;
    case Projection::Kind::Custom:
      std::tie(ax, ay) = projection_axes(plane.normal);
      break;
    case Projection::Kind::Auto:
      std::tie(ax, ay) = projection_axes(formation_plane_normal(traj));
      break;
  }

  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  for (const auto& s : traj.samples)
    for (const auto& st : s.states) {
      const double px = st.r.dot(ax), py = st.r.dot(ay);
      xmin = std::min(xmin, px), xmax = std::max(xmax, px);
      ymin = std::min(ymin, py), ymax = std::max(ymax, py);
    }
  double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double margin = 0.05 * span;
  span += 2.0 * margin;
  const double scale = kCanvas / span;
  // Center the data box; screen y grows downward.
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  auto sx = [&](double px) { return 0.5 * kCanvas + (px - cx) * scale; };
  auto sy = [&](double py) { return 0.5 * kCanvas - (py - cy) * scale; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < traj.particles; ++i) {
    const char* color = kPalette[i % kPalette.size()];
    os << "<polyline id=\"p" << i << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& s : traj.samples) {
      const auto& st = s.states[i];
      if (!first) os << ' ';
      os << fmt_coord(sx(st.r.dot(ax))) << ',' << fmt_coord(sy(st.r.dot(ay)));
      first = false;
    }
    os << "\"/>\n";

    const auto& last = traj.back().states[i];
    const double tx = last.x.dot(ax), ty = -last.x.dot(ay);  // screen direction
    const double tn = std::hypot(tx, ty);
    const double hx = sx(last.r.dot(ax)), hy = sy(last.r.dot(ay));
    if (tn < 1e-6) {
      // Tangent along the view normal: mark the end point instead.
      os << "<circle cx=\"" << fmt_coord(hx) << "\" cy=\"" << fmt_coord(hy) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
      continue;
    }
    const double dx = tx / tn, dy = ty / tn;
    constexpr double kLen = 14.0, kHalf = 5.0;
    const double bx = hx - kLen * dx, by = hy - kLen * dy;
    os << "<polygon fill=\"" << color << "\" points=\"" << fmt_coord(hx) << ',' << fmt_coord(hy) << ' '
       << fmt_coord(bx - kHalf * dy) << ',' << fmt_coord(by + kHalf * dx) << ' ' << fmt_coord(bx + kHalf * dy) << ','
       << fmt_coord(by - kHalf * dx) << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void plot_svg(const Trajectory& traj, const Projection& plane, const std::string& path) {
  write_text_file(path, render_svg(traj, plane));
}

}  // namespace gyroform
