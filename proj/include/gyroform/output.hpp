#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "gyroform/lie_geom.hpp"
#include "gyroform/sim_harness.hpp"

namespace gyroform {

/// Formats with 17 significant digits ("%.17g").
std::string format_real(double v);

/// CSV with header t,id,rx,ry,rz,xx,xy,xz,yx,yy,yz,zx,zy,zz,u,v,w and one row
/// per particle per sample.
std::string trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

nlohmann::ordered_json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);
void write_report_json(const RunReport& report, const std::string& path);

/// Viewing direction for the orthographic plot.
struct Projection {
  enum class Kind { XY, XZ, YZ, Custom, Auto };
  Kind kind = Kind::XY;
  Vec3 normal = Vec3::UnitZ();  // used by Custom

  static Projection custom(const Vec3& normal) { return {Kind::Custom, normal}; }
  /// "xy", "xz", "yz", "auto" or "nx,ny,nz".
  static Projection parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const Projection& o) const { return kind == o.kind && normal == o.normal; }
};

/// Normal of the plane best fitting the positions in the last `tail` samples
/// (smallest principal axis).
Vec3 formation_plane_normal(const Trajectory& traj, std::size_t tail = 200);

/// Two orthonormal in-plane axes (screen x, screen y) for a view normal.
std::pair<Vec3, Vec3> projection_axes(const Vec3& normal);

/// 800x800 SVG: one polyline per particle, arrowheads along the final
/// projected tangents, bounds padded by 5%. Throws ContractError when empty.
std::string render_svg(const Trajectory& traj, const Projection& plane);
void plot_svg(const Trajectory& traj, const Projection& plane, const std::string& path);

/// Writes `text` to `path`; Error mentioning the path on failure.
void write_text_file(const std::string& path, std::string_view text);

}  // namespace gyroform
