#include "sail/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sail {

namespace {

// Shortest round-trip representation keeps re-runs byte-identical.
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string event_name(Event ev) {
  switch (ev) {
    case Event::None: return "none";
    case Event::TackEvent: return "tack";
    case Event::Hit: return "hit";
    case Event::Timeout: return "timeout";
    case Event::WindShift: return "wind_shift";
  }
  return "none";
}

Event event_from_name(const std::string& name) {
  if (name == "tack") return Event::TackEvent;
  if (name == "hit") return Event::Hit;
  if (name == "timeout") return Event::Timeout;
  if (name == "wind_shift") return Event::WindShift;
  if (name == "none") return Event::None;
  throw std::invalid_argument("unknown trajectory event: " + name);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          bool geographic) {
  os << "t,r,theta,x,y,tack,wind_angle,event";
  if (geographic) os << ",xi1,xi2";
  os << "\n";
  for (const auto& rec : traj.records) {
    const CartesianState p = from_polar({rec.r, rec.theta});
    os << num(rec.t) << ',' << num(rec.r) << ',' << num(rec.theta) << ','
       << num(p.x) << ',' << num(p.y) << ',' << rec.tack << ','
       << num(rec.wind_angle) << ',' << event_name(rec.event);
    if (geographic) {
      const CartesianState g = to_geographic(p, rec.wind_angle);
      os << ',' << num(g.x) << ',' << num(g.y);
    }
    os << "\n";
  }
}

void write_trajectory_csv_file(const std::string& path, const Trajectory& traj,
                               bool geographic) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_trajectory_csv(os, traj, geographic);
}

std::vector<ParsedRecord> read_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("trajectory CSV: missing header");
  if (line.rfind("t,r,theta,x,y,tack,wind_angle,event", 0) != 0)
    throw std::runtime_error("trajectory CSV: unexpected header: " + line);
  std::vector<ParsedRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 8)
      throw std::runtime_error("trajectory CSV: malformed row: " + line);
    ParsedRecord rec;
    rec.t = std::stod(fields[0]);
    rec.r = std::stod(fields[1]);
    rec.theta = std::stod(fields[2]);
    rec.x = std::stod(fields[3]);
    rec.y = std::stod(fields[4]);
    rec.tack = std::stoi(fields[5]);
    rec.wind_angle = std::stod(fields[6]);
    rec.event = event_from_name(fields[7]);
    out.push_back(rec);
  }
  return out;
}

std::vector<ParsedRecord> read_trajectory_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open trajectory CSV: " + path);
  return read_trajectory_csv(is);
}

namespace {

struct Pt {
  double x, y;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void write_trajectory_svg(std::ostream& os,
                          const std::vector<ParsedRecord>& records,
                          Frame frame, double eta) {
  std::vector<Pt> pts;
  std::vector<std::size_t> tack_marks, shift_marks;
  pts.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    Pt p;
    if (frame == Frame::Rotating) {
      p = {r.x, r.y};
    } else {
      const CartesianState g = to_geographic({r.x, r.y}, r.wind_angle);
      p = {g.y, -g.x};  // draw (xi2 east, -xi1 north) as (right, up)
    }
    if (records[i].event == Event::TackEvent) tack_marks.push_back(pts.size());
    if (records[i].event == Event::WindShift) shift_marks.push_back(pts.size());
    pts.push_back(p);
  }

  double lo_x = -eta, hi_x = eta, lo_y = -eta, hi_y = eta;
  if (eta == 0.0) lo_x = lo_y = -1e-3, hi_x = hi_y = 1e-3;
  for (const auto& p : pts) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double margin = 0.08 * span + 1e-12;
  lo_x -= margin;
  hi_x += margin;
  lo_y -= margin;
  hi_y += margin;

  const double W = 640.0;
  const double scale = W / (hi_x - lo_x);
  const double H = (hi_y - lo_y) * scale;
  const auto X = [&](double x) { return (x - lo_x) * scale; };
  const auto Y = [&](double y) { return H - (y - lo_y) * scale; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << fmt(W) << "\" height=\"" << fmt(H) << "\" viewBox=\"0 0 " << fmt(W)
     << ' ' << fmt(H) << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Laylines through the target: the rotating frame's axes carry them;
  // geographically they are the +-45 degree diagonals xi2 = +-xi1.
  const double ext = 2.0 * span;
  const auto line = [&](double x1, double y1, double x2, double y2) {
    os << "<line x1=\"" << fmt(X(x1)) << "\" y1=\"" << fmt(Y(y1))
       << "\" x2=\"" << fmt(X(x2)) << "\" y2=\"" << fmt(Y(y2))
       << "\" stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
  };
  if (frame == Frame::Rotating) {
    line(-ext, 0, ext, 0);
    line(0, -ext, 0, ext);
  } else {
    line(-ext, -ext, ext, ext);
    line(-ext, ext, ext, -ext);
  }

  // Target disk (a dot when eta = 0).
  os << "<circle cx=\"" << fmt(X(0)) << "\" cy=\"" << fmt(Y(0)) << "\" r=\""
     << fmt(std::max(eta * scale, 2.0)) << "\" fill=\""
     << (eta > 0.0 ? "#dce9f7" : "#333333") << "\" stroke=\"#3366aa\"/>\n";

  if (!pts.empty()) {
    os << "<polyline fill=\"none\" stroke=\"#cc3333\" stroke-width=\"1.5\" "
          "points=\"";
    for (const auto& p : pts) os << fmt(X(p.x)) << ',' << fmt(Y(p.y)) << ' ';
    os << "\"/>\n";
    for (auto i : tack_marks)
      os << "<circle cx=\"" << fmt(X(pts[i].x)) << "\" cy=\""
         << fmt(Y(pts[i].y)) << "\" r=\"3\" fill=\"#2a7f2a\"/>\n";
    for (auto i : shift_marks)
      os << "<rect x=\"" << fmt(X(pts[i].x) - 3) << "\" y=\""
         << fmt(Y(pts[i].y) - 3)
         << "\" width=\"6\" height=\"6\" fill=\"#8844cc\"/>\n";
  }
  os << "</svg>\n";
}

void write_trajectory_svg_file(const std::string& path,
                               const std::vector<ParsedRecord>& records,
                               Frame frame, double eta) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  write_trajectory_svg(os, records, frame, eta);
}

nlohmann::json to_json(const McEstimate& e) {
  return {{"mean", e.mean},
          {"stderr", e.stderr_},
          {"ci95", {e.ci_lo, e.ci_hi}},
          {"n", e.n},
          {"timeouts", e.timeout_count}};
}

nlohmann::json to_json(const BoundsReport& b) {
  return {{"K", b.K},
          {"d1", b.d1},
          {"d2", b.d2},
          {"Gamma_r", b.Gamma_r},
          {"c1", b.c1},
          {"c2", b.c2},
          {"c1c2", b.c1c2},
          {"c1c2_squared", b.c1c2 * b.c1c2},
          {"p0", b.p0},
          {"E_M_bound", b.E_M_bound},
          {"E_tau_bound", b.E_tau_bound},
          {"V_c_eta_bound", b.V_c_eta_bound},
          {"astar_tau_bound", b.astar_tau_bound},
          {"c1c2_below_one", b.c1c2_below_one},
          {"c1c2_below_three_quarters", b.c1c2_below_three_quarters}};
}

nlohmann::json to_json(const std::vector<CheckResult>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return arr;
}

}  // namespace sail
