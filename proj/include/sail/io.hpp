#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sail/analysis.hpp"
#include "sail/engine.hpp"

namespace sail {

// Trajectory CSV: t,r,theta,x,y,tack,wind_angle,event with x,y in the
// rotating frame; geographic adds xi1,xi2 via the frame map per record.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          bool geographic);
void write_trajectory_csv_file(const std::string& path, const Trajectory& traj,
                               bool geographic);

std::string event_name(Event ev);
Event event_from_name(const std::string& name);

struct ParsedRecord {
  double t, r, theta, x, y, wind_angle;
  int tack;
  Event event;
};

// Read formatting is parse-only; the plotter never rewrites the CSV.
std::vector<ParsedRecord> read_trajectory_csv(std::istream& is);
std::vector<ParsedRecord> read_trajectory_csv_file(const std::string& path);

enum class Frame { Rotating, Geographic };

// SVG 1.1: path polyline, target circle of radius eta, laylines, tack
// and wind-shift markers.
void write_trajectory_svg(std::ostream& os,
                          const std::vector<ParsedRecord>& records,
                          Frame frame, double eta);
void write_trajectory_svg_file(const std::string& path,
                               const std::vector<ParsedRecord>& records,
                               Frame frame, double eta);

nlohmann::json to_json(const McEstimate& e);
nlohmann::json to_json(const BoundsReport& b);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

nlohmann::json to_json(const std::vector<CheckResult>& checks);

}  // namespace sail
