#pragma once

#include <cmath>

#include "json.hpp"
#include "udgo/channel.hpp"
#include "udgo/oracle.hpp"
#include "udgo/schedule.hpp"

namespace udgo {

// +infinity has no JSON literal; unreachable distances are written as null.
inline nlohmann::json distance_json(double x) {
  if (std::isinf(x)) return nullptr;
  return x;
}

inline nlohmann::json to_json(const StageRecord& s) {
  return {{"i", s.i}, {"nv", s.nv}, {"ne", s.ne}, {"settled", s.settled}, {"micros", s.micros}};
}

inline nlohmann::json to_json(const QueryResult& res) {
  nlohmann::json stages = nlohmann::json::array();
  for (const StageRecord& s : res.stats.stages) stages.push_back(to_json(s));
  return {{"distance", distance_json(res.distance)},
          {"path", res.path},
          {"stages", std::move(stages)},
          {"fallback", res.stats.fallback_used}};
}

inline nlohmann::json to_json(const QuerySchedule& s) {
  return {{"n", s.n},     {"d", s.d},           {"r", s.r},   {"w", s.w},        {"K", s.K},
          {"l", s.l},     {"c_prime", s.c_prime}, {"h0", s.h0}, {"i_max", s.i_max}};
}

inline QuerySchedule schedule_from_json(const nlohmann::json& j) {
  QuerySchedule s;
  j.at("n").get_to(s.n);
  j.at("d").get_to(s.d);
  j.at("r").get_to(s.r);
  j.at("w").get_to(s.w);
  j.at("K").get_to(s.K);
  j.at("l").get_to(s.l);
  j.at("c_prime").get_to(s.c_prime);
  j.at("h0").get_to(s.h0);
  j.at("i_max").get_to(s.i_max);
  return s;
}

// Occupied boxes as a sorted list of z-tuples.
inline nlohmann::json to_json(const ChannelOccupancy& occ) {
  nlohmann::json out = nlohmann::json::array();
  for (const BoxId& b : occ.sorted()) out.push_back(b.z);
  return out;
}

inline ChannelOccupancy occupancy_from_json(const ChannelSpec& spec, const nlohmann::json& j) {
  std::vector<BoxId> boxes;
  for (const auto& z : j) boxes.push_back({z.get<std::vector<int>>()});
  return ChannelOccupancy::from_boxes(spec, boxes);
}

}  // namespace udgo
