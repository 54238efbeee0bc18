#include "engage/sim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "engage/body/schegloff.hpp"

namespace engage::sim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap(double a) { return body::wrap_angle(a); }

// Smallest positive ray parameter of origin ray (cos a, sin a) against a wall.
double ray_segment(double ca, double sa, const WallSegment& w) {
  const double ex = w.b.x - w.a.x;
  const double ey = w.b.y - w.a.y;
  const double den = ca * ey - sa * ex;
  if (std::abs(den) < 1e-12) return kInf;
  const double s = (w.a.x * ey - w.a.y * ex) / den;
  if (s <= 0.0) return kInf;
  double u;
  if (std::abs(ex) >= std::abs(ey)) {
    u = (s * ca - w.a.x) / ex;
  } else {
    u = (s * sa - w.a.y) / ey;
  }
  if (u < 0.0 || u > 1.0) return kInf;
  return s;
}

double ray_disc(double ca, double sa, const Point2& c, double radius) {
  const double along = ca * c.x + sa * c.y;
  if (along <= 0.0) return kInf;
  const double d2 = c.x * c.x + c.y * c.y - along * along;
  const double r2 = radius * radius;
  if (d2 > r2) return kInf;
  const double s = along - std::sqrt(r2 - d2);
  return s > 0.0 ? s : kInf;
}

struct Disc {
  Point2 center;
  std::size_t agent_index;
  bool left;
};

double body_yaw(const AgentScript& agent, Timestamp t, const GaitModel& gait) {
  const Point2 v = agent.velocity_at(t);
  const double speed = std::hypot(v.x, v.y);
  if (speed >= gait.walk_speed_min) return std::atan2(v.y, v.x);
  if (agent.intent_at(t) == Intent::Interact) {
    const Point2 p = agent.position_at(t);
    return std::atan2(-p.y, -p.x);  // face the tablet
  }
  // Standing elsewhere: keep the heading of the last moving segment.
  for (std::size_t i = agent.waypoints.size(); i-- > 1;) {
    if (agent.waypoints[i - 1].t <= t) {
      const Point2 d{agent.waypoints[i].p.x - agent.waypoints[i - 1].p.x,
                     agent.waypoints[i].p.y - agent.waypoints[i - 1].p.y};
      if (std::hypot(d.x, d.y) > 1e-6) return std::atan2(d.y, d.x);
    }
  }
  const Point2 p = agent.position_at(t);
  return std::atan2(-p.y, -p.x);
}

double shoulder_yaw(const AgentScript& agent, Timestamp t, double yaw,
                    const SensorConfig& config) {
  if (agent.intent_at(t) != Intent::Approach) return yaw;
  const Point2 p = agent.position_at(t);
  const double to_robot = std::atan2(-p.y, -p.x);
  const double delta = wrap(to_robot - yaw);
  const double limit = config.approach_shoulder_rotation;
  return wrap(yaw + std::clamp(delta, -limit, limit));
}

bool speaking_at(const AgentScript& agent, Timestamp t) {
  for (const TimeInterval& s : agent.speech) {
    if (t >= s.start && t < s.end) return true;
  }
  return false;
}

struct JointSpec {
  body::Joint joint;
  double lateral;  // along the subject's left axis
  double height;
  bool follows_shoulders;
};

const JointSpec kJointTemplate[] = {
    {body::Joint::Head, 0.0, 1.65, true},
    {body::Joint::Neck, 0.0, 1.45, true},
    {body::Joint::Torso, 0.0, 1.15, false},
    {body::Joint::LeftShoulder, 0.19, 1.40, true},
    {body::Joint::RightShoulder, -0.19, 1.40, true},
    {body::Joint::LeftElbow, 0.25, 1.10, true},
    {body::Joint::RightElbow, -0.25, 1.10, true},
    {body::Joint::LeftHand, 0.27, 0.85, true},
    {body::Joint::RightHand, -0.27, 0.85, true},
    {body::Joint::LeftHip, 0.11, 0.95, false},
    {body::Joint::RightHip, -0.11, 0.95, false},
    {body::Joint::LeftKnee, 0.13, 0.50, false},
    {body::Joint::RightKnee, -0.13, 0.50, false},
    {body::Joint::LeftAnkle, 0.15, 0.10, false},
    {body::Joint::RightAnkle, -0.15, 0.10, false},
};

}  // namespace

void feet_at(const AgentScript& agent, Timestamp t, const GaitModel& gait, Point2& left,
             Point2& right, bool& walking) {
  const Point2 p = agent.position_at(t);
  const Point2 v = agent.velocity_at(t);
  const double speed = std::hypot(v.x, v.y);
  walking = speed >= gait.walk_speed_min;
  const double yaw = body_yaw(agent, t, gait);
  const double fx = std::cos(yaw);
  const double fy = std::sin(yaw);
  const double lx = -fy;  // subject's left axis
  const double ly = fx;
  const double half = gait.leg_space * 0.5;
  double osc = 0.0;
  if (walking) {
    // The swing stays below the body advance so neither foot ever moves
    // backward in the world frame; foot direction vectors then agree with
    // the walking direction.
    const double amplitude = std::min(gait.step_amplitude, 0.12 * speed);
    const double phase = 2.0 * std::numbers::pi * gait.stride_frequency *
                         static_cast<double>(t - agent.enter_time()) / 1e6;
    osc = amplitude * std::sin(phase);
  }
  left = {p.x + half * lx + osc * fx, p.y + half * ly + osc * fy};
  right = {p.x - half * lx - osc * fx, p.y - half * ly - osc * fy};
}

SimulationResult simulate(const ScenarioScript& script, const SensorConfig& config) {
  script.validate();
  SimulationResult result;
  result.t0 = 0;
  result.t1 = (script.duration / kTickUs) * kTickUs;

  const std::vector<WallSegment> walls = script.room.walls();
  const laser::ScanGeometry& geom = config.lidar;

  // Wall ranges never change: cast them once.
  std::vector<double> wall_range(geom.beam_count, geom.max_range);
  std::vector<double> beam_cos(geom.beam_count);
  std::vector<double> beam_sin(geom.beam_count);
  for (std::size_t b = 0; b < geom.beam_count; ++b) {
    const double a = geom.bearing(b);
    beam_cos[b] = std::cos(a);
    beam_sin[b] = std::sin(a);
    double best = geom.max_range;
    for (const WallSegment& w : walls) {
      best = std::min(best, ray_segment(beam_cos[b], beam_sin[b], w));
    }
    wall_range[b] = best;
  }

  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> lidar_noise(0.0, config.lidar_noise);
  std::normal_distribution<double> joint_noise(0.0, config.joint_noise);
  std::normal_distribution<double> angle_noise(0.0, config.angle_noise);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::size_t n_ticks = static_cast<std::size_t>(result.t1 / kTickUs);

  // --- lidar stream + per-tick truth ---
  for (std::size_t tick = 1; tick <= n_ticks; ++tick) {
    const Timestamp t = static_cast<Timestamp>(tick) * kTickUs;

    std::vector<Disc> discs;
    TickTruth truth;
    truth.t = t;
    for (std::size_t ai = 0; ai < script.agents.size(); ++ai) {
      const AgentScript& agent = script.agents[ai];
      AgentTruth at;
      at.agent_id = agent.id;
      at.present = agent.present_at(t);
      if (at.present) {
        at.position = agent.position_at(t);
        feet_at(agent, t, config.gait, at.left_foot, at.right_foot, at.walking);
        const double dist = std::hypot(at.position.x, at.position.y);
        const double bearing = std::atan2(at.position.y, at.position.x);
        at.in_fov = std::abs(bearing) <= config.kinect_fov
* 0.5 &&
                    dist >= config.kinect_min_depth && dist <= config.kinect_max_depth;
        discs.push_back({at.left_foot, ai, true});
        discs.push_back({at.right_foot, ai, false});
      }
      truth.agents.push_back(at);
    }

    laser::LaserScan scan;
    scan.t = t;
    scan.ranges.resize(geom.beam_count);
    std::vector<int> winner(geom.beam_count, -1);
    for (std::size_t b = 0; b < geom.beam_count; ++b) {
      double best = wall_range[b];
      int who = -1;
      for (std::size_t d = 0; d < discs.size(); ++d) {
        const double s = ray_disc(beam_cos[b], beam_sin[b], discs[d].center,
                                  config.gait.foot_radius);
        if (s < best) {
          best = s;
          who = static_cast<int>(d);
        }
      }
      winner[b] = who;
      double r = best + lidar_noise(rng);
      if (r < 0.0) r = 0.0;
      scan.ranges[b] = r;
    }
    result.laser.push_back(std::move(scan));

    // Exact visibility: hit in the full cast vs. hit with no other discs.
    std::vector<bool> hit_full(discs.size(), false);
    for (std::size_t b = 0; b < geom.beam_count; ++b) {
      if (winner[b] >= 0) hit_full[static_cast<std::size_t>(winner[b])] = true;
    }
    for (std::size_t d = 0; d < discs.size(); ++d) {
      bool solo = false;
      for (std::size_t b = 0; b < geom.beam_count && !solo; ++b) {
        const double s =
            ray_disc(beam_cos[b], beam_sin[b], discs[d].center, config.gait.foot_radius);
        if (s < wall_range[b]) solo = true;
      }
      AgentTruth& at = truth.agents[discs[d].agent_index];
      const bool visible = hit_full[d];
      const bool occluded = solo && !hit_full[d];
      if (discs[d].left) {
        at.left_visible = visible;
        at.left_occluded = occluded;
      } else {
        at.right_visible = visible;
        at.right_occluded = occluded;
      }
    }
    result.truth.push_back(std::move(truth));
  }

  // --- skeleton stream at 30 Hz ---
  const Timestamp depth_period_num = 1'000'000;
  for (std::size_t j = 1;; ++j) {
    const Timestamp t = static_cast<Timestamp>(j) * depth_period_num / 30;
    if (t > result.t1) break;
    for (const AgentScript& agent : script.agents) {
      if (!agent.present_at(t)) continue;
      const Point2 p = agent.position_at(t);
      const double dist = std::hypot(p.x, p.y);
      const double bearing = std::atan2(p.y, p.x);
      if (std::abs(bearing) > config.kinect_fov * 0.5 || dist < config.kinect_min_depth ||
          dist > config.kinect_max_depth) {
        continue;
      }
      const double yaw = body_yaw(agent, t, config.gait);
      const double syaw = shoulder_yaw(agent, t, yaw, config);
      body::SkeletonFrame frame;
      frame.t = t;
      frame.skeleton_id = agent.id;
      for (const JointSpec& spec : kJointTemplate) {
        const double seg_yaw = spec.follows_shoulders ? syaw : yaw;
        const double lx = -std::sin(seg_yaw);
        const double ly = std::cos(seg_yaw);
        const double wx = p.x + spec.lateral * lx;
        const double wy = p.y + spec.lateral * ly;
        body::JointSample& js = frame.joint(spec.joint);
        // Mirrored sensor frame: x lateral (= world y), y up, z depth (= world x).
        js.x = wy + joint_noise(rng);
        js.y = spec.height - config.kinect_height + joint_noise(rng);
        js.z = wx + joint_noise(rng);
        js.confidence = std::clamp(0.9 + 0.1 * unit(rng), 0.0, 1.0);
      }
      result.skeletons.push_back(std::move(frame));
    }
  }

  // --- face stream at 30 Hz ---
  for (std::size_t j = 1;; ++j) {
    const Timestamp t = static_cast<Timestamp>(j) * depth_period_num / 30;
    if (t > result.t1) break;
    for (const AgentScript& agent : script.agents) {
      if (!agent.present_at(t)) continue;
      const Point2 p = agent.position_at(t);
      const double dist = std::hypot(p.x, p.y);
      const double bearing = std::atan2(p.y, p.x);
      if (std::abs(bearing) > config.kinect_fov * 0.5 || dist < config.kinect_min_depth ||
          dist > config.kinect_max_depth) {
        continue;
      }
      const double yaw = body_yaw(agent, t, config.gait);
      const double syaw = shoulder_yaw(agent, t, yaw, config);
      const double to_robot = std::atan2(-p.y, -p.x);
      if (std::abs(wrap(syaw - to_robot)) > config.face_cone) continue;
      if (unit(rng) < config.face_miss_rate) continue;

      const double depth = p.x;  // z in the sensor frame
      if (depth <= 0.1) continue;
      const double size = config.focal_px * config.head_size_m / depth;
      const double cx = config.image_width * 0.5 *
                        (1.0 + bearing / (config.kinect_fov * 0.5));
      const double cy = config.image_height * 0.5 -
                        config.focal_px * (config.head_height - 1.10) / depth;
      FaceDetection det;
      det.t = t;
      det.image_width = config.image_width;
      det.image_height = config.image_height;
      det.box = {cx - size * 0.5, cy - size * 0.5, size};
      if (det.box.px < 0 || det.box.py < 0 ||
          det.box.px + size > config.image_width ||
          det.box.py + size > config.image_height) {
        continue;  // partially out of frame, the detector loses it
      }
      result.faces.push_back(det);
    }
  }

  // --- SAD stream at 100 Hz ---
  for (Timestamp t = 0; t <= result.t1; t += 10'000) {
    bool speech = false;
    for (const AgentScript& agent : script.agents) {
      if (agent.present_at(t) && speaking_at(agent, t)) {
        speech = true;
        break;
      }
    }
    result.sad.push_back(
        {t, speech ? acoustic::SadValue::Speech : acoustic::SadValue::NotSpeech});
  }

  // --- source localization at 8 Hz, only while someone speaks ---
  for (Timestamp t = 0; t <= result.t1; t += 125'000) {
    const AgentScript* speaker = nullptr;
    double best_dist = kInf;
    for (const AgentScript& agent : script.agents) {
      if (!agent.present_at(t) || !speaking_at(agent, t)) continue;
      const Point2 p = agent.position_at(t);
      const double d = std::hypot(p.x, p.y);
      if (d < best_dist) {
        best_dist = d;
        speaker = &agent;
      }
    }
    if (speaker == nullptr) continue;
    const Point2 p = speaker->position_at(t);
    const double bearing = std::atan2(p.y, p.x);
    acoustic::SourceLocalization ev;
    ev.t = t;
    ev.angle = wrap(bearing + angle_noise(rng));
    ev.beam = acoustic::quantize_beam(ev.angle, config.audio);
    ev.confidence = 0.5 + 0.5 * unit(rng);
    result.localization.push_back(ev);
  }

  // --- annotation timeline ---
  for (const AgentScript& agent : script.agents) {
    result.timeline.push_back({agent.enter_time(), fusion::EventKind::Enter, agent.id});
    result.timeline.push_back({agent.exit_time(), fusion::EventKind::Exit, agent.id});
    for (const IntentSegment& seg : agent.intents) {
      if (seg.intent == Intent::Approach) {
        result.timeline.push_back({seg.start, fusion::EventKind::ApproachStart, agent.id});
        result.timeline.push_back({seg.end, fusion::EventKind::ApproachEnd, agent.id});
      } else if (seg.intent == Intent::Depart) {
        result.timeline.push_back({seg.start, fusion::EventKind::DepartStart, agent.id});
        result.timeline.push_back({seg.end, fusion::EventKind::DepartEnd, agent.id});
      }
    }
    for (const TimeInterval& touch : agent.touches) {
      result.timeline.push_back({touch.start, fusion::EventKind::TouchFirst, agent.id});
      result.timeline.push_back({touch.end, fusion::EventKind::TouchLast, agent.id});
    }
  }
  std::stable_sort(result.timeline.begin(), result.timeline.end(),
                   [](const fusion::TimelineEvent& a, const fusion::TimelineEvent& b) {
                     return a.t < b.t;
                   });
  return result;
}

}  // namespace engage::sim
