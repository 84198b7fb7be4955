#include "vdi/kinematics.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vdi/error.hpp"

namespace vdi {

LinkPoses::LinkPoses(const RobotModel& model, std::vector<RigidTransform> poses) : poses_(std::move(poses)) {
  names_.reserve(model.links().size());
  for (const auto& l : model.links()) names_.push_back(l.name);
}

const RigidTransform& LinkPoses::at(std::string_view link) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == link) return poses_[i];
  }
  throw Error(ErrorCode::kMissingPose, "no pose for link '" + std::string(link) + "'");
}

RigidTransform joint_motion(const Joint& joint, double value) {
  switch (joint.kind) {
    case JointKind::kRevolute:
    case JointKind::kContinuous:
      return RigidTransform::from_rotation(Eigen::Quaterniond(Eigen::AngleAxisd(value, joint.axis)));
    case JointKind::kPrismatic:
      return RigidTransform::from_translation(joint.axis * value);
    case JointKind::kFixed:
      break;
  }
  return {};
}

FkResult forward_kinematics(const RobotModel& model, const JointState& q) {
  std::vector<RigidTransform> poses(model.links().size());
  FkResult result;
  for (std::size_t j : model.joint_order()) {
    const Joint& joint = model.joints()[j];
    double value = 0.0;
    if (joint.is_movable()) {
      auto it = q.positions.find(joint.name);
      if (it == q.positions.end()) {
        throw Error(ErrorCode::kMissingJoint, "joint state has no value for joint '" + joint.name + "'");
      }
      value = it->second;
      if (!std::isfinite(value)) {
        throw Error(ErrorCode::kInvalidArgument, "joint '" + joint.name + "' position is not finite");
      }
      if (joint.limits && (value < joint.limits->lower || value > joint.limits->upper)) {
        result.limit_violations.push_back({joint.name, value, *joint.limits});
      }
    }
    poses[model.child_of(j)] = poses[model.parent_of(j)] * joint.origin * joint_motion(joint, value);
  }
  result.poses = LinkPoses(model, std::move(poses));
  return result;
}

std::vector<PosedMesh> posed_meshes(const RobotModel& model, const LinkPoses& poses) {
  if (poses.size() != model.links().size()) {
    throw Error(ErrorCode::kMissingPose, "pose set does not cover the model's links");
  }
  std::vector<PosedMesh> out;
  for (std::size_t i = 0; i < model.links().size(); ++i) {
    const Link& link = model.links()[i];
    if (!link.collision) continue;
    out.push_back({&*link.collision, poses[i] * link.mesh_to_link});
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell, std::size_t line) {
  double v = 0.0;
  const char* b = cell.data();
  if (!cell.empty() && *b == '+') ++b;
  const auto [end, ec] = std::from_chars(b, cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || end != cell.data() + cell.size()) {
    throw Error(ErrorCode::kParse, "trajectory line " + std::to_string(line) + ": malformed number '" + cell + "'");
  }
  return v;
}

}  // namespace

std::vector<JointState> parse_trajectory_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty() || header.front() != "t") {
    throw Error(ErrorCode::kParse, "trajectory CSV header must start with 't'");
  }
  std::vector<JointState> frames;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kParse, "trajectory line " + std::to_string(line_no) + ": expected " +
                                         std::to_string(header.size()) + " columns, got " +
                                         std::to_string(cells.size()));
    }
    JointState s;
    s.timestamp = parse_cell(cells[0], line_no);
    for (std::size_t i = 1; i < cells.size(); ++i) s.positions[header[i]] = parse_cell(cells[i], line_no);
    if (!frames.empty() && s.timestamp < frames.back().timestamp) {
      throw Error(ErrorCode::kParse, "trajectory line " + std::to_string(line_no) + ": time goes backwards");
    }
    frames.push_back(std::move(s));
  }
  return frames;
}

std::vector<JointState> load_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open trajectory '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_trajectory_csv(buf.str());
}

std::string write_trajectory_csv(const std::vector<JointState>& frames) {
  std::ostringstream os;
  os.precision(17);
  os << "t";
  if (!frames.empty()) {
    for (const auto& [name, _] : frames.front().positions) os << "," << name;
  }
  os << "\n";
  for (const auto& f : frames) {
    os << f.timestamp;
    for (const auto& [name, _] : frames.front().positions) os << "," << f.positions.at(name);
    os << "\n";
  }
  return os.str();
}

}  // namespace vdi
