#include "vdi/robot_model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "vdi/error.hpp"
#include "vdi/stl.hpp"

namespace vdi {

namespace pt = boost::property_tree;

const char* to_string(JointKind kind) {
  switch (kind) {
    case JointKind::kRevolute: return "revolute";
    case JointKind::kContinuous: return "continuous";
    case JointKind::kPrismatic: return "prismatic";
    case JointKind::kFixed: return "fixed";
  }
  return "unknown";
}

RobotModel RobotModel::build(std::string name, std::vector<Link> links, std::vector<Joint> joints) {
  RobotModel m;
  m.name_ = std::move(name);
  m.links_ = std::move(links);
  m.joints_ = std::move(joints);

  if (m.links_.empty()) throw Error(ErrorCode::kInvalidArgument, "robot has no links");
  for (std::size_t i = 0; i < m.links_.size(); ++i) {
    const Link& link = m.links_[i];
    if (!m.link_lookup_.emplace(link.name, i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate link '" + link.name + "'");
    }
    if (link.collision) {
      if (link.collision->empty()) {
        throw Error(ErrorCode::kInvalidArgument, "link '" + link.name + "' has an empty collision mesh");
      }
      link.collision->validate();
    }
  }

  std::vector<std::optional<std::size_t>> parent_joint(m.links_.size());
  std::vector<std::vector<std::size_t>> child_joints(m.links_.size());
  for (std::size_t j = 0; j < m.joints_.size(); ++j) {
    Joint& joint = m.joints_[j];
    if (!m.joint_lookup_.emplace(joint.name, j).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate joint '" + joint.name + "'");
    }
    const auto parent = m.link_index(joint.parent_link);
    const auto child = m.link_index(joint.child_link);
    if (!parent) {
      throw Error(ErrorCode::kUnknownLink,
                  "joint '" + joint.name + "' references undeclared parent link '" + joint.parent_link + "'");
    }
    if (!child) {
      throw Error(ErrorCode::kUnknownLink,
                  "joint '" + joint.name + "' references undeclared child link '" + joint.child_link + "'");
    }
    if (*parent == *child) {
      throw Error(ErrorCode::kCycle, "joint '" + joint.name + "' connects link '" + joint.parent_link + "' to itself");
    }
    if (parent_joint[*child]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "link '" + joint.child_link + "' has more than one parent joint");
    }
    if (joint.is_movable()) {
      const double n = joint.axis.norm();
      if (!(n > 0.0) || !joint.axis.allFinite()) {
        throw Error(ErrorCode::kInvalidArgument, "joint '" + joint.name + "' has a zero axis");
      }
      joint.axis /= n;
    }
    parent_joint[*child] = j;
    child_joints[*parent].push_back(j);
    m.joint_parent_.push_back(*parent);
    m.joint_child_.push_back(*child);
  }

  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < m.links_.size(); ++i) {
    if (!parent_joint[i]) roots.push_back(i);
  }
  if (roots.empty()) throw Error(ErrorCode::kCycle, "joint graph has no root link (cycle)");
  if (roots.size() > 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "joint graph is disconnected: links '" + m.links_[roots[0]].name + "' and '" +
                    m.links_[roots[1]].name + "' both lack a parent joint");
  }
  m.root_ = roots.front();

  // Pre-order DFS from the root; anything unreached sits on a cycle.
  std::vector<bool> seen(m.links_.size(), false);
  std::vector<std::size_t> walk{m.root_};
  while (!walk.empty()) {
    const std::size_t link = walk.back();
    walk.pop_back();
    seen[link] = true;
    if (link != m.root_) m.joint_order_.push_back(*parent_joint[link]);
    const auto& kids = child_joints[link];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) walk.push_back(m.joint_child_[*it]);
  }
  for (std::size_t i = 0; i < m.links_.size(); ++i) {
    if (!seen[i]) throw Error(ErrorCode::kCycle, "link '" + m.links_[i].name + "' is part of a joint cycle");
  }
  return m;
}

std::optional<std::size_t> RobotModel::link_index(std::string_view name) const {
  auto it = link_lookup_.find(std::string(name));
  if (it == link_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> RobotModel::joint_index(std::string_view name) const {
  auto it = joint_lookup_.find(std::string(name));
  if (it == joint_lookup_.end()) return std::nullopt;
  return it->second;
}

const Link& RobotModel::link(std::string_view name) const {
  auto i = link_index(name);
  if (!i) throw Error(ErrorCode::kUnknownLink, "no link named '" + std::string(name) + "'");
  return links_[*i];
}

const Joint& RobotModel::joint(std::string_view name) const {
  auto i = joint_index(name);
  if (!i) throw Error(ErrorCode::kMissingJoint, "no joint named '" + std::string(name) + "'");
  return joints_[*i];
}

std::vector<std::string> RobotModel::depth_first_links() const {
  std::vector<std::string> out{links_[root_].name};
  for (std::size_t j : joint_order_) out.push_back(links_[joint_child_[j]].name);
  return out;
}

std::vector<std::string> RobotModel::movable_joint_names() const {
  std::vector<std::string> out;
  for (std::size_t j : joint_order_) {
    if (joints_[j].is_movable()) out.push_back(joints_[j].name);
  }
  return out;
}

std::size_t RobotModel::triangle_count() const {
  std::size_t n = 0;
  for (const auto& l : links_) {
    if (l.collision) n += l.collision->triangle_count();
  }
  return n;
}

// ---------------------------------------------------------------------------
// URDF reader

namespace {

bool is_meta(const std::string& key) { return key == "<xmlattr>" || key == "<xmlcomment>"; }

std::optional<std::string> attr(const pt::ptree& node, const char* name) {
  if (auto v = node.get_optional<std::string>(std::string("<xmlattr>.") + name)) return *v;
  return std::nullopt;
}

std::string required_attr(const pt::ptree& node, const char* name, const std::string& where) {
  auto v = attr(node, name);
  if (!v) throw Error(ErrorCode::kParse, where + " is missing attribute '" + name + "'");
  return *v;
}

std::vector<double> parse_numbers(const std::string& text, const std::string& where) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    double v = 0.0;
    const char* b = tok.data();
    if (*b == '+') ++b;
    const auto [end, ec] = std::from_chars(b, tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size()) {
      throw Error(ErrorCode::kParse, where + ": malformed number '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

Vec3 parse_vec3(const std::string& text, const std::string& where) {
  const auto v = parse_numbers(text, where);
  if (v.size() != 3) throw Error(ErrorCode::kParse, where + ": expected 3 numbers, got '" + text + "'");
  return {v[0], v[1], v[2]};
}

double parse_scalar(const std::string& text, const std::string& where) {
  const auto v = parse_numbers(text, where);
  if (v.size() != 1) throw Error(ErrorCode::kParse, where + ": expected a number, got '" + text + "'");
  return v[0];
}

RigidTransform parse_origin(const pt::ptree& parent, const std::string& where) {
  auto node = parent.get_child_optional("origin");
  if (!node) return {};
  const Vec3 xyz = attr(*node, "xyz") ? parse_vec3(*attr(*node, "xyz"), where + " origin xyz") : Vec3::Zero();
  const Vec3 rpy = attr(*node, "rpy") ? parse_vec3(*attr(*node, "rpy"), where + " origin rpy") : Vec3::Zero();
  return RigidTransform::from_xyz_rpy(xyz, rpy);
}

std::filesystem::path resolve_mesh_path(const std::string& filename, const std::filesystem::path& base) {
  constexpr std::string_view kPackage = "package://";
  constexpr std::string_view kFile = "file://";
  std::string_view f = filename;
  if (f.starts_with(kFile)) return std::filesystem::path(std::string(f.substr(kFile.size())));
  if (f.starts_with(kPackage)) {
    f.remove_prefix(kPackage.size());
    // package://<pkg>/<rest>: try <base>/<rest>, then <base>/<pkg>/<rest>.
    const auto slash = f.find('/');
    const std::string rest(slash == std::string_view::npos ? f : f.substr(slash + 1));
    const auto candidate = base / rest;
    if (std::filesystem::exists(candidate)) return candidate;
    return base / std::string(f);
  }
  std::filesystem::path p(filename);
  return p.is_absolute() ? p : base / p;
}

TriangleMesh parse_geometry(const pt::ptree& geometry, const UrdfOptions& opt, const std::string& where) {
  for (const auto& [tag, node] : geometry) {
    if (is_meta(tag)) continue;
    if (tag == "box") {
      return make_box(parse_vec3(required_attr(node, "size", where + " box"), where + " box size"));
    }
    if (tag == "cylinder") {
      const double r = parse_scalar(required_attr(node, "radius", where + " cylinder"), where);
      const double l = parse_scalar(required_attr(node, "length", where + " cylinder"), where);
      return make_cylinder(r, l, opt.primitive_segments);
    }
    if (tag == "sphere") {
      return make_sphere(parse_scalar(required_attr(node, "radius", where + " sphere"), where),
                         opt.primitive_segments);
    }
    if (tag == "mesh") {
      const std::string filename = required_attr(node, "filename", where + " mesh");
      const auto path = resolve_mesh_path(filename, opt.base_dir);
      std::string ext = path.extension().string();
      std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
      if (ext != ".stl") {
        throw Error(ErrorCode::kUnsupported, where + ": mesh format '" + ext + "' is not supported (STL only)");
      }
      TriangleMesh mesh = load_stl(path);
      if (auto s = attr(node, "scale")) mesh.scale(parse_vec3(*s, where + " mesh scale"));
      return mesh;
    }
    throw Error(ErrorCode::kUnsupported, where + ": geometry '" + tag + "' is not supported");
  }
  throw Error(ErrorCode::kParse, where + ": empty <geometry>");
}

Link parse_link(const pt::ptree& node, const UrdfOptions& opt) {
  Link link;
  link.name = required_attr(node, "name", "<link>");
  const std::string where = "link '" + link.name + "'";
  std::vector<std::pair<TriangleMesh, RigidTransform>> parts;
  for (const auto& [tag, child] : node) {
    if (tag != "collision") continue;
    auto geometry = child.get_child_optional("geometry");
    if (!geometry) throw Error(ErrorCode::kParse, where + ": <collision> without <geometry>");
    parts.emplace_back(parse_geometry(*geometry, opt, where), parse_origin(child, where + " collision"));
  }
  if (parts.size() == 1) {
    link.collision = std::move(parts.front().first);
    link.mesh_to_link = parts.front().second;
  } else if (parts.size() > 1) {
    // Several collision elements are baked into one mesh in the link frame.
    TriangleMesh merged;
    for (const auto& [mesh, xf] : parts) merged.append(mesh, xf);
    link.collision = std::move(merged);
  }
  return link;
}

Joint parse_joint(const pt::ptree& node) {
  Joint joint;
  joint.name = required_attr(node, "name", "<joint>");
  const std::string where = "joint '" + joint.name + "'";
  const std::string type = required_attr(node, "type", where);
  if (type == "revolute") {
    joint.kind = JointKind::kRevolute;
  } else if (type == "continuous") {
    joint.kind = JointKind::kContinuous;
  } else if (type == "prismatic") {
    joint.kind = JointKind::kPrismatic;
  } else if (type == "fixed") {
    joint.kind = JointKind::kFixed;
  } else if (type == "planar" || type == "floating") {
    throw Error(ErrorCode::kUnsupported, where + ": joint type '" + type + "' is not supported");
  } else {
    throw Error(ErrorCode::kParse, where + ": unknown joint type '" + type + "'");
  }
  auto parent = node.get_child_optional("parent");
  auto child = node.get_child_optional("child");
  if (!parent || !child) throw Error(ErrorCode::kParse, where + " needs <parent> and <child>");
  joint.parent_link = required_attr(*parent, "link", where + " <parent>");
  joint.child_link = required_attr(*child, "link", where + " <child>");
  joint.origin = parse_origin(node, where);
  if (auto axis = node.get_child_optional("axis")) {
    if (auto xyz = attr(*axis, "xyz")) joint.axis = parse_vec3(*xyz, where + " axis");
  }
  if (auto limit = node.get_child_optional("limit")) {
    if (joint.kind == JointKind::kRevolute || joint.kind == JointKind::kPrismatic) {
      JointLimits lim;
      if (auto lo = attr(*limit, "lower")) lim.lower = parse_scalar(*lo, where + " limit");
      if (auto hi = attr(*limit, "upper")) lim.upper = parse_scalar(*hi, where + " limit");
      if (lim.lower > lim.upper) throw Error(ErrorCode::kParse, where + ": limit lower > upper");
      joint.limits = lim;
    }
  }
  return joint;
}

}  // namespace

RobotModel parse_urdf(std::string_view xml_text, const UrdfOptions& options) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(xml_text)};
    pt::read_xml(in, doc, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed XML: ") + e.what());
  }

  const pt::ptree* robot = nullptr;
  for (const auto& [tag, node] : doc) {
    if (is_meta(tag)) continue;
    if (tag != "robot") throw Error(ErrorCode::kParse, "root element must be <robot>, got <" + tag + ">");
    if (robot) throw Error(ErrorCode::kParse, "more than one <robot> element");
    robot = &node;
  }
  if (!robot) throw Error(ErrorCode::kParse, "no <robot> element");

  std::vector<Link> links;
  std::vector<Joint> joints;
  for (const auto& [tag, node] : *robot) {
    if (tag == "link") {
      links.push_back(parse_link(node, options));
    } else if (tag == "joint") {
      joints.push_back(parse_joint(node));
    }
    // material, transmission, gazebo and friends are ignored.
  }
  return RobotModel::build(attr(*robot, "name").value_or(""), std::move(links), std::move(joints));
}

RobotModel load_urdf(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open URDF '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  UrdfOptions opt;
  opt.base_dir = path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path();
  return parse_urdf(buf.str(), opt);
}

}  // namespace vdi
