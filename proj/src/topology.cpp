#include "macari/topology.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "macari/errors.hpp"
#include "macari/rng.hpp"

namespace macari {

const char* role_name(Role r) {
  switch (r) {
    case Role::pan_coordinator: return "pan";
    case Role::coordinator: return "coordinator";
    case Role::end_device: return "end_device";
  }
  return "?";
}

Role role_from_name(const std::string& s) {
  if (s == "pan" || s == "pan_coordinator") return Role::pan_coordinator;
  if (s == "coordinator" || s == "coord") return Role::coordinator;
  if (s == "end_device" || s == "ed") return Role::end_device;
  throw ConfigError("unknown role: " + s);
}

void TopologyParams::validate() const {
  if (rm < 1) throw ConfigError("rm must be >= 1");
  if (cm < rm) throw ConfigError("cm must be >= rm");
  if (lm < 1) throw ConfigError("lm must be >= 1");
}

const std::vector<NodeId>& Tree::children_of(NodeId id) const {
  return children_.at(static_cast<size_t>(id));
}

std::vector<NodeId> Tree::coordinator_children(NodeId id) const {
  std::vector<NodeId> out;
  for (NodeId c : children_of(id))
    if (node(c).is_coordinator()) out.push_back(c);
  return out;
}

std::vector<NodeId> Tree::end_device_children(NodeId id) const {
  std::vector<NodeId> out;
  for (NodeId c : children_of(id))
    if (!node(c).is_coordinator()) out.push_back(c);
  return out;
}

std::vector<Star> Tree::stars() const {
  std::vector<Star> out;
  for (const Node& n : nodes) {
    if (!n.is_coordinator()) continue;
    Star s;
    s.coordinator = n.id;
    s.end_devices = end_device_children(n.id);
    std::sort(s.end_devices.begin(), s.end_devices.end());
    out.push_back(std::move(s));
  }
  return out;
}

int Tree::coordinator_count() const {
  int n = 0;
  for (const Node& x : nodes) n += x.is_coordinator() ? 1 : 0;
  return n;
}

int Tree::end_device_count() const {
  return static_cast<int>(nodes.size()) - coordinator_count();
}

std::optional<NodeId> Tree::node_by_address(Address a) const {
  auto it = by_address_.find(a);
  if (it == by_address_.end()) return std::nullopt;
  return it->second;
}

void Tree::rebuild_index() {
  children_.assign(nodes.size(), {});
  by_address_.clear();
  for (const Node& n : nodes) {
    if (n.parent) children_.at(static_cast<size_t>(*n.parent)).push_back(n.id);
    by_address_[n.address] = n.id;
  }
  for (auto& c : children_) std::sort(c.begin(), c.end());
  indexed_ = true;
}

void Tree::validate() const {
  params.validate();
  int pan_count = 0;
  for (const Node& n : nodes) {
    if (n.role == Role::pan_coordinator) {
      pan_count++;
      if (n.depth != 0 || n.parent)
        throw InfeasibleTopologyError("PAN coordinator must be the parentless depth-0 node");
    } else {
      if (!n.parent) throw InfeasibleTopologyError("non-root node without parent");
      const Node& p = node(*n.parent);
      if (!p.is_coordinator())
        throw InfeasibleTopologyError("parent of node " + std::to_string(n.id) + " is an end-device");
      if (n.depth != p.depth + 1) throw InfeasibleTopologyError("depth mismatch");
    }
    if (n.depth > params.lm) throw InfeasibleTopologyError("node deeper than lm");
    if (!n.is_coordinator() && !children_of(n.id).empty())
      throw InfeasibleTopologyError("end-device with children");
  }
  if (pan_count != 1) throw InfeasibleTopologyError("exactly one PAN coordinator required");
  std::set<Address> seen;
  for (const Node& n : nodes) {
    if (!seen.insert(n.address).second)
      throw InfeasibleTopologyError("duplicate address " + std::to_string(n.address));
    if (n.is_coordinator()) {
      int cc = static_cast<int>(coordinator_children(n.id).size());
      int total = static_cast<int>(children_of(n.id).size());
      if (cc > params.rm) throw CapacityError("coordinator children exceed rm");
      if (total > params.cm) throw CapacityError("children exceed cm");
    }
  }
  // every descendant lies inside its ancestor's block
  for (const Node& n : nodes) {
    if (!n.is_coordinator()) continue;
    AddressRange r = descendant_range(n, params);
    std::vector<NodeId> stack{n.id};
    while (!stack.empty()) {
      NodeId cur = stack.back();
      stack.pop_back();
      for (NodeId c : children_of(cur)) {
        if (!r.contains(node(c).address))
          throw InfeasibleTopologyError("descendant outside address block");
        stack.push_back(c);
      }
    }
  }
}

int cskip(const TopologyParams& params, int depth) {
  params.validate();
  if (depth < 0 || depth > params.lm - 2)
    throw std::domain_error("cskip depth out of range [0, lm-2]");
  long long v;
  if (params.rm == 1) {
    v = 1 + static_cast<long long>(params.cm) * (params.lm - depth - 1);
  } else {
    long long pw = 1;
    for (int i = 0; i < params.lm - depth - 1; ++i) pw *= params.rm;
    v = (1 + params.cm - params.rm - static_cast<long long>(params.cm) * pw) /
        (1 - params.rm);
  }
  if (v <= 0 || v >= (1LL << 16)) throw CapacityError("cskip outside 16-bit address space");
  return static_cast<int>(v);
}

int child_block_size(const TopologyParams& params, int depth) {
  if (depth == params.lm - 1) return 1;
  return cskip(params, depth);
}

namespace {

Address checked_address(long long a) {
  if (a < 0 || a >= (1LL << 16)) throw CapacityError("address outside 16-bit space");
  return static_cast<Address>(a);
}

void assign_subtree(Tree& tree, NodeId id) {
  Node& n = tree.node(id);
  if (!n.is_coordinator()) return;
  const int d = n.depth;
  if (d > tree.params.lm - 1) {
    if (!tree.children_of(id).empty())
      throw CapacityError("coordinator at depth lm cannot have children");
    return;
  }
  const long long block = child_block_size(tree.params, d);
  auto coords = tree.coordinator_children(id);
  auto eds = tree.end_device_children(id);
  std::sort(coords.begin(), coords.end());
  std::sort(eds.begin(), eds.end());
  if (static_cast<int>(coords.size()) > tree.params.rm)
    throw CapacityError("more coordinator children than rm");
  if (static_cast<int>(coords.size() + eds.size()) > tree.params.cm)
    throw CapacityError("more children than cm");

  const long long base = n.address;
  for (size_t k = 0; k < coords.size(); ++k)
    tree.node(coords[k]).address = checked_address(base + 1 + static_cast<long long>(k) * block);

  const int ed_slots = tree.params.cm - tree.params.rm;
  // slot addresses above the coordinator blocks; overflow borrows the tail of
  // the unused coordinator blocks (needed when cm-rm slots run out but spare
  // coordinator capacity exists)
  long long borrow_next = base + static_cast<long long>(tree.params.rm) * block;
  const long long borrow_floor = base + 1 + static_cast<long long>(coords.size()) * block;
  for (size_t j = 0; j < eds.size(); ++j) {
    long long a;
    if (static_cast<int>(j) < ed_slots) {
      a = base + static_cast<long long>(tree.params.rm) * block + static_cast<long long>(j) + 1;
    } else {
      if (borrow_next < borrow_floor)
        throw CapacityError("no spare address block to borrow for end-device");
      a = borrow_next--;
    }
    tree.node(eds[j]).address = checked_address(a);
  }
  for (NodeId c : coords) assign_subtree(tree, c);
}

}  // namespace

void assign_addresses(Tree& tree) {
  tree.rebuild_index();
  tree.node(tree.root).address = 0;
  assign_subtree(tree, tree.root);
  tree.rebuild_index();
}

AddressRange descendant_range(const Node& node, const TopologyParams& params) {
  if (!node.is_coordinator())
    throw NotACoordinatorError("descendant_range on an end-device");
  if (node.role == Role::pan_coordinator) return {0, 0xffff};
  const long long block = child_block_size(params, node.depth - 1);
  return {node.address, checked_address(node.address + block - 1)};
}

long long coordinator_capacity(const TopologyParams& params) {
  long long total = 0, level = 1;
  for (int d = 0; d <= params.lm; ++d) {
    total += level;
    if (total > (1 << 20)) return total;  // plenty; avoid overflow
    level *= params.rm;
  }
  return total;
}

namespace {

Position place_near(Rng& rng, const Position& parent, double area_w, double area_h,
                    double max_dist) {
  const double lo = std::min(5.0, max_dist);
  for (int attempt = 0; attempt < 64; ++attempt) {
    double r = rng.uniform(lo, max_dist);
    double ang = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    Position p{parent.x + r * std::cos(ang), parent.y + r * std::sin(ang)};
    if (p.x >= 0 && p.x <= area_w && p.y >= 0 && p.y <= area_h) return p;
  }
  Position p{std::clamp(parent.x, 0.0, area_w), std::clamp(parent.y, 0.0, area_h)};
  return p;
}

}  // namespace

Tree generate_random_tree_total(const TopologyParams& params, int n_coordinators,
                                int ed_total, double area_w_m, double area_h_m,
                                std::uint64_t seed, double max_parent_distance_m,
                                bool balanced) {
  params.validate();
  if (n_coordinators < 1) throw ConfigError("need at least the PAN coordinator");
  if (ed_total < 0) throw ConfigError("negative end-device count");
  if (n_coordinators > coordinator_capacity(params))
    throw InfeasibleTopologyError("rm/lm cannot host " + std::to_string(n_coordinators) +
                                  " coordinators");

  Rng rng(seed);
  Tree tree;
  tree.params = params;
  tree.root = 0;
  tree.nodes.resize(static_cast<size_t>(n_coordinators));
  tree.nodes[0] = Node{0, Role::pan_coordinator, std::nullopt, 0, 0, {}};

  std::vector<int> coord_children(static_cast<size_t>(n_coordinators), 0);
  for (NodeId i = 1; i < n_coordinators; ++i) {
    std::vector<NodeId> eligible;
    for (NodeId p = 0; p < i; ++p)
      if (tree.nodes[static_cast<size_t>(p)].depth < params.lm &&
          coord_children[static_cast<size_t>(p)] < params.rm)
        eligible.push_back(p);
    if (eligible.empty()) throw InfeasibleTopologyError("no eligible parent while building tree");
    NodeId parent = balanced ? eligible.front()
                             : eligible[rng.below(eligible.size())];
    coord_children[static_cast<size_t>(parent)]++;
    Node n;
    n.id = i;
    n.role = Role::coordinator;
    n.parent = parent;
    n.depth = tree.nodes[static_cast<size_t>(parent)].depth + 1;
    tree.nodes[static_cast<size_t>(i)] = n;
  }

  // round-robin end-device distribution, strict slots first, borrowing after
  const int ed_slots = params.cm - params.rm;
  std::vector<int> eds_per(static_cast<size_t>(n_coordinators), 0);
  int remaining = ed_total;
  bool progress = true;
  while (remaining > 0 && progress) {
    progress = false;
    for (NodeId c = 0; c < n_coordinators && remaining > 0; ++c) {
      const size_t ci = static_cast<size_t>(c);
      int cap = ed_slots + std::max(0, (tree.nodes[ci].depth < params.lm ? params.rm : 0) -
                                           coord_children[ci]);
      cap = std::min(cap, params.cm - coord_children[ci]);
      if (tree.nodes[ci].depth >= params.lm) cap = 0;  // children would exceed lm
      if (eds_per[ci] < cap) {
        eds_per[ci]++;
        remaining--;
        progress = true;
      }
    }
  }
  if (remaining > 0)
    throw InfeasibleTopologyError("end-devices exceed tree capacity under cm/rm");

  NodeId next_id = n_coordinators;
  for (NodeId c = 0; c < n_coordinators; ++c)
    for (int j = 0; j < eds_per[static_cast<size_t>(c)]; ++j) {
      Node n;
      n.id = next_id++;
      n.role = Role::end_device;
      n.parent = c;
      n.depth = tree.nodes[static_cast<size_t>(c)].depth + 1;
      tree.nodes.push_back(n);
    }

  // positions: PAN anywhere, children near their parent
  tree.nodes[0].position = {rng.uniform(0.0, area_w_m), rng.uniform(0.0, area_h_m)};
  for (size_t i = 1; i < tree.nodes.size(); ++i) {
    const Position& pp = tree.nodes[static_cast<size_t>(*tree.nodes[i].parent)].position;
    tree.nodes[i].position = place_near(rng, pp, area_w_m, area_h_m, max_parent_distance_m);
  }

  assign_addresses(tree);
  tree.validate();
  return tree;
}

Tree generate_random_tree(const TopologyParams& params, int n_coordinators,
                          int ed_per_star, double area_w_m, double area_h_m,
                          std::uint64_t seed, double max_parent_distance_m,
                          bool balanced) {
  if (ed_per_star < 0) throw ConfigError("negative ed_per_star");
  Tree t = generate_random_tree_total(params, n_coordinators,
                                      n_coordinators * ed_per_star, area_w_m,
                                      area_h_m, seed, max_parent_distance_m, balanced);
  for (const Star& s : t.stars())
    if (static_cast<int>(s.end_devices.size()) != ed_per_star)
      throw InfeasibleTopologyError("cannot give every star " + std::to_string(ed_per_star) +
                                    " end-devices under cm/rm");
  return t;
}

Tree load_topology_file(const std::string& path, const TopologyParams& params) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open topology file: " + path);
  Tree tree;
  tree.params = params;
  std::string line;
  struct Row {
    NodeId id;
    Role role;
    std::optional<NodeId> parent;
    Position pos;
  };
  std::vector<Row> rows;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    NodeId id;
    std::string role_s, parent_s;
    double x, y;
    if (!(ss >> id >> role_s >> parent_s >> x >> y)) {
      if (ss.eof() && line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed node line");
    }
    Row r;
    r.id = id;
    r.role = role_from_name(role_s);
    if (parent_s != "-") r.parent = std::stoi(parent_s);
    r.pos = {x, y};
    rows.push_back(r);
  }
  if (rows.empty()) throw ConfigError("topology file has no nodes: " + path);
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.id < b.id; });
  tree.nodes.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].id != static_cast<NodeId>(i))
      throw ConfigError("topology file node ids must be 0..n-1 without gaps");
    Node n;
    n.id = rows[i].id;
    n.role = rows[i].role;
    n.parent = rows[i].parent;
    n.position = rows[i].pos;
    tree.nodes[i] = n;
    if (n.role == Role::pan_coordinator) tree.root = n.id;
  }
  // depths from parent chain
  for (Node& n : tree.nodes) {
    int d = 0;
    NodeId cur = n.id;
    while (tree.node(cur).parent) {
      cur = *tree.node(cur).parent;
      if (++d > static_cast<int>(tree.nodes.size()))
        throw ConfigError("parent cycle in topology file");
    }
    n.depth = d;
  }
  assign_addresses(tree);
  tree.validate();
  return tree;
}

void save_topology_file(const Tree& tree, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write topology file: " + path);
  out << "# id role parent x y\n";
  for (const Node& n : tree.nodes) {
    out << n.id << ' ' << role_name(n.role) << ' ';
    if (n.parent)
      out << *n.parent;
    else
      out << '-';
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.3f %.3f\n", n.position.x, n.position.y);
    out << buf;
  }
}

}  // namespace macari
