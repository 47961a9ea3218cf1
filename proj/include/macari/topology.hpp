#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace macari {

using NodeId = int;
using Address = std::uint16_t;

enum class Role { pan_coordinator, coordinator, end_device };

const char* role_name(Role r);
Role role_from_name(const std::string& s);

/// Cluster-tree shape parameters: Rm (max coordinator children), Cm (max
/// children of any kind), Lm (max tree depth).
struct TopologyParams {
  int rm{3};
  int cm{6};
  int lm{5};

  void validate() const;
};

struct Position {
  double x{0.0};
  double y{0.0};
};

inline double distance_m(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct Node {
  NodeId id{0};
  Role role{Role::end_device};
  std::optional<NodeId> parent;  // absent for the PAN coordinator
  int depth{0};
  Address address{0};
  Position position{};

  bool is_coordinator() const { return role != Role::end_device; }
};

/// One coordinator plus the end-devices attached to it.
struct Star {
  NodeId coordinator{0};
  std::vector<NodeId> end_devices;  // ascending id
};

class Tree {
 public:
  TopologyParams params;
  std::vector<Node> nodes;  // indexed by id, ids are 0..size-1
  NodeId root{0};

  const Node& node(NodeId id) const { return nodes.at(static_cast<size_t>(id)); }
  Node& node(NodeId id) { return nodes.at(static_cast<size_t>(id)); }

  const std::vector<NodeId>& children_of(NodeId id) const;
  std::vector<NodeId> coordinator_children(NodeId id) const;
  std::vector<NodeId> end_device_children(NodeId id) const;

  /// Stars in ascending coordinator id. Every coordinator owns a star, possibly empty.
  std::vector<Star> stars() const;

  int coordinator_count() const;
  int end_device_count() const;

  std::optional<NodeId> node_by_address(Address a) const;

  /// Recompute children lists and the address index. Call after mutating nodes.
  void rebuild_index();

  /// Check all structural invariants; throws on violation.
  void validate() const;

 private:
  std::vector<std::vector<NodeId>> children_;
  std::unordered_map<Address, NodeId> by_address_;
  bool indexed_{false};
};

/// ZigBee distributed address-block size for children of a coordinator at
/// `depth`. Valid for depth in [0, lm-2]; throws std::domain_error outside.
int cskip(const TopologyParams& params, int depth);

/// Block size used by the address layout at any parent depth in [0, lm-1].
/// Same as cskip except that depth lm-1 yields 1 (leaf children occupy a
/// single address each).
int child_block_size(const TopologyParams& params, int depth);

/// Assign hierarchical addresses to the whole tree. PAN coordinator gets 0,
/// the k-th coordinator child of (A, d) gets A + 1 + (k-1)*cskip(d), the j-th
/// end-device child gets A + rm*cskip(d) + j. Throws CapacityError when a
/// coordinator exceeds its children budget.
void assign_addresses(Tree& tree);

struct AddressRange {
  Address lo{0};
  Address hi{0};
  bool contains(Address a) const { return lo <= a && a <= hi; }
};

/// Address block owned by a coordinator (the PAN coordinator owns the full
/// space). Throws NotACoordinatorError for end-devices.
AddressRange descendant_range(const Node& node, const TopologyParams& params);

/// Number of coordinators a (rm, lm) tree can hold at most.
long long coordinator_capacity(const TopologyParams& params);

/// Random cluster tree with exactly `n_coordinators` coordinators (PAN
/// included) and `ed_per_star` end-devices on each. Deterministic in all
/// arguments. `max_parent_distance_m` bounds the parent-child link length so
/// every link stays viable under the configured radio range.
Tree generate_random_tree(const TopologyParams& params, int n_coordinators,
                          int ed_per_star, double area_w_m, double area_h_m,
                          std::uint64_t seed, double max_parent_distance_m = 44.0,
                          bool balanced = false);

/// Same, but distributes `ed_total` end-devices round-robin over the stars.
/// When the strict per-star end-device slots (cm - rm) run out, spare
/// coordinator-child address blocks are borrowed for the overflow.
Tree generate_random_tree_total(const TopologyParams& params, int n_coordinators,
                                int ed_total, double area_w_m, double area_h_m,
                                std::uint64_t seed, double max_parent_distance_m = 44.0,
                                bool balanced = false);

/// Explicit topology file: one `<id> <role> <parent|-> <x> <y>` line per node.
/// `#` starts a comment. Addresses are assigned on load.
Tree load_topology_file(const std::string& path, const TopologyParams& params);
void save_topology_file(const Tree& tree, const std::string& path);

}  // namespace macari
