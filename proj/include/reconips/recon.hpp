#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reconips {

// Request-confirmation script execution: typed nodes with discrete states
// exchanging request/confirm/wait/inhibit messages over a sub/sur hierarchy.

using NodeId = int;
constexpr NodeId kNoNode = -1;

enum class NodeKind { Script, Sensor, Actuator };
enum class NodeState { Inactive, Requested, Active, Confirmed, Failed };
enum class MessageKind { Request, Confirm, Wait, Inhibit };
enum class LinkKind { Sub, Sur, Por, Ret };

const char* to_string(NodeKind k);
const char* to_string(NodeState s);
const char* to_string(LinkKind k);

struct Message {
  MessageKind kind;
  NodeId source;
  NodeId target;
};

struct Link {
  NodeId source;
  NodeId target;
  LinkKind kind;
};

// Loop behaviour of a script node once all of its evidence children have
// reported: plain scripts complete, fixed-cycle scripts re-run their children
// a set number of times, gated scripts re-run while a gate sensor stays above
// threshold.
enum class LoopMode { None, FixedCycles, Gated };

struct Node {
  NodeKind kind = NodeKind::Script;
  NodeState state = NodeState::Inactive;
  double activation = 0.0;
  double threshold = 0.5;
  std::string name;

  LoopMode loop = LoopMode::None;
  int fixed_cycles = 1;
  NodeId gate_node = kNoNode;
  double gate_threshold = 0.1;

  // Script bookkeeping: child -> confirmed flag, reset per loop cycle.
  std::map<NodeId, bool> reports;
  int cycles_done = 0;
};

class Network {
 public:
  NodeId add_node(NodeKind kind, double threshold = 0.5, std::string name = "");
  void link(NodeId parent, NodeId child, LinkKind kind);
  void request_root(NodeId root);

  // One synchronous message-delivery round; messages are consumed in stable
  // (target, source, kind) order and each script makes at most one state
  // transition per round. Returns true if anything changed.
  bool step();

  // Steps until fixed point or the round budget runs out; returns rounds used.
  int run(int max_rounds);

  void set_activation(NodeId node, double value);
  double read_activation(NodeId node) const;

  NodeState state(NodeId node) const;
  NodeKind kind(NodeId node) const;
  const std::string& name(NodeId node) const;
  NodeId find(std::string_view name) const;  // kNoNode if absent

  void set_loop_fixed(NodeId script, int cycles);
  void set_loop_gated(NodeId script, NodeId gate, double threshold);
  int cycles_done(NodeId script) const;

  size_t node_count() const { return nodes_.size(); }
  const std::vector<Link>& links() const { return links_; }
  bool queue_empty() const { return queue_.empty(); }
  bool quiescent() const;

  // Deliveries seen per link kind; por/ret stay zero in every evaluated
  // configuration and the episode runner asserts that.
  const std::array<long, 4>& traversals() const { return traversals_; }

  // Clears states, queues, reports and loop counters; keeps structure and
  // activations. Cross-episode memory lives outside the network.
  void reset();

  // One line per node: "<step> <name> <state> <activation>".
  std::string dump_state(int step) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<Message> queue_;
  std::vector<std::vector<NodeId>> sub_children_;
  std::vector<std::vector<NodeId>> sur_parents_;
  std::array<long, 4> traversals_{0, 0, 0, 0};

  void check_id(NodeId id) const;
  void enqueue(MessageKind kind, NodeId source, NodeId target);
  void transition(NodeId id, NodeState to);
  void enter_requested(NodeId id);
  void send_to_parents(MessageKind kind, NodeId child);
  void start_cycle(NodeId script);
  bool complete_script(NodeId id);  // confirm/fail/loop once children reported
};

// Builds a network from a small structured-text description:
//   node <name> script|sensor|actuator [threshold]
//   link <parent> <child> sub|sur|por|ret
// '#' starts a comment.
Network parse_network(std::string_view text);

enum class Stage { A, B, C, D };

struct StageConfig {
  int percept_cycles = 3;     // Stage C internal loop length
  double gate_threshold = 0.1;  // Stage D gate on Ne
};

// Staged constructors: A = minimal reflex script (Root, R, Ns, Nm);
// B adds the efference-copy sensor Ne; C adds the percept script P with a
// fixed-cycle internal loop; D gates P's loop on Ne.
Network build_stage(Stage stage, const StageConfig& cfg = {});

}  // namespace reconips
