#include "reconips/recon.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "reconips/rng.hpp"

namespace reconips {

const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::Script: return "script";
    case NodeKind::Sensor: return "sensor";
    case NodeKind::Actuator: return "actuator";
  }
  return "?";
}

const char* to_string(NodeState s) {
  switch (s) {
    case NodeState::Inactive: return "inactive";
    case NodeState::Requested: return "requested";
    case NodeState::Active: return "active";
    case NodeState::Confirmed: return "confirmed";
    case NodeState::Failed: return "failed";
  }
  return "?";
}

const char* to_string(LinkKind k) {
  switch (k) {
    case LinkKind::Sub: return "sub";
    case LinkKind::Sur: return "sur";
    case LinkKind::Por: return "por";
    case LinkKind::Ret: return "ret";
  }
  return "?";
}

void Network::check_id(NodeId id) const {
  if (id < 0 || static_cast<size_t>(id) >= nodes_.size())
    throw std::invalid_argument("unknown node id " + std::to_string(id));
}

NodeId Network::add_node(NodeKind kind, double threshold, std::string name) {
  if (threshold < 0.0 || threshold > 1.0)
    throw std::invalid_argument("threshold outside [0,1]");
  NodeId id = static_cast<NodeId>(nodes_.size());
  Node n;
  n.kind = kind;
  n.threshold = threshold;
  n.name = name.empty() ? "n" + std::to_string(id) : std::move(name);
  nodes_.push_back(std::move(n));
  sub_children_.emplace_back();
  sur_parents_.emplace_back();
  return id;
}

void Network::link(NodeId parent, NodeId child, LinkKind kind) {
  check_id(parent);
  check_id(child);
  if (kind == LinkKind::Sub && parent == child)
    throw std::invalid_argument("sub self-loop");
  links_.push_back({parent, child, kind});
  if (kind == LinkKind::Sub) {
    links_.push_back({child, parent, LinkKind::Sur});
    sub_children_[parent].push_back(child);
    sur_parents_[child].push_back(parent);
    std::sort(sub_children_[parent].begin(), sub_children_[parent].end());
    std::sort(sur_parents_[child].begin(), sur_parents_[child].end());
  }
}

void Network::enqueue(MessageKind kind, NodeId source, NodeId target) {
  queue_.push_back({kind, source, target});
}

void Network::transition(NodeId id, NodeState to) {
  NodeState from = nodes_[id].state;
  bool legal = false;
  switch (from) {
    case NodeState::Inactive: legal = to == NodeState::Requested; break;
    case NodeState::Requested: legal = to == NodeState::Active; break;
    case NodeState::Active:
      legal = to == NodeState::Confirmed || to == NodeState::Failed;
      break;
    case NodeState::Confirmed:
    case NodeState::Failed:
      legal = false;  // absorbing until reset
      break;
  }
  if (!legal)
    throw std::logic_error(std::string("illegal transition ") + to_string(from) +
                           " -> " + to_string(to));
  nodes_[id].state = to;
}

void Network::send_to_parents(MessageKind kind, NodeId child) {
  for (NodeId p : sur_parents_[child]) enqueue(kind, child, p);
}

void Network::enter_requested(NodeId id) {
  transition(id, NodeState::Requested);
  nodes_[id].reports.clear();
  nodes_[id].cycles_done = 0;
  for (NodeId c : sub_children_[id]) enqueue(MessageKind::Request, id, c);
}

void Network::request_root(NodeId root) {
  check_id(root);
  if (nodes_[root].kind != NodeKind::Script)
    throw std::invalid_argument("root must be a script");
  if (nodes_[root].state != NodeState::Inactive)
    throw std::invalid_argument("root not inactive");
  enter_requested(root);
}

void Network::start_cycle(NodeId script) {
  Node& n = nodes_[script];
  n.reports.clear();
  for (NodeId c : sub_children_[script]) {
    // Re-run terminal children; script children are absorbing and keep
    // their reported state.
    if (nodes_[c].kind != NodeKind::Script)
      enqueue(MessageKind::Request, script, c);
    else if (nodes_[c].state == NodeState::Confirmed)
      n.reports[c] = true;
    else if (nodes_[c].state == NodeState::Failed)
      n.reports[c] = false;
  }
  n.cycles_done++;
}

bool Network::complete_script(NodeId id) {
  Node& n = nodes_[id];
  const auto& children = sub_children_[id];
  if (!children.empty() && n.reports.size() < children.size()) return false;

  bool any_confirmed = false;
  for (const auto& [child, ok] : n.reports) any_confirmed |= ok;

  if (n.loop == LoopMode::FixedCycles && n.cycles_done < n.fixed_cycles) {
    start_cycle(id);
    return true;
  }
  if (n.loop == LoopMode::Gated && n.gate_node != kNoNode &&
      nodes_[n.gate_node].activation > n.gate_threshold) {
    start_cycle(id);
    return true;
  }

  if (any_confirmed) {
    transition(id, NodeState::Confirmed);
    send_to_parents(MessageKind::Confirm, id);
  } else {
    transition(id, NodeState::Failed);
    send_to_parents(MessageKind::Inhibit, id);
  }
  return true;
}

bool Network::step() {
  bool changed = !queue_.empty();
  std::vector<Message> batch;
  batch.swap(queue_);
  std::stable_sort(batch.begin(), batch.end(), [](const Message& a, const Message& b) {
    if (a.target != b.target) return a.target < b.target;
    if (a.source != b.source) return a.source < b.source;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });

  for (const Message& m : batch) {
    // Audit which link kind carried the message: requests ride sub links,
    // reports ride the paired sur links.
    traversals_[static_cast<size_t>(
        m.kind == MessageKind::Request ? LinkKind::Sub : LinkKind::Sur)]++;
    Node& target = nodes_[m.target];
    switch (m.kind) {
      case MessageKind::Request:
        if (target.kind == NodeKind::Script) {
          if (target.state == NodeState::Inactive) enter_requested(m.target);
        } else {
          // Thresholded confirmation from continuous activation.
          if (target.activation >= target.threshold)
            send_to_parents(MessageKind::Confirm, m.target);
          else
            send_to_parents(MessageKind::Inhibit, m.target);
        }
        break;
      case MessageKind::Confirm:
        if (target.kind == NodeKind::Script) target.reports[m.source] = true;
        break;
      case MessageKind::Inhibit:
        if (target.kind == NodeKind::Script) target.reports[m.source] = false;
        break;
      case MessageKind::Wait:
        break;  // keep-alive only
    }
  }

  // Progression phase, stable node-id order, one transition per node.
  for (NodeId id = 0; id < static_cast<NodeId>(nodes_.size()); ++id) {
    Node& n = nodes_[id];
    if (n.kind != NodeKind::Script) continue;
    if (n.state == NodeState::Requested) {
      transition(id, NodeState::Active);
      send_to_parents(MessageKind::Wait, id);
      if (n.cycles_done == 0 && n.loop != LoopMode::None) n.cycles_done = 1;
      changed = true;
    } else if (n.state == NodeState::Active) {
      if (complete_script(id)) changed = true;
    }
  }
  return changed || !queue_.empty();
}

int Network::run(int max_rounds) {
  int rounds = 0;
  while (rounds < max_rounds) {
    ++rounds;
    if (!step() && queue_.empty()) break;
  }
  return rounds;
}

bool Network::quiescent() const {
  if (!queue_.empty()) return false;
  for (size_t id = 0; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    if (n.kind != NodeKind::Script) continue;
    if (n.state == NodeState::Requested) return false;
    if (n.state == NodeState::Active &&
        (sub_children_[id].empty() || n.reports.size() >= sub_children_[id].size()))
      return false;
  }
  return true;
}

void Network::set_activation(NodeId node, double value) {
  check_id(node);
  if (nodes_[node].kind == NodeKind::Script)
    throw std::invalid_argument("script nodes have no activation");
  nodes_[node].activation = clip01(value);
}

double Network::read_activation(NodeId node) const {
  check_id(node);
  if (nodes_[node].kind == NodeKind::Script)
    throw std::invalid_argument("script nodes have no activation");
  return nodes_[node].activation;
}

NodeState Network::state(NodeId node) const {
  check_id(node);
  return nodes_[node].state;
}

NodeKind Network::kind(NodeId node) const {
  check_id(node);
  return nodes_[node].kind;
}

const std::string& Network::name(NodeId node) const {
  check_id(node);
  return nodes_[node].name;
}

NodeId Network::find(std::string_view name) const {
  for (size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].name == name) return static_cast<NodeId>(i);
  return kNoNode;
}

void Network::set_loop_fixed(NodeId script, int cycles) {
  check_id(script);
  nodes_[script].loop = LoopMode::FixedCycles;
  nodes_[script].fixed_cycles = cycles;
}

void Network::set_loop_gated(NodeId script, NodeId gate, double threshold) {
  check_id(script);
  check_id(gate);
  nodes_[script].loop = LoopMode::Gated;
  nodes_[script].gate_node = gate;
  nodes_[script].gate_threshold = threshold;
}

int Network::cycles_done(NodeId script) const {
  check_id(script);
  return nodes_[script].cycles_done;
}

void Network::reset() {
  queue_.clear();
  for (Node& n : nodes_) {
    n.state = NodeState::Inactive;
    n.reports.clear();
    n.cycles_done = 0;
  }
}

std::string Network::dump_state(int step) const {
  std::ostringstream out;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", nodes_[i].activation);
    out << step << ' ' << nodes_[i].name << ' ' << to_string(nodes_[i].state)
        << ' ' << buf << '\n';
  }
  return out.str();
}

Network parse_network(std::string_view text) {
  Network net;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "node") {
      std::string name, kind;
      double threshold = 0.5;
      if (!(ls >> name >> kind))
        throw std::invalid_argument("bad node line " + std::to_string(lineno));
      ls >> threshold;
      NodeKind k;
      if (kind == "script") k = NodeKind::Script;
      else if (kind == "sensor") k = NodeKind::Sensor;
      else if (kind == "actuator") k = NodeKind::Actuator;
      else throw std::invalid_argument("bad node kind: " + kind);
      net.add_node(k, threshold, name);
    } else if (word == "link") {
      std::string parent, child, kind;
      if (!(ls >> parent >> child >> kind))
        throw std::invalid_argument("bad link line " + std::to_string(lineno));
      LinkKind k;
      if (kind == "sub") k = LinkKind::Sub;
      else if (kind == "sur") k = LinkKind::Sur;
      else if (kind == "por") k = LinkKind::Por;
      else if (kind == "ret") k = LinkKind::Ret;
      else throw std::invalid_argument("bad link kind: " + kind);
      net.link(net.find(parent), net.find(child), k);
    } else {
      throw std::invalid_argument("unknown directive: " + word);
    }
  }
  return net;
}

Network build_stage(Stage stage, const StageConfig& cfg) {
  Network net;
  NodeId root = net.add_node(NodeKind::Script, 0.5, "Root");
  NodeId r = net.add_node(NodeKind::Script, 0.5, "R");
  NodeId ns = net.add_node(NodeKind::Sensor, 0.5, "Ns");
  NodeId nm = net.add_node(NodeKind::Actuator, 0.5, "Nm");
  net.link(root, r, LinkKind::Sub);

  if (stage == Stage::A) {
    net.link(r, ns, LinkKind::Sub);
    net.link(r, nm, LinkKind::Sub);
    return net;
  }

  // Stage B adds the efference-copy sensor: a monitorable gauge, not
  // evidence, so it carries no sub link.
  NodeId ne = net.add_node(NodeKind::Sensor, 0.0, "Ne");
  if (stage == Stage::B) {
    net.link(r, ns, LinkKind::Sub);
    net.link(r, nm, LinkKind::Sub);
    return net;
  }

  // Stages C/D group the sensory terminal under a percept script that loops
  // internally before reporting up.
  NodeId p = net.add_node(NodeKind::Script, 0.5, "P");
  net.link(r, p, LinkKind::Sub);
  net.link(r, nm, LinkKind::Sub);
  net.link(p, ns, LinkKind::Sub);
  if (stage == Stage::C)
    net.set_loop_fixed(p, cfg.percept_cycles);
  else
    net.set_loop_gated(p, ne, cfg.gate_threshold);
  return net;
}

}  // namespace reconips
