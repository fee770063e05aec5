#include "reconips/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace reconips {

namespace fs = std::filesystem;

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_field(double v) {
  if (std::isnan(v)) return "";
  return fmt_double(v);
}

std::string fmt_sig3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

static const char* kLogHeader =
    "t,row,col,heading,action,planned,input,ns,ne,nv,na,bb,alpha_eff,"
    "cut_feedback,bypass_integration,hazard,goal,"
    "score_forward,score_turn_left,score_turn_right";

std::string episode_log_csv(const EpisodeLog& log) {
  std::ostringstream out;
  out << kLogHeader << '\n';
  for (const LogRow& r : log.rows) {
    out << r.t << ',' << r.pose.cell.row << ',' << r.pose.cell.col << ','
        << to_string(r.pose.heading) << ','
        << (r.action < 0 ? "" : to_string(static_cast<Action>(r.action))) << ','
        << to_string(r.planned) << ',' << fmt_double(r.input) << ','
        << fmt_double(r.ns) << ',' << fmt_double(r.ne) << ','
        << fmt_field(r.nv) << ',' << fmt_field(r.na) << ',' << fmt_field(r.bb)
        << ',' << fmt_double(r.alpha_eff) << ',' << (r.cut_feedback ? 1 : 0)
        << ',' << (r.bypass_integration ? 1 : 0) << ',' << (r.hazard ? 1 : 0)
        << ',' << (r.goal ? 1 : 0) << ',' << fmt_double(r.scores[0]) << ','
        << fmt_double(r.scores[1]) << ',' << fmt_double(r.scores[2]) << '\n';
  }
  return out.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

static double field_double(const std::string& s) {
  if (s.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::stod(s);
}

EpisodeLog parse_episode_log_csv(const std::string& text) {
  EpisodeLog log;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty log");
  if (line != kLogHeader) throw std::invalid_argument("bad log header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 20) throw std::invalid_argument("bad log row");
    LogRow r;
    r.t = std::stoi(f[0]);
    r.pose.cell = {std::stoi(f[1]), std::stoi(f[2])};
    r.pose.heading = heading_from_char(f[3].at(0));
    r.action = f[4].empty() ? -1 : static_cast<int>(action_from_string(f[4]));
    r.planned = action_from_string(f[5]);
    r.input = field_double(f[6]);
    r.ns = field_double(f[7]);
    r.ne = field_double(f[8]);
    r.nv = field_double(f[9]);
    r.na = field_double(f[10]);
    r.bb = field_double(f[11]);
    r.alpha_eff = field_double(f[12]);
    r.cut_feedback = f[13] == "1";
    r.bypass_integration = f[14] == "1";
    r.hazard = f[15] == "1";
    r.goal = f[16] == "1";
    r.scores = {field_double(f[17]), field_double(f[18]), field_double(f[19])};
    log.rows.push_back(r);
  }
  return log;
}

std::vector<std::string> diff_trees(const fs::path& a, const fs::path& b) {
  std::set<std::string> rel;
  for (const fs::path& root : {a, b}) {
    if (!fs::exists(root)) continue;
    for (const auto& entry : fs::recursive_directory_iterator(root))
      if (entry.is_regular_file())
        rel.insert(fs::relative(entry.path(), root).generic_string());
  }
  std::vector<std::string> diffs;
  for (const std::string& r : rel) {
    fs::path pa = a / r, pb = b / r;
    if (!fs::exists(pa) || !fs::exists(pb)) {
      diffs.push_back(r);
      continue;
    }
    if (read_file(pa) != read_file(pb)) diffs.push_back(r);
  }
  return diffs;
}

}  // namespace reconips
