#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "reconips/agent.hpp"

namespace reconips {

// Trace/CSV serialization. Floats use 12 significant digits; NaN becomes an
// empty field.

std::string fmt_double(double v);
std::string fmt_field(double v);  // "" for NaN
std::string fmt_sig3(double v);

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

std::string episode_log_csv(const EpisodeLog& log);
EpisodeLog parse_episode_log_csv(const std::string& text);

// Recursive comparison of two result trees; returns the relative paths that
// differ (missing or different bytes).
std::vector<std::string> diff_trees(const std::filesystem::path& a,
                                    const std::filesystem::path& b);

std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace reconips
