#include "penshrink/layout.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <utility>

#include "penshrink/errors.hpp"

namespace penshrink {

namespace {

Layout assemble(std::vector<double> levels, std::vector<std::vector<double>> groups) {
  Layout out;
  out.levels = std::move(levels);
  out.groups = std::move(groups);
  out.counts.reserve(out.groups.size());
  for (const auto& g : out.groups) {
    if (g.empty()) fail(Errc::invalid_argument, "empty group");
    out.counts.push_back(static_cast<int>(g.size()));
    out.n += static_cast<long>(g.size());
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view field) {
  field = trim(field);
  double value = 0.0;
  const auto* begin = field.data();
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || field.empty())
    fail(Errc::malformed_input, "malformed input");
  if (!std::isfinite(value)) fail(Errc::malformed_input, "malformed input");
  return value;
}

}  // namespace

Layout ingest_rows(const std::vector<std::pair<double, double>>& rows) {
  for (const auto& [s, v] : rows)
    if (!std::isfinite(s) || !std::isfinite(v)) fail(Errc::malformed_input, "malformed input");

  // stable sort keeps within-level observation order
  std::vector<std::pair<double, double>> sorted(rows);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<double> levels;
  std::vector<std::vector<double>> groups;
  for (const auto& [s, v] : sorted) {
    if (levels.empty() || levels.back() != s) {
      levels.push_back(s);
      groups.emplace_back();
    }
    groups.back().push_back(v);
  }
  if (levels.size() < 2) fail(Errc::degenerate_layout, "degenerate layout");
  return assemble(std::move(levels), std::move(groups));
}

Layout make_layout(std::vector<double> levels, std::vector<std::vector<double>> groups) {
  if (levels.size() != groups.size()) fail(Errc::invalid_argument, "mismatched lengths");
  if (levels.size() < 2) fail(Errc::degenerate_layout, "degenerate layout");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!std::isfinite(levels[i])) fail(Errc::malformed_input, "malformed input");
    if (i + 1 < levels.size() && !(levels[i] < levels[i + 1]))
      fail(Errc::invalid_argument, "unordered levels");
    for (double v : groups[i])
      if (!std::isfinite(v)) fail(Errc::malformed_input, "malformed input");
  }
  return assemble(std::move(levels), std::move(groups));
}

Layout ingest_csv(std::istream& in) {
  std::vector<std::pair<double, double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && line == "level,value") {
      first = false;
      continue;
    }
    first = false;
    if (trim(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      fail(Errc::malformed_input, "malformed input");
    const double level = parse_field(std::string_view(line).substr(0, comma));
    const double value = parse_field(std::string_view(line).substr(comma + 1));
    rows.emplace_back(level, value);
  }
  return ingest_rows(rows);
}

Layout ingest_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::malformed_input, "malformed input: cannot open " + path);
  return ingest_csv(in);
}

LsBaseline ls_baseline(const Layout& layout) {
  LsBaseline out;
  out.group_means.reserve(layout.groups.size());
  double rss = 0.0;
  for (const auto& g : layout.groups) {
    double sum = 0.0;
    for (double v : g) sum += v;
    const double mean = sum / static_cast<double>(g.size());
    out.group_means.push_back(mean);
    for (double v : g) rss += (v - mean) * (v - mean);
  }
  out.residual_ss = rss;
  if (layout.n > layout.p())
    out.sigma2_ls = rss / static_cast<double>(layout.n - layout.p());
  return out;
}

}  // namespace penshrink
