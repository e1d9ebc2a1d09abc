#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace penshrink {

// One-way layout with ordered levels: p strictly increasing factor levels with n_i
// replicate observations at level i. Rows with identical level values are
// collapsed into one group; within-group observation order is preserved.
struct Layout {
  std::vector<double> levels;
  std::vector<int> counts;
  std::vector<std::vector<double>> groups;
  long n = 0;

  int p() const { return static_cast<int>(levels.size()); }
};

// Least squares fit: per-level means plus the within-group residual sum of
// squares. sigma2_ls exists only when n > p.
struct LsBaseline {
  std::vector<double> group_means;
  double residual_ss = 0.0;
  std::optional<double> sigma2_ls;
};

Layout ingest_rows(const std::vector<std::pair<double, double>>& rows);

// Direct construction from per-level groups (levels strictly increasing).
Layout make_layout(std::vector<double> levels, std::vector<std::vector<double>> groups);

// Two-column CSV `level,value`, optional literal header line, LF or CRLF.
Layout ingest_csv(std::istream& in);
Layout ingest_csv_file(const std::string& path);

LsBaseline ls_baseline(const Layout& layout);

}  // namespace penshrink
