#include "clubench/cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

#include "clubench/error.hpp"

namespace clubench::cli {

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

std::string score_text(const ScoreRow& row, int decimals) {
  return row.score ? fixed(*row.score, decimals) : "NA";
}

std::string k_text(const ScoreRow& row) { return row.k_used ? std::to_string(*row.k_used) : "NA"; }

auto sort_key(const ScoreRow& r) { return std::tie(r.method, r.battery, r.dataset, r.metric); }

}  // namespace

void ScoreReport::finalize() {
  std::sort(rows_.begin(), rows_.end(), [](const auto& a, const auto& b) { return sort_key(a) < sort_key(b); });
  auto dup = std::adjacent_find(rows_.begin(), rows_.end(),
                                [](const auto& a, const auto& b) { return sort_key(a) == sort_key(b); });
  if (dup != rows_.end()) {
    throw Error(Errc::InvariantError, "duplicate report row for " + dup->method + " on " + dup->battery + "/" +
                                          dup->dataset);
  }
}

std::string ScoreReport::to_csv() const {
  std::string out = "method,battery,dataset,metric,score,k_used\n";
  for (const auto& r : rows_) {
    out += r.method + ',' + r.battery + ',' + r.dataset + ',' + std::string(to_string(r.metric)) + ',' +
           score_text(r, 6) + ',' + k_text(r) + '\n';
  }
  return out;
}

std::string ScoreReport::to_markdown() const {
  std::vector<std::vector<std::string>> cells{{"method", "battery", "dataset", "metric", "score", "k_used"}};
  for (const auto& r : rows_) {
    cells.push_back({r.method, r.battery, r.dataset, std::string(to_string(r.metric)), score_text(r, 2), k_text(r)});
  }
  std::vector<std::size_t> width(cells.front().size(), 3);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

  auto line = [&](const std::vector<std::string>& row) {
    std::string s = "|";
    for (std::size_t c = 0; c < row.size(); ++c) {
      const bool numeric = c >= 4;
      const auto pad = std::string(width[c] - row[c].size(), ' ');
      s += ' ' + (numeric ? pad + row[c] : row[c] + pad) + " |";
    }
    return s + '\n';
  };

  std::string out = line(cells.front());
  out += "|";
  for (std::size_t c = 0; c < width.size(); ++c) {
    out += c >= 4 ? " " + std::string(width[c] - 1, '-') + ": |" : " " + std::string(width[c], '-') + " |";
  }
  out += '\n';
  for (std::size_t r = 1; r < cells.size(); ++r) out += line(cells[r]);
  return out;
}

}  // namespace clubench::cli
