#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clubench/scoring_protocol.hpp"

namespace clubench::cli {

struct ScoreRow {
  std::string method;
  std::string battery;
  std::string dataset;
  MetricId metric = MetricId::nca;
  std::optional<double> score;  // empty renders as NA
  std::optional<int> k_used;
};

/// Rows sorted by (method, battery, dataset, metric); throws InvariantError
/// on a duplicate key.
class ScoreReport {
 public:
  void add(ScoreRow row) { rows_.push_back(std::move(row)); }
  const std::vector<ScoreRow>& rows() const { return rows_; }
  void finalize();

  std::string to_csv() const;
  std::string to_markdown() const;

 private:
  std::vector<ScoreRow> rows_;
};

}  // namespace clubench::cli
