#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "posthist/metrics.hpp"
#include "posthist/model.hpp"

namespace posthist {

struct ThresholdedMetric {
  const metrics::MetricDescriptor* metric = nullptr;
  double threshold = 0.0;

  std::string name() const;  // "metricName@0.17"
  bool operator==(const ThresholdedMetric&) const = default;
};

struct MetricConfiguration {
  ThresholdedMetric text;
  ThresholdedMetric code;
  std::optional<ThresholdedMetric> text_backup;
  std::optional<ThresholdedMetric> code_backup;

  static MetricConfiguration uniform(const metrics::MetricDescriptor& metric, double threshold);
  const ThresholdedMetric& primary(BlockType t) const { return t == BlockType::Text ? text : code; }
  const std::optional<ThresholdedMetric>& backup(BlockType t) const {
    return t == BlockType::Text ? text_backup : code_backup;
  }
  // Compact form accepted by parse_configuration().
  std::string name() const;
  bool operator==(const MetricConfiguration&) const = default;
};

class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Throws ConfigurationError for thresholds outside [0, 1] or backups that
// cannot accept every nonempty string.
void validate(const MetricConfiguration& config);

// "paper-final", "equal", "metric@t" (same metric for both types) or
// "text=m@t;code=m@t[;textBackup=m@t][;codeBackup=m@t]".
MetricConfiguration parse_configuration(std::string_view spec);
MetricConfiguration preset(std::string_view name);
std::vector<std::string> preset_names();

// Similarity of two non-equal, same-type blocks if it reaches the applicable
// threshold, else nullopt.
using PassingSimilarity = std::function<std::optional<double>(const PostBlockVersion& prev,
                                                              const PostBlockVersion& cur)>;

// Primary metric with fallback to the backup when the primary reports that an
// input is too short; each applies its own threshold.
PassingSimilarity config_similarity(const MetricConfiguration& config);

// Same rule over a caller-supplied scorer, e.g. a cache of raw scores.
using RawScore = std::function<metrics::Score(const metrics::MetricDescriptor&, const PostBlockVersion& prev,
                                              const PostBlockVersion& cur)>;
PassingSimilarity config_similarity(const MetricConfiguration& config, RawScore raw);

struct PairRelation {
  bool same_type = false;
  bool equal = false;
  std::optional<double> similarity;  // only for non-equal pairs at or above threshold
};

// Relations between blocks of p_{i-1} (rows) and p_i (columns).
class PairMatrix {
 public:
  PairMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  PairRelation& at(std::size_t prev, std::size_t cur) { return cells_[prev * cols_ + cur]; }
  const PairRelation& at(std::size_t prev, std::size_t cur) const { return cells_[prev * cols_ + cur]; }

 private:
  std::size_t rows_, cols_;
  std::vector<PairRelation> cells_;
};

PairMatrix build_pair_matrix(const std::vector<PostBlockVersion>& prev, const std::vector<PostBlockVersion>& cur,
                             const PassingSimilarity& similarity);

struct CandidateSet {
  std::vector<int> pred_equal;  // local ids in p_{i-1}
  std::vector<int> pred_sim;
  double max_sim = 0.0;
  // pred_equal when nonempty, else pred_sim.
  std::vector<int> pred;
};

CandidateSet compute_candidates(const std::vector<PostBlockVersion>& prev, const PostBlockVersion& block,
                                const MetricConfiguration& config);
// Candidates of column `cur` (0-based) of a precomputed matrix.
CandidateSet candidates_from_matrix(const PairMatrix& m, const std::vector<PostBlockVersion>& prev, std::size_t cur);

struct VersionPairLinks {
  std::vector<std::optional<std::size_t>> pred_of;  // per current block, index into prev
  std::vector<int> pred_count;                      // |Pred| per current block
  std::vector<int> succ_count;                      // |Succ| per previous block
  std::vector<std::optional<MatchedSimilarity>> similarity;
};

// Runs the matching strategy for one version transition: unique candidates
// first, then context passes (both neighbours, below, above), then position.
VersionPairLinks resolve_links(const PairMatrix& m);

enum class ContextDirection { Both, Below, Above };

// One context pass over the current version; true if any link was set.
// `claimed` marks previous blocks that already have a successor.
bool set_pred_context(const std::vector<std::vector<std::size_t>>& pred_sets,
                      std::vector<std::optional<std::size_t>>& pred_of, std::vector<bool>& claimed,
                      ContextDirection direction);
// Links every remaining block to its closest unclaimed candidate by local id,
// preferring the smaller local id on ties.
void set_pred_position(const std::vector<std::vector<std::size_t>>& pred_sets,
                       std::vector<std::optional<std::size_t>>& pred_of, std::vector<bool>& claimed);

// Fills predecessor links, counts, similarities and root ids for all versions
// of a post. Block ids must already be assigned.
void match_versions(Post& post, const PassingSimilarity& similarity);
void match_versions(Post& post, const MetricConfiguration& config);

struct LifespanMember {
  BlockId block_id = 0;
  int version_index = 0;
  int local_id = 0;
};

struct PostBlockLifespan {
  PostId post_id = 0;
  BlockId root_block_id = 0;
  BlockType type = BlockType::Text;
  std::vector<LifespanMember> members;
};

std::vector<PostBlockLifespan> build_lifespans(const Post& post);

}  // namespace posthist
