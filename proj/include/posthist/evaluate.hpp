#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "posthist/matcher.hpp"
#include "posthist/model.hpp"

namespace posthist {

// ---- ground truth -------------------------------------------------------

struct BlockRef {
  PostId post_id = 0;
  int version_index = 0;
  int local_id = 0;
  auto operator<=>(const BlockRef&) const = default;
};

struct GroundTruthLabel {
  std::optional<int> pred_local_id;  // in version_index - 1; nullopt = no predecessor
  BlockType type = BlockType::Text;
  std::string comment;
  bool operator==(const GroundTruthLabel&) const = default;
};

struct GroundTruth {
  std::string sample;
  std::map<BlockRef, GroundTruthLabel> labels;  // keyed by the current block

  // Number of labeled predecessor connections.
  std::size_t size() const;
  std::set<PostId> posts() const;
  bool operator==(const GroundTruth&) const = default;
};

enum class GroundTruthErrorKind { Malformed, DanglingReference, DuplicateTarget, DuplicatePredecessor, TypeMismatch };

std::string_view to_string(GroundTruthErrorKind k);

class GroundTruthError : public std::runtime_error {
 public:
  GroundTruthError(GroundTruthErrorKind kind, std::size_t row, const std::string& message);
  GroundTruthErrorKind kind() const { return kind_; }
  std::size_t row() const { return row_; }

 private:
  GroundTruthErrorKind kind_;
  std::size_t row_;
};

// RFC 4180 records; quoted fields may hold commas, quotes and newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::string csv_field(std::string_view s);

// Reads
//   postId,predVersion,predLocalId,curVersion,curLocalId,blockType,comment
// with an optional header row. Empty predVersion/predLocalId mark a block
// labeled as having no predecessor. Checks row shape and duplicates only.
GroundTruth parse_ground_truth(std::string_view csv, std::string sample = {});

// Checks every reference against a blockified corpus: versions and local ids
// must exist, connected blocks and the blockType column must agree in type.
void validate_ground_truth(const GroundTruth& gt, const std::map<PostId, Post>& posts);

GroundTruth load_ground_truth(std::string_view csv, const std::map<PostId, Post>& posts, std::string sample = {});

std::string write_ground_truth(const GroundTruth& gt);

// ---- confusion and MCC --------------------------------------------------

struct Connection {
  PostId post_id = 0;
  int version_index = 0;  // of the current block
  int local_id = 0;
  int pred_local_id = 0;
  auto operator<=>(const Connection&) const = default;
};

struct ConfusionCounts {
  long tp = 0, fp = 0, tn = 0, fn = 0;
  long n_pos = 0;
  BlockType type = BlockType::Text;

  ConfusionCounts& operator+=(const ConfusionCounts& o);
};

// tp = |C & GT|, fp = |C - GT|, fn = |GT - C|, tn = nPos - |C | GT|.
// Throws std::logic_error if the four counts do not sum to nPos.
ConfusionCounts confusion(const std::set<Connection>& computed, const std::set<Connection>& truth, long n_pos,
                          BlockType type);

// 0 when any factor of the denominator is zero.
double mcc(const ConfusionCounts& c);

// ---- evaluation ---------------------------------------------------------

// A ground-truth sample together with its blockified posts (block ids
// assigned, no matching needed).
struct Sample {
  std::string name;
  std::map<PostId, Post> posts;
  GroundTruth truth;
};

// Builds a sample from the posts named in the ground truth. Throws
// GroundTruthError if the truth does not fit the corpus.
Sample make_sample(std::string name, const std::map<PostId, Post>& corpus, GroundTruth truth);

struct EvaluationResult {
  std::size_t config_id = 0;
  MetricConfiguration config;
  ConfusionCounts text{0, 0, 0, 0, 0, BlockType::Text};
  ConfusionCounts code{0, 0, 0, 0, 0, BlockType::Code};
  double mcc_text = 0;
  double mcc_code = 0;
  double runtime_ms = 0;
};

// Milliseconds from an arbitrary origin.
using Clock = std::function<double()>;
Clock steady_clock_ms();

// Connections the matcher sets for the sample's posts, split by type.
struct ComputedConnections {
  std::set<Connection> text;
  std::set<Connection> code;
};
ComputedConnections compute_connections(const Sample& sample, const PassingSimilarity& similarity);

EvaluationResult evaluate_configuration(const Sample& sample, const MetricConfiguration& config,
                                        const Clock& clock = steady_clock_ms());

// ---- sweep --------------------------------------------------------------

// Thresholds 0, 1/steps, ..., 1.
std::vector<double> threshold_grid(int steps);

struct SweepSelection {
  // Stages 1 and 2: one metric for both block types.
  std::vector<const metrics::MetricDescriptor*> metrics;
  // Stage 3: independent text, code and backup configurations.
  std::vector<ThresholdedMetric> text;
  std::vector<ThresholdedMetric> text_backup;
  std::vector<ThresholdedMetric> code;
  std::vector<ThresholdedMetric> code_backup;
};

class SweepError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Stage 1: metrics x 11 thresholds; stage 2: metrics x 101 thresholds;
// stage 3: text x textBackup x code x codeBackup. Throws SweepError on an
// empty selection or unknown stage.
std::vector<MetricConfiguration> stage_configurations(int stage, const SweepSelection& selection);

struct SweepOptions {
  unsigned parallelism = 1;
  Clock clock = steady_clock_ms();
};

struct SweepResult {
  std::size_t config_id = 0;
  MetricConfiguration config;
  std::vector<EvaluationResult> per_sample;  // in sample order
  EvaluationResult pooled;                   // counts summed over samples
};

// Evaluates every configuration on every sample and ranks by
// mccText + mccCode of the pooled counts, then runtime, then config id.
// Raw metric scores are computed once per (metric, block type, sample) and
// shared across thresholds; a configuration's runtime is its matching time
// plus the scoring time of its primary metrics.
std::vector<SweepResult> sweep(const std::vector<MetricConfiguration>& configs, const std::vector<Sample>& samples,
                               const SweepOptions& options = {});

std::string results_header();
std::string result_row(const EvaluationResult& r);
std::string write_results(const std::vector<SweepResult>& ranked);
// Ranked rows of one sample, by the same ordering rule.
std::string write_sample_results(const std::vector<SweepResult>& ranked, std::size_t sample);

enum class FilterScope { AllMetrics, BackupCandidates };

// Edit-based or token-based metrics accepting every nonempty string.
bool is_backup_candidate(const metrics::MetricDescriptor& d);

// Metrics that, at some threshold, reach the q-quantile of MCC values on
// every sample for text or for code. Quantiles are taken over the results
// in scope. Results are the per-sample entries of a stage-1/2 sweep.
std::vector<const metrics::MetricDescriptor*> quantile_filter(const std::vector<SweepResult>& results, double q,
                                                               FilterScope scope = FilterScope::AllMetrics);

}  // namespace posthist
