#include "posthist/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <unordered_map>

#include "posthist/parallel.hpp"
#include "posthist/stats.hpp"

namespace posthist {

// ---- ground truth -------------------------------------------------------

std::size_t GroundTruth::size() const {
  return static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(), [](const auto& kv) { return kv.second.pred_local_id.has_value(); }));
}

std::set<PostId> GroundTruth::posts() const {
  std::set<PostId> out;
  for (const auto& [ref, label] : labels) out.insert(ref.post_id);
  return out;
}

std::string_view to_string(GroundTruthErrorKind k) {
  switch (k) {
    case GroundTruthErrorKind::Malformed: return "malformed row";
    case GroundTruthErrorKind::DanglingReference: return "dangling reference";
    case GroundTruthErrorKind::DuplicateTarget: return "duplicate target block";
    case GroundTruthErrorKind::DuplicatePredecessor: return "duplicate predecessor";
    case GroundTruthErrorKind::TypeMismatch: return "type mismatch";
  }
  return "";
}

GroundTruthError::GroundTruthError(GroundTruthErrorKind kind, std::size_t row, const std::string& message)
    : std::runtime_error("ground truth row " + std::to_string(row) + ": " + std::string(to_string(kind)) + ": " +
                         message),
      kind_(kind),
      row_(row) {}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t i = 0;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
    row.clear();
  };
  while (i < text.size()) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        quoted = false;
      } else {
        field += c;
      }
      ++i;
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      // handled with the newline
    } else if (c == '\n') {
      end_row();
    } else {
      field += c;
      field_started = true;
    }
    ++i;
  }
  if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
  if (!field.empty() || !row.empty() || field_started) end_row();
  return rows;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

constexpr std::size_t kGtFields = 7;

bool is_header(const std::vector<std::string>& row) { return !row.empty() && trim(row[0]) == "postId"; }

int need_positive(const std::string& s, std::size_t row, const char* field) {
  const auto v = parse_int(trim(s));
  if (!v || *v < 1 || *v > 1'000'000'000) {
    throw GroundTruthError(GroundTruthErrorKind::Malformed, row, std::string("bad ") + field + " '" + s + "'");
  }
  return static_cast<int>(*v);
}

using RowMap = std::map<BlockRef, std::size_t>;

GroundTruth parse_impl(std::string_view csv, std::string sample, RowMap* row_of) {
  std::vector<std::vector<std::string>> rows;
  try {
    rows = parse_csv(csv);
  } catch (const std::invalid_argument& e) {
    throw GroundTruthError(GroundTruthErrorKind::Malformed, 0, e.what());
  }
  GroundTruth gt;
  gt.sample = std::move(sample);
  std::map<std::pair<BlockRef, int>, std::size_t> pred_rows;  // (post, predVersion, predLocal) -> row
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t row_no = r + 1;
    const auto& f = rows[r];
    if (r == 0 && is_header(f)) continue;
    if (f.size() != kGtFields) {
      throw GroundTruthError(GroundTruthErrorKind::Malformed, row_no,
                             "expected 7 fields, got " + std::to_string(f.size()));
    }
    const auto post = parse_int(trim(f[0]));
    if (!post) throw GroundTruthError(GroundTruthErrorKind::Malformed, row_no, "bad postId '" + f[0] + "'");
    const int cur_version = need_positive(f[3], row_no, "curVersion");
    const int cur_local = need_positive(f[4], row_no, "curLocalId");
    const auto type = parse_block_type(trim(f[5]));
    if (!type) throw GroundTruthError(GroundTruthErrorKind::Malformed, row_no, "bad blockType '" + f[5] + "'");

    const BlockRef ref{*post, cur_version, cur_local};
    if (gt.labels.count(ref)) {
      throw GroundTruthError(GroundTruthErrorKind::DuplicateTarget, row_no,
                             "block " + std::to_string(cur_local) + " of version " + std::to_string(cur_version) +
                                 " of post " + std::to_string(*post) + " labeled twice");
    }
    GroundTruthLabel label;
    label.type = *type;
    label.comment = f[6];
    const bool has_pred_version = !trim(f[1]).empty();
    const bool has_pred_local = !trim(f[2]).empty();
    if (has_pred_version != has_pred_local) {
      throw GroundTruthError(GroundTruthErrorKind::Malformed, row_no, "predVersion and predLocalId must both be set");
    }
    if (cur_version < 2) {
      throw GroundTruthError(GroundTruthErrorKind::Malformed, row_no, "curVersion must be at least 2");
    }
    if (has_pred_version) {
      const int pred_version = need_positive(f[1], row_no, "predVersion");
      if (pred_version != cur_version - 1) {
        throw GroundTruthError(GroundTruthErrorKind::Malformed, row_no, "predVersion must equal curVersion - 1");
      }
      label.pred_local_id = need_positive(f[2], row_no, "predLocalId");
      const auto key = std::make_pair(BlockRef{*post, pred_version, *label.pred_local_id}, cur_version);
      if (auto [it, inserted] = pred_rows.emplace(key, row_no); !inserted) {
        throw GroundTruthError(GroundTruthErrorKind::DuplicatePredecessor, row_no,
                               "predecessor already connected in row " + std::to_string(it->second));
      }
    }
    gt.labels.emplace(ref, std::move(label));
    if (row_of) row_of->emplace(ref, row_no);
  }
  return gt;
}

const PostBlockVersion* find_block(const std::map<PostId, Post>& posts, PostId post, int version, int local) {
  auto it = posts.find(post);
  if (it == posts.end()) return nullptr;
  const auto& versions = it->second.versions;
  if (version < 1 || static_cast<std::size_t>(version) > versions.size()) return nullptr;
  const auto& blocks = versions[static_cast<std::size_t>(version - 1)].blocks;
  if (local < 1 || static_cast<std::size_t>(local) > blocks.size()) return nullptr;
  return &blocks[static_cast<std::size_t>(local - 1)];
}

// Without a row map, rows are numbered as write_ground_truth() would emit them.
void validate_impl(const GroundTruth& gt, const std::map<PostId, Post>& posts, const RowMap* row_of) {
  std::size_t position = 1;
  for (const auto& [ref, label] : gt.labels) {
    ++position;
    const std::size_t row = row_of ? row_of->at(ref) : position;
    const auto* cur = find_block(posts, ref.post_id, ref.version_index, ref.local_id);
    if (!cur) {
      throw GroundTruthError(GroundTruthErrorKind::DanglingReference, row,
                             "post " + std::to_string(ref.post_id) + " has no block " + std::to_string(ref.local_id) +
                                 " in version " + std::to_string(ref.version_index));
    }
    if (cur->type != label.type) {
      throw GroundTruthError(GroundTruthErrorKind::TypeMismatch, row,
                             "blockType column says " + std::string(to_string(label.type)) + " but the block is " +
                                 std::string(to_string(cur->type)));
    }
    if (!label.pred_local_id) continue;
    const auto* pred = find_block(posts, ref.post_id, ref.version_index - 1, *label.pred_local_id);
    if (!pred) {
      throw GroundTruthError(GroundTruthErrorKind::DanglingReference, row,
                             "post " + std::to_string(ref.post_id) + " has no block " +
                                 std::to_string(*label.pred_local_id) + " in version " +
                                 std::to_string(ref.version_index - 1));
    }
    if (pred->type != cur->type) {
      throw GroundTruthError(GroundTruthErrorKind::TypeMismatch, row, "connects a " +
                                                                          std::string(to_string(pred->type)) +
                                                                          " block to a " +
                                                                          std::string(to_string(cur->type)) + " block");
    }
  }
}

}  // namespace

GroundTruth parse_ground_truth(std::string_view csv, std::string sample) {
  return parse_impl(csv, std::move(sample), nullptr);
}

void validate_ground_truth(const GroundTruth& gt, const std::map<PostId, Post>& posts) {
  validate_impl(gt, posts, nullptr);
}

GroundTruth load_ground_truth(std::string_view csv, const std::map<PostId, Post>& posts, std::string sample) {
  RowMap rows;
  GroundTruth gt = parse_impl(csv, std::move(sample), &rows);
  validate_impl(gt, posts, &rows);
  return gt;
}

std::string write_ground_truth(const GroundTruth& gt) {
  std::string out = "postId,predVersion,predLocalId,curVersion,curLocalId,blockType,comment\n";
  for (const auto& [ref, label] : gt.labels) {
    out += std::to_string(ref.post_id) + ',';
    if (label.pred_local_id) {
      out += std::to_string(ref.version_index - 1) + ',' + std::to_string(*label.pred_local_id) + ',';
    } else {
      out += ",,";
    }
    out += std::to_string(ref.version_index) + ',' + std::to_string(ref.local_id) + ',' +
           std::string(to_string(label.type)) + ',' + csv_field(label.comment) + '\n';
  }
  return out;
}

// ---- confusion and MCC --------------------------------------------------

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) {
  tp += o.tp;
  fp += o.fp;
  tn += o.tn;
  fn += o.fn;
  n_pos += o.n_pos;
  return *this;
}

ConfusionCounts confusion(const std::set<Connection>& computed, const std::set<Connection>& truth, long n_pos,
                          BlockType type) {
  ConfusionCounts c;
  c.type = type;
  c.n_pos = n_pos;
  long both = 0;
  for (const auto& x : computed) both += truth.count(x) ? 1 : 0;
  c.tp = both;
  c.fp = static_cast<long>(computed.size()) - both;
  c.fn = static_cast<long>(truth.size()) - both;
  const long union_size = static_cast<long>(computed.size() + truth.size()) - both;
  c.tn = n_pos - union_size;
  if (c.tn < 0 || c.tp + c.fp + c.tn + c.fn != c.n_pos) {
    throw std::logic_error("confusion counts do not add up to nPos");
  }
  return c;
}

double mcc(const ConfusionCounts& c) {
  const double tp = static_cast<double>(c.tp);
  const double fp = static_cast<double>(c.fp);
  const double tn = static_cast<double>(c.tn);
  const double fn = static_cast<double>(c.fn);
  const double a = tp + fp, b = tp + fn, d = tn + fp, e = tn + fn;
  if (a == 0 || b == 0 || d == 0 || e == 0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(a * b * d * e);
}

// ---- evaluation ---------------------------------------------------------

Sample make_sample(std::string name, const std::map<PostId, Post>& corpus, GroundTruth truth) {
  validate_ground_truth(truth, corpus);
  Sample s;
  s.name = std::move(name);
  for (PostId id : truth.posts()) s.posts.emplace(id, corpus.at(id));
  truth.sample = s.name;
  s.truth = std::move(truth);
  return s;
}

Clock steady_clock_ms() {
  return [] {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
  };
}

ComputedConnections compute_connections(const Sample& sample, const PassingSimilarity& similarity) {
  ComputedConnections out;
  for (const auto& [id, post] : sample.posts) {
    for (std::size_t i = 1; i < post.versions.size(); ++i) {
      const auto& prev = post.versions[i - 1].blocks;
      const auto& cur = post.versions[i].blocks;
      const auto links = resolve_links(build_pair_matrix(prev, cur, similarity));
      for (std::size_t j = 0; j < cur.size(); ++j) {
        if (!links.pred_of[j]) continue;
        const Connection c{id, post.versions[i].version_index, cur[j].local_id, prev[*links.pred_of[j]].local_id};
        (cur[j].type == BlockType::Text ? out.text : out.code).insert(c);
      }
    }
  }
  return out;
}

namespace {

struct TruthSets {
  std::set<Connection> text, code;
  long n_text = 0, n_code = 0;
};

TruthSets truth_sets(const Sample& s) {
  TruthSets t;
  for (const auto& [ref, label] : s.truth.labels) {
    if (!label.pred_local_id) continue;
    const Connection c{ref.post_id, ref.version_index, ref.local_id, *label.pred_local_id};
    (label.type == BlockType::Text ? t.text : t.code).insert(c);
  }
  for (const auto& [id, post] : s.posts) {
    for (std::size_t i = 1; i < post.versions.size(); ++i) {
      for (const auto& b : post.versions[i].blocks) (b.type == BlockType::Text ? t.n_text : t.n_code) += 1;
    }
  }
  return t;
}

EvaluationResult score_connections(const ComputedConnections& computed, const TruthSets& truth) {
  EvaluationResult r;
  r.text = confusion(computed.text, truth.text, truth.n_text, BlockType::Text);
  r.code = confusion(computed.code, truth.code, truth.n_code, BlockType::Code);
  r.mcc_text = mcc(r.text);
  r.mcc_code = mcc(r.code);
  return r;
}

}  // namespace

EvaluationResult evaluate_configuration(const Sample& sample, const MetricConfiguration& config, const Clock& clock) {
  validate(config);
  const auto similarity = config_similarity(config);
  const double start = clock();
  const auto computed = compute_connections(sample, similarity);
  const double elapsed = clock() - start;
  auto r = score_connections(computed, truth_sets(sample));
  r.config = config;
  r.runtime_ms = elapsed;
  return r;
}

// ---- sweep --------------------------------------------------------------

std::vector<double> threshold_grid(int steps) {
  if (steps < 1) throw SweepError("threshold grid needs at least one step");
  std::vector<double> out;
  for (int k = 0; k <= steps; ++k) out.push_back(static_cast<double>(k) / steps);
  return out;
}

std::vector<MetricConfiguration> stage_configurations(int stage, const SweepSelection& sel) {
  std::vector<MetricConfiguration> out;
  if (stage == 1 || stage == 2) {
    if (sel.metrics.empty()) throw SweepError("empty metric selection");
    const auto grid = threshold_grid(stage == 1 ? 10 : 100);
    for (const auto* m : sel.metrics) {
      for (double t : grid) out.push_back(MetricConfiguration::uniform(*m, t));
    }
    return out;
  }
  if (stage == 3) {
    if (sel.text.empty() || sel.code.empty() || sel.text_backup.empty() || sel.code_backup.empty()) {
      throw SweepError("stage 3 needs text, textBackup, code and codeBackup selections");
    }
    for (const auto& t : sel.text) {
      for (const auto& tb : sel.text_backup) {
        for (const auto& c : sel.code) {
          for (const auto& cb : sel.code_backup) {
            MetricConfiguration mc;
            mc.text = t;
            mc.code = c;
            mc.text_backup = tb;
            mc.code_backup = cb;
            out.push_back(mc);
          }
        }
      }
    }
    return out;
  }
  throw SweepError("unknown stage " + std::to_string(stage));
}

namespace {

// Raw scores of every same-type, non-equal block pair of a sample, for the
// metrics the sweep needs.
class ScoreCache {
 public:
  explicit ScoreCache(const Sample& sample) {
    std::size_t offset = 0;
    for (const auto& [id, post] : sample.posts) {
      post_index_.emplace(id, posts_.size());
      posts_.push_back(&post);
      std::vector<std::size_t> bases(post.versions.size(), 0);
      for (std::size_t i = 1; i < post.versions.size(); ++i) {
        bases[i] = offset;
        offset += post.versions[i - 1].blocks.size() * post.versions[i].blocks.size();
      }
      base_.push_back(std::move(bases));
    }
    slots_ = offset;
  }

  struct Entry {
    std::vector<metrics::Score> scores;
    double cost_ms[2] = {0, 0};
    bool ready[2] = {false, false};
  };

  void reserve(const metrics::MetricDescriptor* m, BlockType t) {
    auto& e = entries_[m];
    if (e.scores.empty()) e.scores.assign(slots_, std::nullopt);
    tasks_.emplace_back(m, t);
  }

  // Runs the reserved tasks; each writes a disjoint set of slots.
  void fill(unsigned parallelism, const Clock& clock) {
    std::sort(tasks_.begin(), tasks_.end());
    tasks_.erase(std::unique(tasks_.begin(), tasks_.end()), tasks_.end());
    std::vector<double> costs(tasks_.size(), 0);
    parallel_for(tasks_.size(), parallelism, [&](std::size_t k) {
      const auto [m, t] = tasks_[k];
      auto& scores = entries_.at(m).scores;
      const double start = clock();
      for (std::size_t p = 0; p < posts_.size(); ++p) {
        const auto& versions = posts_[p]->versions;
        for (std::size_t i = 1; i < versions.size(); ++i) {
          const auto& prev = versions[i - 1].blocks;
          const auto& cur = versions[i].blocks;
          std::vector<std::u32string> decoded_prev;
          decoded_prev.reserve(prev.size());
          for (const auto& b : prev) decoded_prev.push_back(b.type == t ? utf8_decode(b.content) : std::u32string());
          for (std::size_t j = 0; j < cur.size(); ++j) {
            if (cur[j].type != t) continue;
            const auto b = utf8_decode(cur[j].content);
            for (std::size_t l = 0; l < prev.size(); ++l) {
              if (prev[l].type != t || prev[l].content == cur[j].content) continue;
              scores[base_[p][i] + l * cur.size() + j] = metrics::score_decoded(*m, decoded_prev[l], b);
            }
          }
        }
      }
      costs[k] = clock() - start;
    });
    for (std::size_t k = 0; k < tasks_.size(); ++k) {
      auto& e = entries_.at(tasks_[k].first);
      const int ti = tasks_[k].second == BlockType::Text ? 0 : 1;
      e.cost_ms[ti] = costs[k];
      e.ready[ti] = true;
    }
    tasks_.clear();
  }

  double cost(const metrics::MetricDescriptor* m, BlockType t) const {
    auto it = entries_.find(m);
    return it == entries_.end() ? 0.0 : it->second.cost_ms[t == BlockType::Text ? 0 : 1];
  }

  metrics::Score lookup(const metrics::MetricDescriptor& m, const PostBlockVersion& prev,
                        const PostBlockVersion& cur) const {
    auto it = entries_.find(&m);
    if (it != entries_.end() && it->second.ready[cur.type == BlockType::Text ? 0 : 1]) {
      const auto p = post_index_.at(cur.post_id);
      const auto& versions = posts_[p]->versions;
      const auto i = static_cast<std::size_t>(cur.version_index - 1);
      const std::size_t cols = versions[i].blocks.size();
      return it->second.scores[base_[p][i] + static_cast<std::size_t>(prev.local_id - 1) * cols +
                               static_cast<std::size_t>(cur.local_id - 1)];
    }
    return metrics::score(m, prev.content, cur.content);
  }

 private:
  std::vector<const Post*> posts_;
  std::unordered_map<PostId, std::size_t> post_index_;
  std::vector<std::vector<std::size_t>> base_;
  std::size_t slots_ = 0;
  std::map<const metrics::MetricDescriptor*, Entry> entries_;
  std::vector<std::pair<const metrics::MetricDescriptor*, BlockType>> tasks_;
};

bool ranks_before(const EvaluationResult& a, const EvaluationResult& b) {
  const double sa = a.mcc_text + a.mcc_code;
  const double sb = b.mcc_text + b.mcc_code;
  if (sa != sb) return sa > sb;
  if (a.runtime_ms != b.runtime_ms) return a.runtime_ms < b.runtime_ms;
  return a.config_id < b.config_id;
}

}  // namespace

std::vector<SweepResult> sweep(const std::vector<MetricConfiguration>& configs, const std::vector<Sample>& samples,
                               const SweepOptions& options) {
  if (configs.empty()) throw SweepError("no configurations to evaluate");
  if (samples.empty()) throw SweepError("no samples to evaluate against");
  for (const auto& c : configs) validate(c);

  std::vector<std::unique_ptr<ScoreCache>> caches;
  std::vector<TruthSets> truths;
  for (const auto& s : samples) {
    auto cache = std::make_unique<ScoreCache>(s);
    for (const auto& c : configs) {
      cache->reserve(c.text.metric, BlockType::Text);
      cache->reserve(c.code.metric, BlockType::Code);
    }
    cache->fill(options.parallelism, options.clock);
    caches.push_back(std::move(cache));
    truths.push_back(truth_sets(s));
  }

  std::vector<SweepResult> results(configs.size());
  parallel_for(configs.size(), options.parallelism, [&](std::size_t k) {
    const auto& config = configs[k];
    SweepResult& out = results[k];
    out.config_id = k;
    out.config = config;
    out.pooled.config_id = k;
    out.pooled.config = config;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const ScoreCache& cache = *caches[s];
      const auto similarity = config_similarity(
          config, [&cache](const metrics::MetricDescriptor& m, const PostBlockVersion& prev,
                           const PostBlockVersion& cur) { return cache.lookup(m, prev, cur); });
      const double start = options.clock();
      const auto computed = compute_connections(samples[s], similarity);
      const double elapsed = options.clock() - start;
      auto r = score_connections(computed, truths[s]);
      r.config_id = k;
      r.config = config;
      r.runtime_ms =
          elapsed + cache.cost(config.text.metric, BlockType::Text) + cache.cost(config.code.metric, BlockType::Code);
      out.pooled.text += r.text;
      out.pooled.code += r.code;
      out.pooled.runtime_ms += r.runtime_ms;
      out.per_sample.push_back(std::move(r));
    }
    out.pooled.mcc_text = mcc(out.pooled.text);
    out.pooled.mcc_code = mcc(out.pooled.code);
  });

  std::stable_sort(results.begin(), results.end(),
                   [](const SweepResult& a, const SweepResult& b) { return ranks_before(a.pooled, b.pooled); });
  return results;
}

std::string results_header() {
  return "configName\tmccText\tmccCode\ttpT\tfpT\ttnT\tfnT\ttpC\tfpC\ttnC\tfnC\truntimeMs\n";
}

std::string result_row(const EvaluationResult& r) {
  return r.config.name() + '\t' + format_double(r.mcc_text, 6) + '\t' + format_double(r.mcc_code, 6) + '\t' +
         std::to_string(r.text.tp) + '\t' + std::to_string(r.text.fp) + '\t' + std::to_string(r.text.tn) + '\t' +
         std::to_string(r.text.fn) + '\t' + std::to_string(r.code.tp) + '\t' + std::to_string(r.code.fp) + '\t' +
         std::to_string(r.code.tn) + '\t' + std::to_string(r.code.fn) + '\t' + format_double(r.runtime_ms, 3) + '\n';
}

std::string write_results(const std::vector<SweepResult>& ranked) {
  std::string out = results_header();
  for (const auto& r : ranked) out += result_row(r.pooled);
  return out;
}

std::string write_sample_results(const std::vector<SweepResult>& ranked, std::size_t sample) {
  std::vector<const EvaluationResult*> rows;
  for (const auto& r : ranked) rows.push_back(&r.per_sample.at(sample));
  std::stable_sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return ranks_before(*a, *b); });
  std::string out = results_header();
  for (const auto* r : rows) out += result_row(*r);
  return out;
}

bool is_backup_candidate(const metrics::MetricDescriptor& d) {
  using metrics::Family;
  using metrics::Unit;
  if (d.min_input_length != 1) return false;
  return d.family == Family::Edit || (d.unit == Unit::Token && d.family != Family::Fingerprint);
}

std::vector<const metrics::MetricDescriptor*> quantile_filter(const std::vector<SweepResult>& results, double q,
                                                               FilterScope scope) {
  if (results.empty()) throw SweepError("quantile_filter needs results");
  std::vector<const SweepResult*> in_scope;
  for (const auto& r : results) {
    if (scope == FilterScope::BackupCandidates &&
        !(is_backup_candidate(*r.config.text.metric) && is_backup_candidate(*r.config.code.metric))) {
      continue;
    }
    in_scope.push_back(&r);
  }
  if (in_scope.empty()) return {};
  std::sort(in_scope.begin(), in_scope.end(), [](auto* a, auto* b) { return a->config_id < b->config_id; });
  const std::size_t n_samples = in_scope.front()->per_sample.size();

  std::vector<double> cut_text(n_samples), cut_code(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    std::vector<double> t, c;
    for (const auto* r : in_scope) {
      t.push_back(r->per_sample.at(s).mcc_text);
      c.push_back(r->per_sample.at(s).mcc_code);
    }
    cut_text[s] = stats::quantile(std::move(t), q);
    cut_code[s] = stats::quantile(std::move(c), q);
  }

  std::vector<const metrics::MetricDescriptor*> selected;
  auto add = [&](const metrics::MetricDescriptor* m) {
    if (std::find(selected.begin(), selected.end(), m) == selected.end()) selected.push_back(m);
  };
  for (const auto* r : in_scope) {
    bool text_ok = true, code_ok = true;
    for (std::size_t s = 0; s < n_samples; ++s) {
      text_ok = text_ok && r->per_sample[s].mcc_text >= cut_text[s];
      code_ok = code_ok && r->per_sample[s].mcc_code >= cut_code[s];
    }
    if (text_ok) add(r->config.text.metric);
    if (code_ok) add(r->config.code.metric);
  }
  return selected;
}

}  // namespace posthist
