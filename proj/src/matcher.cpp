#include "posthist/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "posthist/text.hpp"

namespace posthist {

namespace {

std::string format_threshold(double t) {
  std::string s = format_double(t, 2);
  return s;
}

ThresholdedMetric parse_thresholded(std::string_view spec) {
  const auto at = spec.rfind('@');
  if (at == std::string_view::npos) {
    throw ConfigurationError("expected metric@threshold, got '" + std::string(spec) + "'");
  }
  const std::string name(trim(spec.substr(0, at)));
  const std::string thr(trim(spec.substr(at + 1)));
  ThresholdedMetric tm;
  try {
    tm.metric = &metrics::resolve(name);
  } catch (const metrics::UnknownMetric& e) {
    throw ConfigurationError(e.what());
  }
  try {
    std::size_t used = 0;
    tm.threshold = std::stod(thr, &used);
    if (used != thr.size()) throw std::invalid_argument(thr);
  } catch (const std::exception&) {
    throw ConfigurationError("bad threshold '" + thr + "'");
  }
  return tm;
}

}  // namespace

std::string ThresholdedMetric::name() const {
  return (metric ? metric->name : std::string("?")) + "@" + format_threshold(threshold);
}

MetricConfiguration MetricConfiguration::uniform(const metrics::MetricDescriptor& metric, double threshold) {
  MetricConfiguration c;
  c.text = {&metric, threshold};
  c.code = {&metric, threshold};
  return c;
}

std::string MetricConfiguration::name() const {
  if (text == code && !text_backup && !code_backup) return text.name();
  std::string s = "text=" + text.name() + ";code=" + code.name();
  if (text_backup) s += ";textBackup=" + text_backup->name();
  if (code_backup) s += ";codeBackup=" + code_backup->name();
  return s;
}

void validate(const MetricConfiguration& config) {
  auto check = [](const ThresholdedMetric& m, const char* role, bool backup) {
    if (m.metric == nullptr) throw ConfigurationError(std::string(role) + " metric missing");
    if (!(m.threshold >= 0.0 && m.threshold <= 1.0)) {
      throw ConfigurationError(std::string(role) + " threshold outside [0,1]");
    }
    if (backup && m.metric->min_input_length != 1) {
      throw ConfigurationError(std::string(role) + " metric " + m.metric->name +
                               " cannot accept all nonempty strings");
    }
  };
  check(config.text, "text", false);
  check(config.code, "code", false);
  if (config.text_backup) check(*config.text_backup, "textBackup", true);
  if (config.code_backup) check(*config.code_backup, "codeBackup", true);
}

std::vector<std::string> preset_names() { return {"paper-final", "equal"}; }

MetricConfiguration preset(std::string_view name) {
  if (name == "paper-final") {
    MetricConfiguration c;
    c.text = {&metrics::resolve("manhattanFourGramNormalized"), 0.17};
    c.code = {&metrics::resolve("winnowingFourGramDiceNormalized"), 0.23};
    c.text_backup = ThresholdedMetric{&metrics::resolve("cosineTokenNormalizedTermFrequency"), 0.36};
    c.code_backup = ThresholdedMetric{&metrics::resolve("cosineTokenNormalizedTermFrequency"), 0.26};
    return c;
  }
  if (name == "equal") {
    return MetricConfiguration::uniform(metrics::resolve("equal"), 1.0);
  }
  throw ConfigurationError("unknown preset '" + std::string(name) + "'");
}

MetricConfiguration parse_configuration(std::string_view spec) {
  spec = trim(spec);
  for (const auto& p : preset_names()) {
    if (spec == p) return preset(p);
  }
  MetricConfiguration c;
  if (spec.find('=') == std::string_view::npos) {
    const auto tm = parse_thresholded(spec);
    c.text = tm;
    c.code = tm;
    validate(c);
    return c;
  }
  bool has_text = false, has_code = false;
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto end = spec.find(';', start);
    if (end == std::string_view::npos) end = spec.size();
    const auto part = trim(spec.substr(start, end - start));
    start = end + 1;
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ConfigurationError("expected role=metric@threshold");
    const auto role = trim(part.substr(0, eq));
    const auto tm = parse_thresholded(part.substr(eq + 1));
    if (role == "text") {
      c.text = tm;
      has_text = true;
    } else if (role == "code") {
      c.code = tm;
      has_code = true;
    } else if (role == "textBackup") {
      c.text_backup = tm;
    } else if (role == "codeBackup") {
      c.code_backup = tm;
    } else {
      throw ConfigurationError("unknown role '" + std::string(role) + "'");
    }
  }
  if (!has_text || !has_code) throw ConfigurationError("configuration needs both text and code metrics");
  validate(c);
  return c;
}

PassingSimilarity config_similarity(const MetricConfiguration& config, RawScore raw) {
  return [config, raw = std::move(raw)](const PostBlockVersion& prev,
                                        const PostBlockVersion& cur) -> std::optional<double> {
    const auto& primary = config.primary(cur.type);
    auto s = raw(*primary.metric, prev, cur);
    double threshold = primary.threshold;
    if (!s) {
      const auto& backup = config.backup(cur.type);
      if (!backup) return std::nullopt;
      s = raw(*backup->metric, prev, cur);
      threshold = backup->threshold;
      if (!s) return std::nullopt;
    }
    if (*s >= threshold) return *s;
    return std::nullopt;
  };
}

PassingSimilarity config_similarity(const MetricConfiguration& config) {
  return config_similarity(config, [](const metrics::MetricDescriptor& d, const PostBlockVersion& prev,
                                      const PostBlockVersion& cur) { return metrics::score(d, prev.content, cur.content); });
}

PairMatrix build_pair_matrix(const std::vector<PostBlockVersion>& prev, const std::vector<PostBlockVersion>& cur,
                             const PassingSimilarity& similarity) {
  PairMatrix m(prev.size(), cur.size());
  for (std::size_t l = 0; l < prev.size(); ++l) {
    for (std::size_t j = 0; j < cur.size(); ++j) {
      auto& r = m.at(l, j);
      if (prev[l].type != cur[j].type) continue;
      r.same_type = true;
      if (prev[l].content == cur[j].content) {
        r.equal = true;
        continue;
      }
      r.similarity = similarity(prev[l], cur[j]);
    }
  }
  return m;
}

namespace {

// Possible predecessors of column j (or successors of row l when transposed).
struct Candidates {
  std::vector<std::size_t> equal;
  std::vector<std::size_t> similar;
  double max_sim = 0.0;
  const std::vector<std::size_t>& effective() const { return equal.empty() ? similar : equal; }
};

Candidates column_candidates(const PairMatrix& m, std::size_t j) {
  Candidates c;
  bool any = false;
  for (std::size_t l = 0; l < m.rows(); ++l) {
    const auto& r = m.at(l, j);
    if (!r.same_type) continue;
    if (r.equal) c.equal.push_back(l);
    if (r.similarity) {
      c.max_sim = any ? std::max(c.max_sim, *r.similarity) : *r.similarity;
      any = true;
    }
  }
  if (any) {
    for (std::size_t l = 0; l < m.rows(); ++l) {
      const auto& r = m.at(l, j);
      if (r.same_type && r.similarity && *r.similarity >= c.max_sim) c.similar.push_back(l);
    }
  }
  return c;
}

Candidates row_candidates(const PairMatrix& m, std::size_t l) {
  Candidates c;
  bool any = false;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto& r = m.at(l, j);
    if (!r.same_type) continue;
    if (r.equal) c.equal.push_back(j);
    if (r.similarity) {
      c.max_sim = any ? std::max(c.max_sim, *r.similarity) : *r.similarity;
      any = true;
    }
  }
  if (any) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& r = m.at(l, j);
      if (r.same_type && r.similarity && *r.similarity >= c.max_sim) c.similar.push_back(j);
    }
  }
  return c;
}

std::vector<std::size_t> available(const std::vector<std::size_t>& candidates, const std::vector<bool>& claimed) {
  std::vector<std::size_t> out;
  for (auto l : candidates) {
    if (!claimed[l]) out.push_back(l);
  }
  return out;
}

}  // namespace

CandidateSet candidates_from_matrix(const PairMatrix& m, const std::vector<PostBlockVersion>& prev, std::size_t cur) {
  const auto c = column_candidates(m, cur);
  CandidateSet out;
  for (auto l : c.equal) out.pred_equal.push_back(prev[l].local_id);
  for (auto l : c.similar) out.pred_sim.push_back(prev[l].local_id);
  out.max_sim = c.max_sim;
  out.pred = out.pred_equal.empty() ? out.pred_sim : out.pred_equal;
  return out;
}

CandidateSet compute_candidates(const std::vector<PostBlockVersion>& prev, const PostBlockVersion& block,
                                const MetricConfiguration& config) {
  const PairMatrix m = build_pair_matrix(prev, {block}, config_similarity(config));
  return candidates_from_matrix(m, prev, 0);
}

bool set_pred_context(const std::vector<std::vector<std::size_t>>& pred_sets,
                      std::vector<std::optional<std::size_t>>& pred_of, std::vector<bool>& claimed,
                      ContextDirection direction) {
  bool any = false;
  const std::size_t n = pred_of.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (pred_of[j]) continue;
    const auto avail = available(pred_sets[j], claimed);
    if (avail.empty()) continue;
    const bool use_above = direction != ContextDirection::Below;
    const bool use_below = direction != ContextDirection::Above;
    std::optional<std::size_t> above_pred, below_pred;
    if (use_above) {
      if (j == 0 || !pred_of[j - 1]) continue;
      above_pred = pred_of[j - 1];
    }
    if (use_below) {
      if (j + 1 >= n || !pred_of[j + 1]) continue;
      below_pred = pred_of[j + 1];
    }
    for (auto l : avail) {
      if (above_pred && !(l >= 1 && l - 1 == *above_pred)) continue;
      if (below_pred && l + 1 != *below_pred) continue;
      pred_of[j] = l;
      claimed[l] = true;
      any = true;
      break;
    }
  }
  return any;
}

void set_pred_position(const std::vector<std::vector<std::size_t>>& pred_sets,
                       std::vector<std::optional<std::size_t>>& pred_of, std::vector<bool>& claimed) {
  for (std::size_t j = 0; j < pred_of.size(); ++j) {
    if (pred_of[j]) continue;
    std::optional<std::size_t> best;
    std::size_t best_delta = 0;
    for (auto l : pred_sets[j]) {
      if (claimed[l]) continue;
      const std::size_t delta = l > j ? l - j : j - l;
      if (!best || delta < best_delta || (delta == best_delta && l < *best)) {
        best = l;
        best_delta = delta;
      }
    }
    if (best) {
      pred_of[j] = best;
      claimed[*best] = true;
    }
  }
}

VersionPairLinks resolve_links(const PairMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  VersionPairLinks out;
  out.pred_of.assign(cols, std::nullopt);
  out.pred_count.assign(cols, 0);
  out.succ_count.assign(rows, 0);
  out.similarity.assign(cols, std::nullopt);

  std::vector<std::vector<std::size_t>> pred_sets(cols);
  std::vector<std::vector<std::size_t>> succ_sets(rows);
  for (std::size_t j = 0; j < cols; ++j) {
    pred_sets[j] = column_candidates(m, j).effective();
    out.pred_count[j] = static_cast<int>(pred_sets[j].size());
  }
  for (std::size_t l = 0; l < rows; ++l) {
    succ_sets[l] = row_candidates(m, l).effective();
    out.succ_count[l] = static_cast<int>(succ_sets[l].size());
  }

  std::vector<bool> claimed(rows, false);
  // Unique candidates whose only possible successor is this block.
  for (std::size_t j = 0; j < cols; ++j) {
    if (pred_sets[j].size() != 1) continue;
    const std::size_t l = pred_sets[j].front();
    if (claimed[l]) continue;
    if (succ_sets[l].size() == 1 && succ_sets[l].front() == j) {
      out.pred_of[j] = l;
      claimed[l] = true;
    }
  }
  for (auto dir : {ContextDirection::Both, ContextDirection::Below, ContextDirection::Above}) {
    while (set_pred_context(pred_sets, out.pred_of, claimed, dir)) {
    }
  }
  set_pred_position(pred_sets, out.pred_of, claimed);

  for (std::size_t j = 0; j < cols; ++j) {
    if (!out.pred_of[j]) continue;
    const auto& r = m.at(*out.pred_of[j], j);
    out.similarity[j] = r.equal ? MatchedSimilarity::equal_match() : MatchedSimilarity::score(r.similarity.value_or(0.0));
  }
  return out;
}

void match_versions(Post& post, const PassingSimilarity& similarity) {
  auto& versions = post.versions;
  for (auto& v : versions) {
    for (auto& b : v.blocks) {
      b.predecessor_block_id.reset();
      b.predecessor_local_id.reset();
      b.root_block_id = b.block_id;
      b.pred_count = 0;
      b.succ_count = 0;
      b.matched_similarity.reset();
    }
  }
  for (std::size_t i = 1; i < versions.size(); ++i) {
    auto& prev = versions[i - 1].blocks;
    auto& cur = versions[i].blocks;
    const PairMatrix m = build_pair_matrix(prev, cur, similarity);
    const VersionPairLinks links = resolve_links(m);
    for (std::size_t l = 0; l < prev.size(); ++l) prev[l].succ_count = links.succ_count[l];
    for (std::size_t j = 0; j < cur.size(); ++j) {
      auto& b = cur[j];
      b.pred_count = links.pred_count[j];
      if (const auto l = links.pred_of[j]) {
        b.predecessor_block_id = prev[*l].block_id;
        b.predecessor_local_id = prev[*l].local_id;
        b.root_block_id = prev[*l].root_block_id;
        b.matched_similarity = links.similarity[j];
      }
    }
  }
}

void match_versions(Post& post, const MetricConfiguration& config) {
  match_versions(post, config_similarity(config));
}

std::vector<PostBlockLifespan> build_lifespans(const Post& post) {
  std::vector<PostBlockLifespan> spans;
  std::map<BlockId, std::size_t> by_root;
  for (const auto& v : post.versions) {
    for (const auto& b : v.blocks) {
      auto it = by_root.find(b.root_block_id);
      if (it == by_root.end()) {
        it = by_root.emplace(b.root_block_id, spans.size()).first;
        spans.push_back({post.id, b.root_block_id, b.type, {}});
      }
      spans[it->second].members.push_back({b.block_id, b.version_index, b.local_id});
    }
  }
  return spans;
}

}  // namespace posthist
