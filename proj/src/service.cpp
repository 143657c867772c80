#include "posthist/service.hpp"

#include <filesystem>
#include <mutex>

#include <httplib.h>
#include <json.hpp>

#include "posthist/diff.hpp"
#include "posthist/log.hpp"

namespace posthist {

using nlohmann::json;

namespace {

HttpResponse json_response(int status, const json& j) { return {status, "application/json", j.dump()}; }

HttpResponse error(int status, const std::string& message) { return json_response(status, {{"error", message}}); }

json block_json(const PostBlockVersion& b) {
  return {{"localId", b.local_id}, {"blockId", b.block_id}, {"type", to_string(b.type)}, {"content", b.content}};
}

json version_json(const PostVersion& v) {
  json blocks = json::array();
  for (const auto& b : v.blocks) blocks.push_back(block_json(b));
  return {{"version", v.version_index},
          {"creationDate", format_iso8601(v.creation_date)},
          {"blocks", std::move(blocks)}};
}

}  // namespace

AnnotationService::AnnotationService(std::map<PostId, Post> corpus, std::string gt_path, std::string sample)
    : corpus_(std::move(corpus)), gt_path_(std::move(gt_path)) {
  for (const auto& [id, post] : corpus_) {
    for (const auto& v : post.versions) {
      for (const auto& b : v.blocks) blocks_.emplace(b.block_id, &b);
    }
  }
  truth_.sample = sample;
  if (!gt_path_.empty() && std::filesystem::exists(gt_path_)) {
    truth_ = load_ground_truth(read_file(gt_path_), corpus_, sample);
  }
}

std::string AnnotationService::token_of(PostId post) const {
  auto it = revisions_.find(post);
  return std::to_string(post) + "-" + std::to_string(it == revisions_.end() ? 0 : it->second);
}

GroundTruth AnnotationService::snapshot() const {
  std::shared_lock lock(mutex_);
  return truth_;
}

std::vector<std::pair<int, int>> AnnotationService::auto_connections(const PostVersion& prev, const PostVersion& cur) {
  auto occurrences = [](const PostVersion& v, const PostBlockVersion& x) {
    return std::count_if(v.blocks.begin(), v.blocks.end(), [&](const PostBlockVersion& b) {
      return b.type == x.type && b.content == x.content;
    });
  };
  std::vector<std::pair<int, int>> out;
  for (const auto& c : cur.blocks) {
    if (occurrences(cur, c) != 1 || occurrences(prev, c) != 1) continue;
    for (const auto& p : prev.blocks) {
      if (p.type == c.type && p.content == c.content) out.emplace_back(p.local_id, c.local_id);
    }
  }
  return out;
}

HttpResponse AnnotationService::list_posts() const {
  json posts = json::array();
  for (const auto& [id, post] : corpus_) posts.push_back({{"id", id}, {"versions", post.versions.size()}});
  return json_response(200, {{"posts", std::move(posts)}});
}

HttpResponse AnnotationService::get_version_pair(PostId post_id, int version) const {
  auto it = corpus_.find(post_id);
  if (it == corpus_.end()) return error(404, "unknown post " + std::to_string(post_id));
  const auto& post = it->second;
  if (version < 2 || static_cast<std::size_t>(version) > post.versions.size()) {
    return error(404, "post " + std::to_string(post_id) + " has no version pair ending at " + std::to_string(version));
  }
  const auto& prev = post.versions[static_cast<std::size_t>(version - 2)];
  const auto& cur = post.versions[static_cast<std::size_t>(version - 1)];

  json autos = json::array();
  for (const auto& [l, j] : auto_connections(prev, cur)) autos.push_back({{"predLocalId", l}, {"curLocalId", j}});

  std::shared_lock lock(mutex_);
  json connections = json::array();
  for (const auto& [ref, label] : truth_.labels) {
    if (ref.post_id != post_id || ref.version_index != version) continue;
    connections.push_back({{"predLocalId", label.pred_local_id ? json(*label.pred_local_id) : json(nullptr)},
                           {"curLocalId", ref.local_id},
                           {"comment", label.comment}});
  }
  return json_response(200, {{"postId", post_id},
                             {"version", version},
                             {"versionCount", post.versions.size()},
                             {"token", token_of(post_id)},
                             {"pred", version_json(prev)},
                             {"cur", version_json(cur)},
                             {"autoConnected", std::move(autos)},
                             {"connections", std::move(connections)}});
}

HttpResponse AnnotationService::put_connections(PostId post_id, std::string_view body) {
  auto it = corpus_.find(post_id);
  if (it == corpus_.end()) return error(404, "unknown post " + std::to_string(post_id));
  const auto& post = it->second;

  json req;
  try {
    req = json::parse(body);
  } catch (const json::parse_error& e) {
    return error(400, std::string("invalid JSON: ") + e.what());
  }
  if (!req.is_object() || !req.contains("version") || !req["version"].is_number_integer() ||
      !req.contains("connections") || !req["connections"].is_array() || !req.contains("token") ||
      !req["token"].is_string()) {
    return error(400, "expected {token, version, connections[]}");
  }
  const int version = req["version"].get<int>();
  if (version < 2 || static_cast<std::size_t>(version) > post.versions.size()) {
    return error(404, "post " + std::to_string(post_id) + " has no version pair ending at " + std::to_string(version));
  }
  const auto& prev = post.versions[static_cast<std::size_t>(version - 2)].blocks;
  const auto& cur = post.versions[static_cast<std::size_t>(version - 1)].blocks;

  std::map<BlockRef, GroundTruthLabel> labels;
  std::set<int> used_preds;
  for (const auto& c : req["connections"]) {
    if (!c.is_object() || !c.contains("curLocalId") || !c["curLocalId"].is_number_integer()) {
      return error(400, "connection needs an integer curLocalId");
    }
    const int j = c["curLocalId"].get<int>();
    if (j < 1 || static_cast<std::size_t>(j) > cur.size()) return error(400, "no block " + std::to_string(j) + " in version " + std::to_string(version));
    GroundTruthLabel label;
    label.type = cur[static_cast<std::size_t>(j - 1)].type;
    if (c.contains("comment")) {
      if (!c["comment"].is_string()) return error(400, "comment must be a string");
      label.comment = c["comment"].get<std::string>();
    }
    if (c.contains("predLocalId") && !c["predLocalId"].is_null()) {
      if (!c["predLocalId"].is_number_integer()) return error(400, "predLocalId must be an integer or null");
      const int l = c["predLocalId"].get<int>();
      if (l < 1 || static_cast<std::size_t>(l) > prev.size()) {
        return error(400, "no block " + std::to_string(l) + " in version " + std::to_string(version - 1));
      }
      if (prev[static_cast<std::size_t>(l - 1)].type != label.type) {
        return error(409, "block " + std::to_string(j) + " and predecessor " + std::to_string(l) + " differ in type");
      }
      if (!used_preds.insert(l).second) return error(409, "predecessor " + std::to_string(l) + " connected twice");
      label.pred_local_id = l;
    }
    if (!labels.emplace(BlockRef{post_id, version, j}, std::move(label)).second) {
      return error(409, "block " + std::to_string(j) + " connected twice");
    }
  }

  std::unique_lock lock(mutex_);
  if (req["token"].get<std::string>() != token_of(post_id)) {
    return error(409, "stale token; reload the version pair");
  }
  GroundTruth next = truth_;
  for (auto i = next.labels.begin(); i != next.labels.end();) {
    if (i->first.post_id == post_id && i->first.version_index == version) {
      i = next.labels.erase(i);
    } else {
      ++i;
    }
  }
  next.labels.insert(labels.begin(), labels.end());
  if (!gt_path_.empty()) {
    try {
      write_file_atomic(gt_path_, write_ground_truth(next));
    } catch (const std::exception& e) {
      return error(500, std::string("cannot save annotations: ") + e.what());
    }
  }
  truth_ = std::move(next);
  ++revisions_[post_id];
  return json_response(200, {{"token", token_of(post_id)}, {"saved", labels.size()}});
}

HttpResponse AnnotationService::export_csv() const {
  std::shared_lock lock(mutex_);
  return {200, "text/csv", write_ground_truth(truth_)};
}

HttpResponse AnnotationService::diff(std::string_view pred_block, std::string_view succ_block) const {
  const auto p = parse_int(pred_block);
  const auto s = parse_int(succ_block);
  if (!p || !s) return error(400, "pred and succ must be block ids");
  auto pi = blocks_.find(*p);
  auto si = blocks_.find(*s);
  if (pi == blocks_.end() || si == blocks_.end()) return error(404, "unknown block id");
  json ops = json::array();
  for (const auto& e : line_diff(pi->second->content, si->second->content)) {
    ops.push_back({{"op", to_string(e.op)}, {"line", e.line}});
  }
  return json_response(200, {{"pred", *p}, {"succ", *s}, {"ops", std::move(ops)}});
}

namespace {

void reply(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_content(r.body, r.content_type);
}

}  // namespace

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(AnnotationService& service) : impl_(std::make_unique<Impl>()) {
  auto& server = impl_->server;
  server.Get("/posts", [&service](const httplib::Request&, httplib::Response& res) { reply(res, service.list_posts()); });
  server.Get(R"(/posts/(\d+)/versions/(\d+))", [&service](const httplib::Request& req, httplib::Response& res) {
    const auto post = parse_int(req.matches[1].str());
    const auto version = parse_int(req.matches[2].str());
    if (!post || !version || *version > 1'000'000) return reply(res, error(404, "unknown post or version"));
    reply(res, service.get_version_pair(*post, static_cast<int>(*version)));
  });
  server.Put(R"(/posts/(\d+)/connections)", [&service](const httplib::Request& req, httplib::Response& res) {
    const auto post = parse_int(req.matches[1].str());
    if (!post) return reply(res, error(404, "unknown post"));
    reply(res, service.put_connections(*post, req.body));
  });
  server.Get("/export", [&service](const httplib::Request&, httplib::Response& res) { reply(res, service.export_csv()); });
  server.Get("/diff", [&service](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.diff(req.get_param_value("pred"), req.get_param_value("succ")));
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  log::info("serving on " + host + ":" + std::to_string(bound));
  return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace posthist
