#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "posthist/evaluate.hpp"
#include "posthist/model.hpp"

namespace posthist {

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// Annotation API over a blockified corpus. The corpus is never modified;
// annotations live in one ground-truth CSV that is rewritten atomically after
// every accepted PUT. Each post carries a version token that a PUT must echo;
// a stale token is rejected with 409.
class AnnotationService {
 public:
  // Loads existing annotations from gt_path when the file exists.
  AnnotationService(std::map<PostId, Post> corpus, std::string gt_path, std::string sample = "annotations");

  HttpResponse list_posts() const;
  HttpResponse get_version_pair(PostId post, int version) const;
  HttpResponse put_connections(PostId post, std::string_view body);
  HttpResponse export_csv() const;
  HttpResponse diff(std::string_view pred_block, std::string_view succ_block) const;

  GroundTruth snapshot() const;

  // Blocks with equal content and type that occur exactly once in each of
  // the two versions, as (predLocalId, curLocalId).
  static std::vector<std::pair<int, int>> auto_connections(const PostVersion& prev, const PostVersion& cur);

 private:
  std::string token_of(PostId post) const;

  std::map<PostId, Post> corpus_;
  std::unordered_map<BlockId, const PostBlockVersion*> blocks_;
  std::string gt_path_;
  mutable std::shared_mutex mutex_;
  GroundTruth truth_;
  std::map<PostId, long> revisions_;
};

// HTTP front end. Routes:
//   GET /posts, GET /posts/{id}/versions/{i}, PUT /posts/{id}/connections,
//   GET /export, GET /diff?pred=&succ=
class HttpServer {
 public:
  explicit HttpServer(AnnotationService& service);
  ~HttpServer();

  // Port 0 picks a free port. Returns the bound port; throws on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called from another thread.
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace posthist
