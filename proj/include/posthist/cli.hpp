#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "posthist/model.hpp"

namespace posthist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the posthist tool. Usage problems return 2, data problems 1.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// A reconstruct output directory (PostVersion.tsv + PostBlockVersion.tsv) or a
// raw post-history TSV, which is blockified on load. Raw input is not matched.
std::map<PostId, Post> load_corpus(const std::string& path, unsigned parallelism, bool* matched = nullptr);

}  // namespace posthist::cli
