#include "posthist/diff.hpp"

#include <algorithm>
#include <stdexcept>

namespace posthist {

std::string_view to_string(DiffOp op) {
  switch (op) {
    case DiffOp::Keep: return "keep";
    case DiffOp::Insert: return "insert";
    case DiffOp::Delete: return "delete";
  }
  return "";
}

std::vector<LineEdit> diff_lines(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  const int max = n + m;
  const int offset = max + 1;
  std::vector<int> v(static_cast<std::size_t>(2 * max + 3), 0);
  std::vector<std::vector<int>> trace;

  int final_d = 0;
  bool done = false;
  for (int d = 0; d <= max && !done; ++d) {
    trace.push_back(v);
    for (int k = -d; k <= d; k += 2) {
      int x;
      if (k == -d || (k != d && v[offset + k - 1] < v[offset + k + 1])) {
        x = v[offset + k + 1];  // down: insertion
      } else {
        x = v[offset + k - 1] + 1;  // right: deletion
      }
      int y = x - k;
      while (x < n && y < m && a[x] == b[y]) {
        ++x;
        ++y;
      }
      v[offset + k] = x;
      if (x >= n && y >= m) {
        final_d = d;
        done = true;
        break;
      }
    }
  }

  // Backtrack from (n, m) through the saved frontiers.
  std::vector<LineEdit> reversed;
  int x = n;
  int y = m;
  for (int d = final_d; d > 0; --d) {
    const auto& vd = trace[static_cast<std::size_t>(d)];
    const int k = x - y;
    int prev_k;
    if (k == -d || (k != d && vd[offset + k - 1] < vd[offset + k + 1])) {
      prev_k = k + 1;
    } else {
      prev_k = k - 1;
    }
    const int prev_x = vd[offset + prev_k];
    const int prev_y = prev_x - prev_k;
    while (x > prev_x && y > prev_y) {
      reversed.push_back({DiffOp::Keep, a[static_cast<std::size_t>(x - 1)]});
      --x;
      --y;
    }
    if (x == prev_x) {
      reversed.push_back({DiffOp::Insert, b[static_cast<std::size_t>(y - 1)]});
      --y;
    } else {
      reversed.push_back({DiffOp::Delete, a[static_cast<std::size_t>(x - 1)]});
      --x;
    }
  }
  while (x > 0 && y > 0) {
    reversed.push_back({DiffOp::Keep, a[static_cast<std::size_t>(x - 1)]});
    --x;
    --y;
  }
  std::reverse(reversed.begin(), reversed.end());

  // Within each run of changes, emit deletions before insertions.
  std::vector<LineEdit> ops;
  ops.reserve(reversed.size());
  std::size_t i = 0;
  while (i < reversed.size()) {
    if (reversed[i].op == DiffOp::Keep) {
      ops.push_back(std::move(reversed[i++]));
      continue;
    }
    std::size_t j = i;
    while (j < reversed.size() && reversed[j].op != DiffOp::Keep) ++j;
    for (std::size_t k = i; k < j; ++k) {
      if (reversed[k].op == DiffOp::Delete) ops.push_back(reversed[k]);
    }
    for (std::size_t k = i; k < j; ++k) {
      if (reversed[k].op == DiffOp::Insert) ops.push_back(reversed[k]);
    }
    i = j;
  }
  return ops;
}

std::vector<LineEdit> line_diff(std::string_view pred, std::string_view succ) {
  return diff_lines(split_lines(pred), split_lines(succ));
}

std::vector<std::string> apply_diff(const std::vector<LineEdit>& ops, const std::vector<std::string>& pred) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (const auto& e : ops) {
    switch (e.op) {
      case DiffOp::Keep:
      case DiffOp::Delete:
        if (pos >= pred.size() || pred[pos] != e.line) {
          throw std::invalid_argument("diff does not apply at line " + std::to_string(pos + 1));
        }
        if (e.op == DiffOp::Keep) out.push_back(pred[pos]);
        ++pos;
        break;
      case DiffOp::Insert:
        out.push_back(e.line);
        break;
    }
  }
  if (pos != pred.size()) throw std::invalid_argument("diff leaves predecessor lines unconsumed");
  return out;
}

DiffStats diff_stats(const std::vector<LineEdit>& ops) {
  DiffStats s;
  for (const auto& e : ops) {
    if (e.op == DiffOp::Insert) ++s.added;
    if (e.op == DiffOp::Delete) ++s.deleted;
  }
  return s;
}

}  // namespace posthist
