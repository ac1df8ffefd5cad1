#include "qdg/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "qdg/errors.hpp"

namespace qdg {

void validate_partition(const Partition& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) throw InputError("partition parts must be positive");
    if (i && p[i] > p[i - 1]) throw InputError("partition parts must be weakly decreasing");
  }
}

int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

Partition conjugate(const Partition& p) {
  validate_partition(p);
  Partition c;
  if (p.empty()) return c;
  for (int j = 1; j <= p.front(); ++j)
    c.push_back(static_cast<int>(std::count_if(p.begin(), p.end(), [j](int x) { return x >= j; })));
  return c;
}

std::vector<Partition> partitions(int n) {
  if (n < 0) throw InputError("partitions of a negative integer");
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int rest, int max_part) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rest, max_part); k >= 1; --k) {
      cur.push_back(k);
      rec(rest - k, k);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::string to_string(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

Partition parse_partition(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') t += c;
  Partition p;
  std::size_t pos = 0;
  while (pos < t.size()) {
    std::size_t comma = t.find(',', pos);
    std::string part = t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit))
      throw InputError("malformed partition '" + text + "'");
    p.push_back(std::stoi(part));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (p.empty()) throw InputError("empty partition");
  validate_partition(p);
  return p;
}

void validate_nested(const NestedPartition& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].empty()) throw InputError("nested partition has an empty member");
    validate_partition(m[i]);
    if (i && partition_size(m[i]) > partition_size(m[i - 1]))
      throw InputError("nested partition sizes must be weakly decreasing");
  }
}

std::vector<NestedPartition> nested_partitions(int n) {
  std::vector<NestedPartition> out;
  for (const auto& shape : partitions(n)) {
    // Group equal sizes; each group is a multiset of partitions of that size,
    // enumerated as non-increasing index sequences into partitions(size).
    std::vector<std::pair<int, int>> groups;
    for (int s : shape) {
      if (!groups.empty() && groups.back().first == s)
        ++groups.back().second;
      else
        groups.emplace_back(s, 1);
    }
    NestedPartition cur;
    std::function<void(std::size_t)> over_groups = [&](std::size_t g) {
      if (g == groups.size()) {
        out.push_back(cur);
        return;
      }
      auto [size, mult] = groups[g];
      auto ps = partitions(size);
      std::function<void(int, int)> pick = [&](int left, int max_index) {
        if (left == 0) {
          over_groups(g + 1);
          return;
        }
        for (int i = 0; i <= max_index; ++i) {
          cur.push_back(ps[i]);
          pick(left - 1, i);
          cur.pop_back();
        }
      };
      pick(mult, static_cast<int>(ps.size()) - 1);
    };
    over_groups(0);
  }
  return out;
}

Partition nested_shape(const NestedPartition& m) {
  Partition s;
  for (const auto& p : m) s.push_back(partition_size(p));
  std::sort(s.rbegin(), s.rend());
  return s;
}

std::string to_string(const NestedPartition& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + to_string(m[i]);
  return s + ")";
}

NestedPartition parse_nested(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  NestedPartition m;
  if (!t.empty() && t.front() == '(' && t.back() == ')' && t.find(';') == std::string::npos) {
    // "((2),(1,1))"
    std::string inner = t.substr(1, t.size() - 2);
    std::size_t pos = 0;
    while (pos < inner.size()) {
      if (inner[pos] == ',') {
        ++pos;
        continue;
      }
      if (inner[pos] != '(') throw InputError("malformed nested partition '" + text + "'");
      std::size_t close = inner.find(')', pos);
      if (close == std::string::npos) throw InputError("malformed nested partition '" + text + "'");
      m.push_back(parse_partition(inner.substr(pos, close - pos + 1)));
      pos = close + 1;
    }
  } else {
    std::size_t pos = 0;
    while (pos <= t.size()) {
      std::size_t semi = t.find(';', pos);
      m.push_back(parse_partition(t.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos)));
      if (semi == std::string::npos) break;
      pos = semi + 1;
    }
  }
  std::stable_sort(m.begin(), m.end(), [](const Partition& a, const Partition& b) {
    return partition_size(a) > partition_size(b);
  });
  validate_nested(m);
  return m;
}

}  // namespace qdg
