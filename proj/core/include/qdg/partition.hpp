#pragma once

#include <string>
#include <vector>

namespace qdg {

// Weakly decreasing positive parts.
using Partition = std::vector<int>;

void validate_partition(const Partition& p);
int partition_size(const Partition& p);
Partition conjugate(const Partition& p);

// All partitions of n in reverse lexicographic order ((n) first).
std::vector<Partition> partitions(int n);

std::string to_string(const Partition& p);
// "2,1" or "(2,1)".
Partition parse_partition(const std::string& text);

// Partitions whose sizes form a partition of n. Tuples that differ only by the order
// of equal-size members are identified.
using NestedPartition = std::vector<Partition>;

void validate_nested(const NestedPartition& m);
std::vector<NestedPartition> nested_partitions(int n);
// Sizes |mu^1| >= |mu^2| >= ...
Partition nested_shape(const NestedPartition& m);
std::string to_string(const NestedPartition& m);
// "2;1,1" or "((2),(1,1))".
NestedPartition parse_nested(const std::string& text);

}  // namespace qdg
