#pragma once

#include <string>
#include <vector>

namespace mcm {

// Weakly decreasing list of positive integers; {} is the empty partition.
using Partition = std::vector<int>;

bool is_valid_partition(const Partition& lam);
int weight(const Partition& lam);
int part_at(const Partition& lam, int i);  // 1-based, 0 beyond the length
std::string partition_str(const Partition& lam);

// Canonical order: by weight, then lexicographically decreasing part lists
// ((2) before (1,1)). All enumerations below emit this order.
bool partition_less(const Partition& a, const Partition& b);

std::vector<Partition> partitions_of_weight(int w);
std::vector<Partition> enumerate_partitions(int max_weight);

// lam >- mu : lam_i >= mu_i >= lam_{i+1} (lam/mu is a horizontal strip).
bool interlaces(const Partition& lam, const Partition& mu);

// All mu with mu >- lam and |mu| - |lam| <= max_grow.
std::vector<Partition> interlacing_above(const Partition& lam, int max_grow);
// All mu with lam >- mu.
std::vector<Partition> interlacing_below(const Partition& lam);

Partition conjugate(const Partition& lam);
std::vector<int> hook_lengths(const Partition& lam);  // sorted descending
long n_stat(const Partition& lam);                    // sum (i-1)*lam_i

struct PlanePartition {
    std::vector<std::vector<int>> rows;  // row-major, no trailing zero rows/cols
};

bool is_valid_plane_partition(const PlanePartition& pi);
int volume(const PlanePartition& pi);
bool plane_partition_less(const PlanePartition& a, const PlanePartition& b);

// Diagonal slices pi(m) for m_min <= m <= m_min + slices.size() - 1; the
// family always covers every nonempty slice and includes pi(0).
struct SliceFamily {
    int m_min = 0;
    std::vector<Partition> slices;

    Partition at(int m) const;  // empty partition outside the stored range
    int m_max() const { return m_min + static_cast<int>(slices.size()) - 1; }
};

SliceFamily diagonal_slices(const PlanePartition& pi);

// Inverse of diagonal_slices; throws std::invalid_argument naming the first
// index where the interlacing chain ... < pi(-1) < pi(0) > pi(1) > ... fails.
PlanePartition from_slices(const SliceFamily& fam);

std::vector<PlanePartition> enumerate_plane_partitions(int max_volume);

}  // namespace mcm
