#include "mcm/partitions.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mcm {

bool is_valid_partition(const Partition& lam) {
    for (std::size_t i = 0; i < lam.size(); ++i) {
        if (lam[i] <= 0) return false;
        if (i > 0 && lam[i] > lam[i - 1]) return false;
    }
    return true;
}

int weight(const Partition& lam) {
    int w = 0;
    for (int x : lam) w += x;
    return w;
}

int part_at(const Partition& lam, int i) {
    if (i < 1 || static_cast<std::size_t>(i) > lam.size()) return 0;
    return lam[static_cast<std::size_t>(i - 1)];
}

std::string partition_str(const Partition& lam) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < lam.size(); ++i) os << (i ? "," : "") << lam[i];
    os << ")";
    return os.str();
}

bool partition_less(const Partition& a, const Partition& b) {
    int wa = weight(a), wb = weight(b);
    if (wa != wb) return wa < wb;
    // larger parts first within a weight class
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

void gen_partitions(int n, int max_part, Partition& cur, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int first = std::min(n, max_part); first >= 1; --first) {
        cur.push_back(first);
        gen_partitions(n - first, first, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of_weight(int w) {
    if (w < 0) throw std::invalid_argument("partitions_of_weight: negative weight");
    std::vector<Partition> out;
    Partition cur;
    gen_partitions(w, w, cur, out);
    return out;
}

std::vector<Partition> enumerate_partitions(int max_weight) {
    if (max_weight < 0) throw std::invalid_argument("enumerate_partitions: negative bound");
    std::vector<Partition> out;
    for (int w = 0; w <= max_weight; ++w) {
        auto block = partitions_of_weight(w);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

bool interlaces(const Partition& lam, const Partition& mu) {
    std::size_t n = std::max(lam.size(), mu.size()) + 1;
    for (std::size_t i = 1; i <= n; ++i) {
        int li = part_at(lam, static_cast<int>(i));
        int mi = part_at(mu, static_cast<int>(i));
        int li1 = part_at(lam, static_cast<int>(i + 1));
        if (!(li >= mi && mi >= li1)) return false;
    }
    return true;
}

namespace {

void gen_above(const Partition& lam, std::size_t i, int budget, Partition& cur,
               std::vector<Partition>& out) {
    // rows are 1-based; mu_i ranges over [lam_i, min(lam_{i-1}, lam_i + budget)]
    std::size_t maxlen = lam.size() + 1;
    if (i > maxlen) {
        Partition mu = cur;
        while (!mu.empty() && mu.back() == 0) mu.pop_back();
        out.push_back(mu);
        return;
    }
    int lo = part_at(lam, static_cast<int>(i));
    int hi = i == 1 ? lo + budget
                    : std::min(part_at(lam, static_cast<int>(i - 1)), lo + budget);
    for (int v = lo; v <= hi; ++v) {
        cur.push_back(v);
        gen_above(lam, i + 1, budget - (v - lo), cur, out);
        cur.pop_back();
    }
}

void gen_below(const Partition& lam, std::size_t i, Partition& cur, std::vector<Partition>& out) {
    if (i > lam.size()) {
        Partition mu = cur;
        while (!mu.empty() && mu.back() == 0) mu.pop_back();
        out.push_back(mu);
        return;
    }
    int lo = part_at(lam, static_cast<int>(i + 1));
    int hi = part_at(lam, static_cast<int>(i));
    for (int v = lo; v <= hi; ++v) {
        cur.push_back(v);
        gen_below(lam, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> interlacing_above(const Partition& lam, int max_grow) {
    std::vector<Partition> out;
    if (max_grow < 0) return out;
    Partition cur;
    gen_above(lam, 1, max_grow, cur, out);
    std::sort(out.begin(), out.end(), partition_less);
    return out;
}

std::vector<Partition> interlacing_below(const Partition& lam) {
    std::vector<Partition> out;
    Partition cur;
    gen_below(lam, 1, cur, out);
    std::sort(out.begin(), out.end(), partition_less);
    return out;
}

Partition conjugate(const Partition& lam) {
    Partition c;
    if (lam.empty()) return c;
    c.resize(static_cast<std::size_t>(lam[0]), 0);
    for (int part : lam)
        for (int j = 0; j < part; ++j) c[static_cast<std::size_t>(j)] += 1;
    return c;
}

std::vector<int> hook_lengths(const Partition& lam) {
    std::vector<int> hooks;
    Partition conj = conjugate(lam);
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (int j = 1; j <= lam[i]; ++j)
            hooks.push_back(lam[i] - j + conj[static_cast<std::size_t>(j - 1)] -
                            static_cast<int>(i + 1) + 1);
    std::sort(hooks.rbegin(), hooks.rend());
    return hooks;
}

long n_stat(const Partition& lam) {
    long n = 0;
    for (std::size_t i = 0; i < lam.size(); ++i) n += static_cast<long>(i) * lam[i];
    return n;
}

bool is_valid_plane_partition(const PlanePartition& pi) {
    const auto& r = pi.rows;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i].empty()) return false;  // no trailing/interior empty rows
        for (std::size_t j = 0; j < r[i].size(); ++j) {
            int v = r[i][j];
            if (v <= 0) return false;  // stored support only
            if (j > 0 && v > r[i][j - 1]) return false;
            if (i > 0) {
                int up = j < r[i - 1].size() ? r[i - 1][j] : 0;
                if (v > up) return false;
            }
        }
    }
    return true;
}

int volume(const PlanePartition& pi) {
    int v = 0;
    for (const auto& row : pi.rows)
        for (int x : row) v += x;
    return v;
}

bool plane_partition_less(const PlanePartition& a, const PlanePartition& b) {
    int va = volume(a), vb = volume(b);
    if (va != vb) return va < vb;
    return a.rows < b.rows;
}

Partition SliceFamily::at(int m) const {
    if (m < m_min || m > m_max()) return {};
    return slices[static_cast<std::size_t>(m - m_min)];
}

SliceFamily diagonal_slices(const PlanePartition& pi) {
    if (!is_valid_plane_partition(pi))
        throw std::invalid_argument("diagonal_slices: not a plane partition");
    int nrows = static_cast<int>(pi.rows.size());
    int ncols = 0;
    for (const auto& row : pi.rows) ncols = std::max(ncols, static_cast<int>(row.size()));
    auto entry = [&](int i, int j) -> int {  // 1-based
        if (i < 1 || i > nrows) return 0;
        const auto& row = pi.rows[static_cast<std::size_t>(i - 1)];
        if (j < 1 || j > static_cast<int>(row.size())) return 0;
        return row[static_cast<std::size_t>(j - 1)];
    };
    SliceFamily fam;
    fam.m_min = nrows > 0 ? -(nrows - 1) : 0;
    int m_max = ncols > 0 ? ncols - 1 : 0;
    for (int m = fam.m_min; m <= m_max; ++m) {
        Partition s;
        for (int i = 1;; ++i) {
            int v = m >= 0 ? entry(i, i + m) : entry(i - m, i);
            if (v == 0) break;
            s.push_back(v);
        }
        fam.slices.push_back(s);
    }
    return fam;
}

PlanePartition from_slices(const SliceFamily& fam) {
    // chain: pi(m) < pi(m+1) for m < 0, pi(m) > pi(m+1) for m >= 0
    for (int m = fam.m_min - 1; m <= fam.m_max(); ++m) {
        const Partition a = fam.at(m);
        const Partition b = fam.at(m + 1);
        bool ok = m < 0 ? interlaces(b, a) : interlaces(a, b);
        if (!ok)
            throw std::invalid_argument("from_slices: interlacing chain fails between m=" +
                                        std::to_string(m) + " and m=" + std::to_string(m + 1));
    }
    int nrows = 0, ncols = 0;
    for (int m = fam.m_min; m <= fam.m_max(); ++m) {
        int len = static_cast<int>(fam.at(m).size());
        if (len == 0) continue;
        if (m <= 0) nrows = std::max(nrows, len - m);
        if (m >= 0) ncols = std::max(ncols, len + m);
        if (m < 0) ncols = std::max(ncols, len);
        if (m > 0) nrows = std::max(nrows, len);
    }
    PlanePartition pi;
    for (int i = 1; i <= nrows; ++i) {
        std::vector<int> row;
        for (int j = 1; j <= ncols; ++j) {
            int v = part_at(fam.at(j - i), std::min(i, j));
            if (v == 0) break;
            row.push_back(v);
        }
        if (row.empty()) break;
        pi.rows.push_back(row);
    }
    if (!is_valid_plane_partition(pi) && !(pi.rows.empty()))
        throw std::invalid_argument("from_slices: slices do not assemble to a plane partition");
    return pi;
}

namespace {

// Finite chains lam > mu_1 > mu_2 > ... of nonempty partitions with total
// weight <= budget (the all-empty continuation is implicit).
void gen_tails(const Partition& from, int budget, std::vector<Partition>& cur,
               std::vector<std::vector<Partition>>& out) {
    out.push_back(cur);
    for (const auto& mu : interlacing_below(from)) {
        int w = weight(mu);
        if (mu.empty() || w > budget) continue;
        cur.push_back(mu);
        gen_tails(mu, budget - w, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<PlanePartition> enumerate_plane_partitions(int max_volume) {
    if (max_volume < 0) throw std::invalid_argument("enumerate_plane_partitions: negative bound");
    std::vector<PlanePartition> out;
    for (const auto& lam : enumerate_partitions(max_volume)) {
        int wl = weight(lam);
        std::vector<std::vector<Partition>> lefts, rights;
        std::vector<Partition> cur;
        gen_tails(lam, max_volume - wl, cur, lefts);
        for (const auto& left : lefts) {
            int wleft = 0;
            for (const auto& s : left) wleft += weight(s);
            rights.clear();
            cur.clear();
            gen_tails(lam, max_volume - wl - wleft, cur, rights);
            for (const auto& right : rights) {
                SliceFamily fam;
                fam.m_min = -static_cast<int>(left.size());
                for (auto it = left.rbegin(); it != left.rend(); ++it) fam.slices.push_back(*it);
                fam.slices.push_back(lam);
                for (const auto& s : right) fam.slices.push_back(s);
                out.push_back(from_slices(fam));
            }
        }
    }
    std::sort(out.begin(), out.end(), plane_partition_less);
    return out;
}

}  // namespace mcm
