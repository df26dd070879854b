#include "fairdiv/homology.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fairdiv {

namespace {

int mod_inverse(int a, int p) {
    int result = 1, base = a % p, exp = p - 2; // p prime
    while (exp) {
        if (exp & 1) result = result * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return result;
}

} // namespace

std::size_t BoundaryMatrix::rank() const {
    // Sparse column-major elimination with first-nonzero pivoting.
    std::vector<std::vector<std::pair<std::size_t, int>>> cols = columns;
    std::map<std::size_t, std::size_t> pivot_col; // pivot row -> column index
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        auto& col = cols[c];
        while (!col.empty()) {
            std::sort(col.begin(), col.end());
            // combine duplicate rows, drop zeros
            std::vector<std::pair<std::size_t, int>> merged;
            for (auto [row, v] : col) {
                if (!merged.empty() && merged.back().first == row)
                    merged.back().second = (merged.back().second + v) % p;
                else
                    merged.push_back({row, v % p});
            }
            col.clear();
            for (auto [row, v] : merged)
                if (v % p != 0) col.push_back({row, ((v % p) + p) % p});
            if (col.empty()) break;
            const std::size_t lead = col.front().first;
            auto it = pivot_col.find(lead);
            if (it == pivot_col.end()) {
                pivot_col[lead] = c;
                ++r;
                break;
            }
            // eliminate against the pivot column
            const auto& pc = cols[it->second];
            const int factor = (p - col.front().second * mod_inverse(pc.front().second, p) % p) % p;
            for (auto [row, v] : pc) col.push_back({row, v * factor % p});
        }
    }
    return r;
}

BoundaryMatrix boundary_matrix(const SimplicialComplex& K, int dim, int p) {
    if (dim < 0 || dim > K.dim()) throw std::invalid_argument("boundary_matrix: dim out of range");
    BoundaryMatrix B;
    B.dim = dim;
    B.p = p;
    const auto faces = K.faces_of_dim(dim);
    B.cols = faces.size();
    if (dim == 0) {
        // augmentation: every vertex maps to the empty face
        B.rows = 1;
        B.columns.assign(faces.size(), {{0, 1}});
        return B;
    }
    const auto below = K.faces_of_dim(dim - 1);
    B.rows = below.size();
    std::map<Face, std::size_t> index;
    for (std::size_t i = 0; i < below.size(); ++i) index[below[i]] = i;
    B.columns.resize(faces.size());
    for (std::size_t c = 0; c < faces.size(); ++c) {
        const Face& f = faces[c];
        int sign = 1;
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            Face sub;
            for (std::size_t i = 0; i < f.size(); ++i)
                if (i != drop) sub.push_back(f[i]);
            B.columns[c].push_back({index.at(sub), ((sign % p) + p) % p});
            sign = -sign;
        }
    }
    return B;
}

long long BettiProfile::alternating_sum() const {
    long long sum = 0;
    for (std::size_t i = 0; i < reduced_betti.size(); ++i)
        sum += (i % 2 == 0) ? reduced_betti[i] : -reduced_betti[i];
    return sum;
}

BettiProfile betti_profile(const SimplicialComplex& K, int p) {
    BettiProfile out;
    out.p = p;
    const int top = K.dim();
    if (top < 0) return out;

    std::vector<std::size_t> face_counts(top + 1), ranks(top + 2, 0);
    std::vector<BoundaryMatrix> matrices;
    for (int d = 0; d <= top; ++d) {
        matrices.push_back(boundary_matrix(K, d, p));
        face_counts[d] = matrices.back().cols;
        ranks[d] = matrices.back().rank();
    }
    // d*d = 0 on every consecutive pair (checked symbolically on compositions).
    for (int d = 0; d < top; ++d) {
        for (std::size_t c = 0; c < matrices[d + 1].columns.size(); ++c) {
            std::map<std::size_t, int> acc;
            for (auto [mid, v1] : matrices[d + 1].columns[c])
                for (auto [row, v2] : matrices[d].columns[mid])
                    acc[row] = (acc[row] + v1 * v2) % p;
            for (auto [row, v] : acc)
                if (v % p != 0) throw std::logic_error("boundary composition not zero");
        }
    }

    out.reduced_betti.resize(top + 1);
    for (int d = 0; d <= top; ++d) {
        const long long nullity = static_cast<long long>(face_counts[d]) - ranks[d];
        const long long next_rank = d + 1 <= top ? static_cast<long long>(ranks[d + 1]) : 0;
        out.reduced_betti[d] = nullity - next_rank;
        if (out.reduced_betti[d] < 0) throw std::logic_error("negative Betti number");
    }

    out.connectivity = -1;
    for (int d = 0; d <= top && out.reduced_betti[d] == 0; ++d) out.connectivity = d;
    return out;
}

std::string ConnectivityReport::to_text() const {
    std::ostringstream out;
    out << (pass ? "pass" : "fail") << " claim=" << claimed
        << " path_connected=" << (path_connected ? "yes" : "no") << " p=" << profile.p
        << " betti=[";
    for (std::size_t i = 0; i < profile.reduced_betti.size(); ++i) {
        if (i) out << ",";
        out << profile.reduced_betti[i];
    }
    out << "] connectivity=" << profile.connectivity;
    return out.str();
}

ConnectivityReport connectivity_certificate(const SimplicialComplex& K, int claimed, int p) {
    ConnectivityReport rep;
    rep.claimed = claimed;
    rep.profile = betti_profile(K, p);
    rep.path_connected = K.is_path_connected();
    bool betti_ok = true;
    for (int d = 0; d <= claimed && d < static_cast<int>(rep.profile.reduced_betti.size()); ++d)
        if (rep.profile.reduced_betti[d] != 0) betti_ok = false;
    if (claimed >= static_cast<int>(rep.profile.reduced_betti.size()) && K.dim() < 0)
        betti_ok = false; // empty complex certifies nothing
    rep.pass = betti_ok && (claimed < 0 || rep.path_connected);
    return rep;
}

} // namespace fairdiv
