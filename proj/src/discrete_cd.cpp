#include "pvpower/discrete_cd.hpp"

#include <cmath>
#include <sstream>

#include "pvpower/errors.hpp"

namespace pvpower {

void OperatingMatrix::validate() const {
    const std::size_t K = statuses.size();
    if (K == 0) throw DomainError("operating matrix: no statuses");
    if (results.size() != K) throw DomainError("operating matrix: need as many results as statuses");
    if (probs.size() != K) throw DomainError("operating matrix: wrong number of rows");
    for (const auto& row : probs)
        if (row.size() != K) throw DomainError("operating matrix: ragged row");
    for (std::size_t c = 0; c < K; ++c) {
        double s = 0;
        for (std::size_t r = 0; r < K; ++r) {
            if (!(probs[r][c] >= 0) || !std::isfinite(probs[r][c]))
                throw DomainError("operating matrix: negative or non-finite entry");
            s += probs[r][c];
        }
        if (std::fabs(s - 1.0) > 1e-9) {
            std::ostringstream m;
            m << "operating matrix: column '" << statuses[c] << "' sums to " << s;
            throw DomainError(m.str());
        }
    }
}

OperatingMatrix OperatingMatrix::cancer_screening() {
    return {{"No Cancer", "Pre-Cancer", "Cancer"},
            {"Negative", "At Risk", "Positive"},
            {{0.85, 0.40, 0.05}, {0.10, 0.50, 0.15}, {0.05, 0.10, 0.80}}};
}

std::vector<std::vector<PCell>> one_sided_pvalues(const OperatingMatrix& m) {
    m.validate();
    const std::size_t K = m.k();
    std::vector<std::vector<PCell>> out(K, std::vector<PCell>(K));
    for (std::size_t c = 0; c < K; ++c) {
        // cumulative sums down the column give both tails
        std::vector<double> le(K), ge(K);
        double acc = 0;
        for (std::size_t r = 0; r < K; ++r) le[r] = (acc += m.probs[r][c]);
        acc = 0;
        for (std::size_t r = K; r-- > 0;) ge[r] = (acc += m.probs[r][c]);
        for (std::size_t r = 0; r < K; ++r) {
            PCell& cell = out[r][c];
            // low status: evidence against it comes from high results, and the reverse
            if (c <= r && r > 0) {
                cell.has_upper = true;
                cell.upper = ge[r];
            }
            if (c >= r && (r + 1 < K || K == 1)) {
                cell.has_lower = true;
                cell.lower = le[r];
            }
        }
    }
    return out;
}

std::vector<LevelEntry> confidence_levels(const OperatingMatrix& m) {
    const auto p = one_sided_pvalues(m);
    const std::size_t K = m.k();
    std::vector<LevelEntry> out(K);
    for (std::size_t r = 0; r < K; ++r) {
        double level = 1.0;
        if (r > 0) level -= p[r][r - 1].upper;
        if (r + 1 < K) level -= p[r][r + 1].lower;
        out[r] = {r, level};
    }
    return out;
}

Table posterior(const OperatingMatrix& m, const std::vector<double>& w) {
    m.validate();
    const std::size_t K = m.k();
    if (w.size() != K) throw DomainError("posterior: prior needs one weight per status");
    double wsum = 0;
    for (double x : w) {
        if (!(x >= 0) || !std::isfinite(x)) throw DomainError("posterior: prior weights must be nonnegative");
        wsum += x;
    }
    if (!(wsum > 0)) throw DomainError("posterior: prior weights are all zero");
    Table t(K, std::vector<double>(K));
    for (std::size_t r = 0; r < K; ++r) {
        double s = 0;
        for (std::size_t c = 0; c < K; ++c) s += (t[r][c] = m.probs[r][c] * w[c]);
        if (!(s > 0)) throw DegenerateMassError("posterior: result '" + m.results[r] + "' has zero mass");
        for (double& x : t[r]) x /= s;
    }
    return t;
}

Table normalized_likelihood(const OperatingMatrix& m) { return posterior(m, std::vector<double>(m.k(), 1.0)); }

Table plugin_sampling(const OperatingMatrix& m, const std::vector<std::size_t>& map) {
    m.validate();
    const std::size_t K = m.k();
    if (map.size() != K) throw DomainError("plugin_sampling: map must cover every result");
    Table t(K, std::vector<double>(K));
    for (std::size_t r = 0; r < K; ++r) {
        if (map[r] >= K) throw DomainError("plugin_sampling: map points past the last status");
        for (std::size_t j = 0; j < K; ++j) t[r][j] = m.probs[j][map[r]];
    }
    return t;
}

}  // namespace pvpower
