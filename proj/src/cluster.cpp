#include "sublime/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sublime/errors.hpp"
#include "sublime/rng.hpp"
#include "sublime/textstats.hpp"

namespace sublime {

std::size_t default_cluster_count(std::size_t n) {
    if (n <= 2) return std::max<std::size_t>(n, 1);
    const auto guess = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(n) / 2.0)));
    return std::min(n, std::clamp<std::size_t>(guess, 2, 25));
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        d += diff * diff;
    }
    return d;
}

}  // namespace

ClusterAssignment kmeans(const std::vector<std::vector<double>>& rows, std::size_t k,
                         std::uint64_t seed, std::size_t iters) {
    const std::size_t n = rows.size();
    if (k == 0 || k > n) throw BadK("kmeans: k=" + std::to_string(k) + " with N=" + std::to_string(n));
    const std::size_t dim = rows[0].size();
    for (const auto& row : rows)
        if (row.size() != dim) throw DimMismatch("kmeans: ragged input rows");

    Rng rng(seed);
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);
    std::vector<bool> is_centroid(n, false);

    // k-means++ seeding: next centroid drawn with probability proportional to
    // squared distance to the nearest chosen one.
    const std::size_t first = rng.bounded(n);
    centroids.push_back(rows[first]);
    is_centroid[first] = true;
    std::vector<double> dist2(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) dist2[i] = sq_dist(rows[i], centroids[0]);
    while (centroids.size() < k) {
        const double total = std::accumulate(dist2.begin(), dist2.end(), 0.0);
        std::size_t pick = n;
        if (total > 0.0) {
            const double r = rng.next_unit() * total;
            double cum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                cum += dist2[i];
                if (cum > r) {
                    pick = i;
                    break;
                }
            }
            if (pick == n) {  // r landed on the tail of accumulated rounding
                for (std::size_t i = n; i-- > 0;)
                    if (dist2[i] > 0.0) {
                        pick = i;
                        break;
                    }
            }
        }
        if (pick == n) {  // all remaining points coincide with a centroid
            for (std::size_t i = 0; i < n; ++i)
                if (!is_centroid[i]) {
                    pick = i;
                    break;
                }
        }
        is_centroid[pick] = true;
        centroids.push_back(rows[pick]);
        for (std::size_t i = 0; i < n; ++i)
            dist2[i] = std::min(dist2[i], sq_dist(rows[i], centroids.back()));
    }

    ClusterAssignment out;
    out.k = k;
    out.labels.assign(n, -1);
    out.rank_value.assign(n, 0.0);
    out.rank_order = RankOrder::AscendingDistance;

    std::vector<int> prev(n, -1);
    for (std::size_t iter = 0; iter < std::max<std::size_t>(iters, 1); ++iter) {
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_dist(rows[i], centroids[0]);
            for (std::size_t c = 1; c < k; ++c) {
                const double d = sq_dist(rows[i], centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(c);
                }
            }
            out.labels[i] = best;
            out.rank_value[i] = std::sqrt(best_d);
            inertia += best_d;
        }
        out.objective_trace.push_back(inertia);
        if (out.labels == prev) break;
        prev = out.labels;

        std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            ++counts[out.labels[i]];
            for (std::size_t d = 0; d < dim; ++d) sums[out.labels[i]][d] += rows[i][d];
        }
        std::vector<bool> reseeded(n, false);
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                for (std::size_t d = 0; d < dim; ++d)
                    centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);
            } else {
                // Re-seed an empty cluster at the farthest point (lowest index
                // on ties, each point used at most once per repair round).
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (reseeded[i]) continue;
                    if (out.rank_value[i] > far_d) {
                        far_d = out.rank_value[i];
                        far = i;
                    }
                }
                reseeded[far] = true;
                centroids[c] = rows[far];
            }
        }
    }
    return out;
}

ClusterAssignment nmf_topics(const TfidfMatrix& tfidf, std::size_t k, std::uint64_t seed,
                             std::size_t iters) {
    const std::size_t n = tfidf.n_docs();
    const std::size_t t = tfidf.n_terms();
    if (k == 0 || k > std::min(n, t))
        throw BadK("nmf: k=" + std::to_string(k) + " with N=" + std::to_string(n) +
                   ", terms=" + std::to_string(t));

    const std::vector<std::vector<double>> v = tfidf.dense();
    double v_sum = 0.0;
    for (const auto& row : v)
        for (double x : row) v_sum += x;
    if (v_sum <= 0.0) throw DegenerateInput("nmf: all-zero matrix");

    Rng rng(seed);
    std::vector<std::vector<double>> w(n, std::vector<double>(k));
    std::vector<std::vector<double>> h(k, std::vector<double>(t));
    for (auto& row : w)
        for (double& x : row) x = rng.next_unit_open();
    for (auto& row : h)
        for (double& x : row) x = rng.next_unit_open();

    constexpr double kEps = 1e-12;
    ClusterAssignment out;
    out.k = k;
    out.rank_order = RankOrder::DescendingWeight;

    std::vector<std::vector<double>> wt_v(k, std::vector<double>(t));
    std::vector<std::vector<double>> gram(k, std::vector<double>(k));
    std::vector<std::vector<double>> v_ht(n, std::vector<double>(k));
    for (std::size_t iter = 0; iter < iters; ++iter) {
        // H <- H * (W^T V) / (W^T W H)
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < t; ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += w[i][a] * v[i][b];
                wt_v[a][b] = s;
            }
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += w[i][a] * w[i][b];
                gram[a][b] = s;
            }
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < t; ++b) {
                double denom = 0.0;
                for (std::size_t c = 0; c < k; ++c) denom += gram[a][c] * h[c][b];
                h[a][b] *= wt_v[a][b] / (denom + kEps);
            }

        // W <- W * (V H^T) / (W H H^T)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < k; ++a) {
                double s = 0.0;
                for (std::size_t b = 0; b < t; ++b) s += v[i][b] * h[a][b];
                v_ht[i][a] = s;
            }
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) {
                double s = 0.0;
                for (std::size_t c = 0; c < t; ++c) s += h[a][c] * h[b][c];
                gram[a][b] = s;
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < k; ++a) {
                double denom = 0.0;
                for (std::size_t c = 0; c < k; ++c) denom += w[i][c] * gram[c][a];
                w[i][a] *= v_ht[i][a] / (denom + kEps);
            }

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t b = 0; b < t; ++b) {
                double approx = 0.0;
                for (std::size_t a = 0; a < k; ++a) approx += w[i][a] * h[a][b];
                const double diff = v[i][b] - approx;
                err += diff * diff;
            }
        out.objective_trace.push_back(std::sqrt(err));
    }

    out.labels.assign(n, 0);
    out.rank_value.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        int best = 0;
        for (std::size_t a = 1; a < k; ++a)
            if (w[i][a] > w[i][best]) best = static_cast<int>(a);
        out.labels[i] = best;
        out.rank_value[i] = w[i][best];
    }
    return out;
}

ClusterAssignment lda_topics(const Benchmark& benchmark, std::size_t k, std::uint64_t seed,
                             std::size_t iters, double alpha, double beta) {
    const std::size_t n = benchmark.size();
    if (k == 0) throw BadK("lda: k must be >= 1");
    if (alpha < 0.0) alpha = 50.0 / static_cast<double>(k);

    // Tokenize once; vocabulary over the whole corpus, sorted for determinism.
    std::vector<std::vector<std::string>> docs(n);
    std::vector<std::string> vocab;
    for (std::size_t d = 0; d < n; ++d) {
        const TokenStats stats = tokenize(benchmark.at(d).text);
        docs[d].reserve(stats.words.size());
        for (const auto& w : stats.words) {
            std::string folded = w;
            for (char& c : folded)
                if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            docs[d].push_back(std::move(folded));
            vocab.push_back(docs[d].back());
        }
    }
    std::sort(vocab.begin(), vocab.end());
    vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
    if (vocab.empty()) throw DegenerateInput("lda: corpus has no words");

    std::vector<std::vector<std::size_t>> token_ids(n);
    for (std::size_t d = 0; d < n; ++d) {
        token_ids[d].reserve(docs[d].size());
        for (const auto& w : docs[d]) {
            const auto it = std::lower_bound(vocab.begin(), vocab.end(), w);
            token_ids[d].push_back(static_cast<std::size_t>(it - vocab.begin()));
        }
    }

    const std::size_t v = vocab.size();
    Rng rng(seed);
    std::vector<std::vector<std::size_t>> doc_topic(n, std::vector<std::size_t>(k, 0));
    std::vector<std::vector<std::size_t>> topic_word(k, std::vector<std::size_t>(v, 0));
    std::vector<std::size_t> topic_total(k, 0);
    std::vector<std::vector<int>> z(n);

    for (std::size_t d = 0; d < n; ++d) {
        z[d].resize(token_ids[d].size());
        for (std::size_t pos = 0; pos < token_ids[d].size(); ++pos) {
            const int topic = static_cast<int>(rng.bounded(k));
            z[d][pos] = topic;
            ++doc_topic[d][topic];
            ++topic_word[topic][token_ids[d][pos]];
            ++topic_total[topic];
        }
    }

    std::vector<double> p(k);
    const double v_beta = static_cast<double>(v) * beta;
    for (std::size_t sweep = 0; sweep < iters; ++sweep) {
        for (std::size_t d = 0; d < n; ++d) {
            for (std::size_t pos = 0; pos < token_ids[d].size(); ++pos) {
                const std::size_t word = token_ids[d][pos];
                const int old_topic = z[d][pos];
                --doc_topic[d][old_topic];
                --topic_word[old_topic][word];
                --topic_total[old_topic];

                double total = 0.0;
                for (std::size_t t = 0; t < k; ++t) {
                    p[t] = (static_cast<double>(doc_topic[d][t]) + alpha) *
                           (static_cast<double>(topic_word[t][word]) + beta) /
                           (static_cast<double>(topic_total[t]) + v_beta);
                    total += p[t];
                }
                const double r = rng.next_unit() * total;
                double cum = 0.0;
                int picked = static_cast<int>(k) - 1;
                for (std::size_t t = 0; t < k; ++t) {
                    cum += p[t];
                    if (cum > r) {
                        picked = static_cast<int>(t);
                        break;
                    }
                }
                z[d][pos] = picked;
                ++doc_topic[d][picked];
                ++topic_word[picked][word];
                ++topic_total[picked];
            }
        }
    }

    ClusterAssignment out;
    out.k = k;
    out.rank_order = RankOrder::DescendingWeight;
    out.labels.assign(n, 0);
    out.rank_value.assign(n, 0.0);
    for (std::size_t d = 0; d < n; ++d) {
        const double denom =
            static_cast<double>(token_ids[d].size()) + static_cast<double>(k) * alpha;
        int best = 0;
        double best_p = -1.0;
        for (std::size_t t = 0; t < k; ++t) {
            const double prop = (static_cast<double>(doc_topic[d][t]) + alpha) / denom;
            if (prop > best_p) {
                best_p = prop;
                best = static_cast<int>(t);
            }
        }
        out.labels[d] = best;
        out.rank_value[d] = best_p;
    }
    return out;
}

std::vector<std::vector<double>> cosine_similarity_matrix(
    const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<std::vector<double>> unit = rows;
    for (auto& row : unit) {
        double norm_sq = 0.0;
        for (double x : row) norm_sq += x * x;
        if (norm_sq > 0.0) {
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (double& x : row) x *= inv;
        } else {
            std::fill(row.begin(), row.end(), 0.0);
        }
    }
    std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        sim[i][i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t d = 0; d < unit[i].size(); ++d) s += unit[i][d] * unit[j][d];
            sim[i][j] = s;
            sim[j][i] = s;
        }
    }
    return sim;
}

std::vector<std::vector<double>> mutual_knn_adjacency(
    const std::vector<std::vector<double>>& similarity, std::size_t n_neighbors) {
    const std::size_t n = similarity.size();
    std::vector<std::vector<bool>> in_knn(n, std::vector<bool>(n, false));
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::iota(order.begin(), order.end(), 0);
        // neighbors by similarity descending, index ascending on ties
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (similarity[i][a] != similarity[i][b]) return similarity[i][a] > similarity[i][b];
            return a < b;
        });
        std::size_t taken = 0;
        for (std::size_t j : order) {
            if (j == i) continue;
            in_knn[i][j] = true;
            if (++taken == n_neighbors) break;
        }
    }
    std::vector<std::vector<double>> adj(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (in_knn[i][j] && in_knn[j][i]) {
                const double w = std::max(0.0, similarity[i][j]);
                adj[i][j] = w;
                adj[j][i] = w;
            }
    return adj;
}

std::vector<std::vector<double>> normalized_laplacian(
    const std::vector<std::vector<double>>& adjacency) {
    const std::size_t n = adjacency.size();
    std::vector<double> degree(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        degree[i] = std::accumulate(adjacency[i].begin(), adjacency[i].end(), 0.0);

    std::vector<std::vector<double>> lap(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        lap[i][i] = 1.0;
        if (degree[i] <= 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || adjacency[i][j] == 0.0 || degree[j] <= 0.0) continue;
            lap[i][j] = -adjacency[i][j] / std::sqrt(degree[i] * degree[j]);
        }
    }
    return lap;
}

EigenDecomposition jacobi_eigen(std::vector<std::vector<double>> a, std::size_t max_sweeps) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    double frob = 0.0;
    for (const auto& row : a)
        for (double x : row) frob += x * x;
    const double stop = 1e-22 * std::max(frob, 1.0);

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off <= stop) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p][q];
                if (apq == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                                     : -1.0 / (-theta + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const double app = a[p][p];
                const double aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a[i][p];
                    const double aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[p][i] = a[i][p];
                    a[i][q] = s * aip + c * aiq;
                    a[q][i] = a[i][q];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v[i][p];
                    const double viq = v[i][q];
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (a[x][x] != a[y][y]) return a[x][x] < a[y][y];
        return x < y;
    });

    EigenDecomposition out;
    out.eigenvalues.reserve(n);
    out.eigenvectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t e = 0; e < n; ++e) {
        out.eigenvalues.push_back(a[order[e]][order[e]]);
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors[e][i] = v[i][order[e]];
    }
    return out;
}

ClusterAssignment spectral_clusters(const EmbeddingSet& embeddings,
                                    const std::vector<std::string>& ids, std::size_t k,
                                    std::size_t n_neighbors, std::uint64_t seed,
                                    SpectralDiagnostics* diagnostics) {
    const std::size_t n = ids.size();
    if (k == 0 || k > n)
        throw BadK("spectral: k=" + std::to_string(k) + " with N=" + std::to_string(n));
    if (n_neighbors >= n) throw Error("spectral: n_neighbors must be < N");

    std::vector<std::vector<double>> rows;
    rows.reserve(n);
    for (const auto& id : ids) rows.push_back(embeddings.at(id));
    for (const auto& row : rows)
        if (row.size() != embeddings.dim) throw DimMismatch("spectral: ragged embedding rows");

    const auto sim = cosine_similarity_matrix(rows);
    const auto adj = mutual_knn_adjacency(sim, n_neighbors);
    const auto lap = normalized_laplacian(adj);

    std::vector<std::size_t> singletons;
    for (std::size_t i = 0; i < n; ++i) {
        const double deg = std::accumulate(adj[i].begin(), adj[i].end(), 0.0);
        if (deg <= 0.0) singletons.push_back(i);
    }

    EigenDecomposition eig = jacobi_eigen(lap);

    // Spectral embedding: rows of the k smallest eigenvectors, row-normalized.
    // Entries that are pure rounding noise relative to the eigenvector's scale
    // are snapped to zero so degenerate eigenspaces (identical inputs) cannot
    // split one cluster on 1e-16 jitter.
    std::vector<std::vector<double>> embedding(n, std::vector<double>(k, 0.0));
    for (std::size_t e = 0; e < k; ++e) {
        double max_abs = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            max_abs = std::max(max_abs, std::abs(eig.eigenvectors[e][i]));
        const double snap = 1e-12 * max_abs;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = eig.eigenvectors[e][i];
            embedding[i][e] = std::abs(v) <= snap ? 0.0 : v;
        }
    }
    for (auto& row : embedding) {
        double norm_sq = 0.0;
        for (double x : row) norm_sq += x * x;
        if (norm_sq > 0.0) {
            const double inv = 1.0 / std::sqrt(norm_sq);
            for (double& x : row) x *= inv;
        }
    }

    if (diagnostics) {
        diagnostics->laplacian = lap;
        diagnostics->eigenvalues.assign(eig.eigenvalues.begin(), eig.eigenvalues.begin() + k);
        diagnostics->eigenvectors.assign(eig.eigenvectors.begin(), eig.eigenvectors.begin() + k);
        diagnostics->singletons = singletons;
    }

    std::vector<bool> is_singleton(n, false);
    for (std::size_t i : singletons) is_singleton[i] = true;
    std::vector<std::size_t> connected;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_singleton[i]) connected.push_back(i);

    ClusterAssignment out;
    out.k = k;
    out.rank_order = RankOrder::AscendingDistance;
    out.labels.assign(n, 0);
    out.rank_value.assign(n, 0.0);

    if (connected.size() >= k) {
        std::vector<std::vector<double>> connected_rows;
        connected_rows.reserve(connected.size());
        for (std::size_t i : connected) connected_rows.push_back(embedding[i]);
        ClusterAssignment inner = kmeans(connected_rows, k, seed);
        out.objective_trace = inner.objective_trace;

        // Recover centroids to place the zero-degree nodes.
        std::vector<std::vector<double>> centroids(k, std::vector<double>(k, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t c = 0; c < connected.size(); ++c) {
            const int label = inner.labels[c];
            ++counts[label];
            for (std::size_t d = 0; d < k; ++d) centroids[label][d] += connected_rows[c][d];
        }
        for (std::size_t c = 0; c < k; ++c)
            if (counts[c] > 0)
                for (std::size_t d = 0; d < k; ++d)
                    centroids[c][d] /= static_cast<double>(counts[c]);

        for (std::size_t c = 0; c < connected.size(); ++c) {
            out.labels[connected[c]] = inner.labels[c];
            out.rank_value[connected[c]] = inner.rank_value[c];
        }
        for (std::size_t i : singletons) {
            int best = -1;
            double best_d = 0.0;
            for (std::size_t c = 0; c < k; ++c) {
                if (counts[c] == 0) continue;  // only real clusters may adopt
                const double d = sq_dist(embedding[i], centroids[c]);
                if (best < 0 || d < best_d) {
                    best_d = d;
                    best = static_cast<int>(c);
                }
            }
            out.labels[i] = best < 0 ? 0 : best;
            out.rank_value[i] = std::sqrt(best_d);
        }
    } else {
        // Too few connected nodes to seed k clusters: cluster everything.
        ClusterAssignment inner = kmeans(embedding, k, seed);
        out.labels = inner.labels;
        out.rank_value = inner.rank_value;
        out.objective_trace = inner.objective_trace;
    }
    return out;
}

}  // namespace sublime
