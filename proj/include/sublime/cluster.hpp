#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sublime/corpus.hpp"
#include "sublime/vectorize.hpp"

namespace sublime {

/// How ClusterAssignment::rank_value orders samples within a cluster.
enum class RankOrder {
    AscendingDistance,   // k-means / spectral: closest to centroid first
    DescendingWeight,    // NMF / LDA: strongest topic affinity first
};

/// Result of any clustering run. Vectors are indexed by sample position
/// (benchmark order). objective_trace is monotone nonincreasing.
struct ClusterAssignment {
    std::size_t k = 0;
    std::vector<int> labels;
    std::vector<double> rank_value;
    RankOrder rank_order = RankOrder::AscendingDistance;
    std::vector<double> objective_trace;
};

/// clamp(round(sqrt(N/2)), 2, 25), further capped at N.
std::size_t default_cluster_count(std::size_t n);

/// Lloyd iterations from a seeded k-means++ start, run to an assignment
/// fixpoint or `iters`. Ties break to the lower centroid index; an empty
/// cluster is re-seeded at the farthest point. Identical inputs and seed give
/// identical output.
ClusterAssignment kmeans(const std::vector<std::vector<double>>& rows, std::size_t k,
                         std::uint64_t seed, std::size_t iters = 100);

/// Multiplicative-update NMF (V ~ W*H, Frobenius objective) with seeded
/// uniform(0,1] initialization. Label = argmax of the sample's W row.
ClusterAssignment nmf_topics(const TfidfMatrix& tfidf, std::size_t k, std::uint64_t seed,
                             std::size_t iters = 200);

/// Collapsed Gibbs LDA over the benchmark's tokenized texts with symmetric
/// priors. alpha < 0 selects the 50/k default. Label = argmax of the
/// document-topic proportion after `iters` sweeps.
ClusterAssignment lda_topics(const Benchmark& benchmark, std::size_t k, std::uint64_t seed,
                             std::size_t iters = 200, double alpha = -1.0, double beta = 0.01);

// -- spectral clustering ------------------------------------------------------

/// Dense cosine-similarity matrix over row vectors (zero rows give 0).
std::vector<std::vector<double>> cosine_similarity_matrix(
    const std::vector<std::vector<double>>& rows);

/// Mutual-kNN graph: edge (i,j) kept only when each is in the other's top
/// n_neighbors by similarity; weight = max(0, cosine).
std::vector<std::vector<double>> mutual_knn_adjacency(
    const std::vector<std::vector<double>>& similarity, std::size_t n_neighbors);

/// Symmetric normalized Laplacian I - D^-1/2 A D^-1/2. Rows with zero degree
/// get an identity row.
std::vector<std::vector<double>> normalized_laplacian(
    const std::vector<std::vector<double>>& adjacency);

/// Eigenpairs of a symmetric matrix via cyclic Jacobi rotations, sorted by
/// ascending eigenvalue. eigenvectors[e][i] is component i of pair e.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;
};
EigenDecomposition jacobi_eigen(std::vector<std::vector<double>> matrix,
                                std::size_t max_sweeps = 64);

/// Optional inspection data from spectral_clusters.
struct SpectralDiagnostics {
    std::vector<std::vector<double>> laplacian;
    std::vector<double> eigenvalues;                  // k smallest
    std::vector<std::vector<double>> eigenvectors;    // matching pairs
    std::vector<std::size_t> singletons;              // zero-degree nodes
};

/// Mutual-kNN cosine graph -> normalized Laplacian -> k smallest eigenvectors,
/// row-normalized and clustered with kmeans(seed). Zero-degree nodes are
/// assigned to the nearest centroid afterwards.
ClusterAssignment spectral_clusters(const EmbeddingSet& embeddings,
                                    const std::vector<std::string>& ids, std::size_t k,
                                    std::size_t n_neighbors, std::uint64_t seed,
                                    SpectralDiagnostics* diagnostics = nullptr);

}  // namespace sublime
