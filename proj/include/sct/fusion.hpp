#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sct {

// Minimal dense row-major matrix; everything here is small.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

Matrix matmul(const Matrix& a, const Matrix& b);

// Sequence embeddings: one row per token (l x n).
using EmbeddingMatrix = Matrix;

// Per-head projections plus the sigmoid classifier head; dim must be
// divisible by heads.
struct FusionParams {
  std::size_t dim = 0;    // model/embedding dimension n
  std::size_t heads = 8;  // cross-attention head count H
  std::vector<Matrix> w_q, w_k, w_v;  // per head: n x (n/H)
  std::vector<double> classifier_w;   // n
  double classifier_b = 0.0;

  std::size_t head_dim() const { return dim / heads; }
};

FusionParams zero_params(std::size_t dim, std::size_t heads);
FusionParams random_params(std::size_t dim, std::size_t heads, std::uint64_t seed);

// Training-time settings for a downstream fine-tuning pipeline. Recorded
// here as configuration; no trainer ships with this library.
inline constexpr int kDefaultTrainBatchSize = 32;
inline constexpr double kDefaultLearningRate = 2e-5;

struct Prediction {
  double prob = 0.0;
  int label = 0;
  double loss = 0.0;
};

// Deterministic stand-in for a pre-trained encoder: entry (token, position,
// seed, dim) is a pure function of its inputs, in [-1, 1].
EmbeddingMatrix stub_embed(const std::vector<std::string>& tokens, std::size_t n,
                           std::uint64_t seed);

// Per head i over queries from the comment-tree side and keys/values from
// the code side:
//   Q = h_ct W_q[i], K = h_c W_k[i], V = h_c W_v[i]
//   A_i = rowsoftmax(Q K^T / sqrt(d_h)) V
// Output is the head concatenation, shape l_ct x n.
EmbeddingMatrix cross_attention(const EmbeddingMatrix& h_ct, const EmbeddingMatrix& h_c,
                                const FusionParams& p);

// Row-stochastic attention weights per head, for tests and diagnostics.
std::vector<Matrix> attention_weights(const EmbeddingMatrix& h_ct,
                                      const EmbeddingMatrix& h_c, const FusionParams& p);

// prob = sigmoid(classifier(mean over rows of fused))
double classify(const EmbeddingMatrix& fused, const FusionParams& p);

// -[y ln p + (1-y) ln(1-p)] with p clamped to [eps, 1-eps], eps = 1e-12.
double bce_loss(double prob, int label);

struct FusionGradients {
  std::vector<Matrix> w_q, w_k, w_v;
  std::vector<double> classifier_w;
  double classifier_b = 0.0;
};

Prediction fusion_forward(const EmbeddingMatrix& h_ct, const EmbeddingMatrix& h_c,
                          const FusionParams& p, int label);

// Analytic gradient of bce(classify(cross_attention(...))) w.r.t. all params.
FusionGradients fusion_gradients(const EmbeddingMatrix& h_ct, const EmbeddingMatrix& h_c,
                                 const FusionParams& p, int label);

// Max relative error between the analytic gradient and central finite
// differences with the given step.
double grad_check(const EmbeddingMatrix& h_ct, const EmbeddingMatrix& h_c,
                  const FusionParams& p, int label, double step = 1e-5);

}  // namespace sct
