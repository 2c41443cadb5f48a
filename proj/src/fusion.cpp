#include "sct/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "sct/errors.hpp"

namespace sct {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double unit_open(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
}

void check_dims(const EmbeddingMatrix& h_ct, const EmbeddingMatrix& h_c,
                const FusionParams& p) {
  if (h_ct.rows == 0 || h_c.rows == 0 || h_ct.cols == 0)
    fail(Errc::DimensionMismatch, "empty embedding");
  if (h_ct.cols != h_c.cols || h_ct.cols != p.dim)
    fail(Errc::DimensionMismatch, "embedding dim does not match params");
  if (p.heads == 0 || p.dim % p.heads != 0)
    fail(Errc::DimensionMismatch, "dim must be divisible by heads");
  if (p.w_q.size() != p.heads || p.w_k.size() != p.heads || p.w_v.size() != p.heads)
    fail(Errc::DimensionMismatch, "per-head projection count != heads");
  if (p.classifier_w.size() != p.dim)
    fail(Errc::DimensionMismatch, "classifier width != dim");
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Softmax over each row of logits, in place.
void row_softmax(Matrix& m) {
  for (std::size_t r = 0; r < m.rows; ++r) {
    double mx = m.at(r, 0);
    for (std::size_t c = 1; c < m.cols; ++c) mx = std::max(mx, m.at(r, c));
    double sum = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) {
      double e = std::exp(m.at(r, c) - mx);
      m.at(r, c) = e;
      sum += e;
    }
    for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) /= sum;
  }
}

struct HeadForward {
  Matrix q, k, v;       // l x d_h
  Matrix weights;       // l_ct x l_c, row-stochastic
  Matrix attended;      // l_ct x d_h
};

HeadForward head_forward(const EmbeddingMatrix& h_ct, const EmbeddingMatrix& h_c,
                         const FusionParams& p, std::size_t head) {
  HeadForward f;
  f.q = matmul(h_ct, p.w_q[head]);
  f.k = matmul(h_c, p.w_k[head]);
  f.v = matmul(h_c, p.w_v[head]);
  double scale = 1.0 / std::sqrt(static_cast<double>(p.head_dim()));
  Matrix logits(f.q.rows, f.k.rows);
  for (std::size_t r = 0; r < f.q.rows; ++r)
    for (std::size_t c = 0; c < f.k.rows; ++c) {
      double dot = 0.0;
      for (std::size_t d = 0; d < f.q.cols; ++d) dot += f.q.at(r, d) * f.k.at(c, d);
      logits.at(r, c) = dot * scale;
    }
  row_softmax(logits);
  f.weights = std::move(logits);
  f.attended = matmul(f.weights, f.v);
  return f;
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) fail(Errc::DimensionMismatch, "matmul shape mismatch");
  Matrix out(a.rows, b.cols);
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t k = 0; k < a.cols; ++k) {
      double av = a.at(r, k);
      if (av == 0.0) continue;
      for (std::size_t c = 0; c < b.cols; ++c) out.at(r, c) += av * b.at(k, c);
    }
  return out;
}

FusionParams zero_params(std::size_t dim, std::size_t heads) {
  if (heads == 0 || dim % heads != 0)
    fail(Errc::DimensionMismatch, "dim must be divisible by heads");
  FusionParams p;
  p.dim = dim;
  p.heads = heads;
  std::size_t dh = dim / heads;
  for (std::size_t h = 0; h < heads; ++h) {
    p.w_q.emplace_back(dim, dh);
    p.w_k.emplace_back(dim, dh);
    p.w_v.emplace_back(dim, dh);
  }
  p.classifier_w.assign(dim, 0.0);
  return p;
}

FusionParams random_params(std::size_t dim, std::size_t heads, std::uint64_t seed) {
  FusionParams p = zero_params(dim, heads);
  std::uint64_t state = seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
  auto next = [&] { return 2.0 * unit_open(splitmix64(state)) - 1.0; };
  for (std::size_t h = 0; h < heads; ++h) {
    for (double& x : p.w_q[h].data) x = next();
    for (double& x : p.w_k[h].data) x = next();
    for (double& x : p.w_v[h].data) x = next();
  }
  for (double& x : p.classifier_w) x = next();
  p.classifier_b = next();
  return p;
}

EmbeddingMatrix stub_embed(const std::vector<std::string>& tokens, std::size_t n,
                           std::uint64_t seed) {
  if (tokens.empty()) fail(Errc::EmptyInput, "no tokens to embed");
  if (n == 0) fail(Errc::DimensionMismatch, "embedding dim must be >= 1");
  EmbeddingMatrix m(tokens.size(), n);
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    std::uint64_t state = fnv1a64(tokens[pos]) ^ (seed * 0x9e3779b97f4a7c15ULL) ^
                          ((pos + 1) * 0xc2b2ae3d27d4eb4fULL);
    for (std::size_t d = 0; d < n; ++d)
      m.at(pos, d) = 2.0 * unit_open(splitmix64(state)) - 1.0;
  }
  return m;
}

EmbeddingMatrix cross_attention(const EmbeddingMatrix& h_ct, const EmbeddingMatrix& h_c,
                                const FusionParams& p) {
  check_dims(h_ct, h_c, p);
  EmbeddingMatrix out(h_ct.rows, p.dim);
  std::size_t dh = p.head_dim();
  for (std::size_t h = 0; h < p.heads; ++h) {
    HeadForward f = head_forward(h_ct, h_c, p, h);
    for (std::size_t r = 0; r < out.rows; ++r)
      for (std::size_t d = 0; d < dh; ++d) out.at(r, h * dh + d) = f.attended.at(r, d);
  }
  return out;
}

std::vector<Matrix> attention_weights(const EmbeddingMatrix& h_ct,
                                      const EmbeddingMatrix& h_c, const FusionParams& p) {
  check_dims(h_ct, h_c, p);
  std::vector<Matrix> weights;
  for (std::size_t h = 0; h < p.heads; ++h)
    weights.push_back(head_forward(h_ct, h_c, p, h).weights);
  return weights;
}

double classify(const EmbeddingMatrix& fused, const FusionParams& p) {
  if (fused.cols != p.classifier_w.size())
    fail(Errc::DimensionMismatch, "fused width != classifier width");
  if (fused.rows == 0) fail(Errc::DimensionMismatch, "empty fused matrix");
  double z = p.classifier_b;
  for (std::size_t c = 0; c < fused.cols; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < fused.rows; ++r) mean += fused.at(r, c);
    mean /= static_cast<double>(fused.rows);
    z += mean * p.classifier_w[c];
  }
  return sigmoid(z);
}

double bce_loss(double prob, int label) {
  constexpr double eps = 1e-12;
  double p = std::clamp(prob, eps, 1.0 - eps);
  return label ? -std::log(p) : -std::log(1.0 - p);
}

Prediction fusion_forward(const EmbeddingMatrix& h_ct, const EmbeddingMatrix& h_c,
                          const FusionParams& p, int label) {
  EmbeddingMatrix fused = cross_attention(h_ct, h_c, p);
  Prediction pred;
  pred.label = label;
  pred.prob = classify(fused, p);
  pred.loss = bce_loss(pred.prob, label);
  return pred;
}

FusionGradients fusion_gradients(const EmbeddingMatrix& h_ct, const EmbeddingMatrix& h_c,
                                 const FusionParams& p, int label) {
  check_dims(h_ct, h_c, p);
  std::size_t dh = p.head_dim();
  std::size_t lq = h_ct.rows;

  std::vector<HeadForward> heads;
  heads.reserve(p.heads);
  EmbeddingMatrix fused(lq, p.dim);
  for (std::size_t h = 0; h < p.heads; ++h) {
    heads.push_back(head_forward(h_ct, h_c, p, h));
    for (std::size_t r = 0; r < lq; ++r)
      for (std::size_t d = 0; d < dh; ++d)
        fused.at(r, h * dh + d) = heads[h].attended.at(r, d);
  }

  double prob = classify(fused, p);
  double residual = prob - (label ? 1.0 : 0.0);  // dL/dz for sigmoid + BCE

  FusionGradients g;
  g.classifier_b = residual;
  g.classifier_w.assign(p.dim, 0.0);
  for (std::size_t c = 0; c < p.dim; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < lq; ++r) mean += fused.at(r, c);
    g.classifier_w[c] = residual * mean / static_cast<double>(lq);
  }

  // dL/dF: every row is residual * w / l_q.
  Matrix g_fused(lq, p.dim);
  for (std::size_t r = 0; r < lq; ++r)
    for (std::size_t c = 0; c < p.dim; ++c)
      g_fused.at(r, c) = residual * p.classifier_w[c] / static_cast<double>(lq);

  double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  for (std::size_t h = 0; h < p.heads; ++h) {
    const HeadForward& f = heads[h];
    std::size_t lk = h_c.rows;

    Matrix g_attended(lq, dh);
    for (std::size_t r = 0; r < lq; ++r)
      for (std::size_t d = 0; d < dh; ++d) g_attended.at(r, d) = g_fused.at(r, h * dh + d);

    // attended = weights * v
    Matrix g_weights(lq, lk);
    for (std::size_t r = 0; r < lq; ++r)
      for (std::size_t c = 0; c < lk; ++c) {
        double dot = 0.0;
        for (std::size_t d = 0; d < dh; ++d) dot += g_attended.at(r, d) * f.v.at(c, d);
        g_weights.at(r, c) = dot;
      }
    Matrix g_v(lk, dh);
    for (std::size_t c = 0; c < lk; ++c)
      for (std::size_t d = 0; d < dh; ++d) {
        double dot = 0.0;
        for (std::size_t r = 0; r < lq; ++r) dot += f.weights.at(r, c) * g_attended.at(r, d);
        g_v.at(c, d) = dot;
      }

    // softmax backward per row: g_s = p .* (g_p - sum(g_p .* p))
    Matrix g_logits(lq, lk);
    for (std::size_t r = 0; r < lq; ++r) {
      double dot = 0.0;
      for (std::size_t c = 0; c < lk; ++c) dot += g_weights.at(r, c) * f.weights.at(r, c);
      for (std::size_t c = 0; c < lk; ++c)
        g_logits.at(r, c) = f.weights.at(r, c) * (g_weights.at(r, c) - dot);
    }

    // logits = scale * q k^T
    Matrix g_q(lq, dh);
    for (std::size_t r = 0; r < lq; ++r)
      for (std::size_t d = 0; d < dh; ++d) {
        double dot = 0.0;
        for (std::size_t c = 0; c < lk; ++c) dot += g_logits.at(r, c) * f.k.at(c, d);
        g_q.at(r, d) = dot * scale;
      }
    Matrix g_k(lk, dh);
    for (std::size_t c = 0; c < lk; ++c)
      for (std::size_t d = 0; d < dh; ++d) {
        double dot = 0.0;
        for (std::size_t r = 0; r < lq; ++r) dot += g_logits.at(r, c) * f.q.at(r, d);
        g_k.at(c, d) = dot * scale;
      }

    // q = h_ct w_q, k = h_c w_k, v = h_c w_v
    auto project_back = [](const Matrix& input, const Matrix& grad_out) {
      Matrix g_w(input.cols, grad_out.cols);
      for (std::size_t i = 0; i < input.cols; ++i)
        for (std::size_t d = 0; d < grad_out.cols; ++d) {
          double dot = 0.0;
          for (std::size_t r = 0; r < input.rows; ++r)
            dot += input.at(r, i) * grad_out.at(r, d);
          g_w.at(i, d) = dot;
        }
      return g_w;
    };
    g.w_q.push_back(project_back(h_ct, g_q));
    g.w_k.push_back(project_back(h_c, g_k));
    g.w_v.push_back(project_back(h_c, g_v));
  }
  return g;
}

namespace {

// Flat views over every parameter, pairing the live value with its analytic
// gradient so the finite-difference loop can walk them uniformly.
std::vector<std::pair<double*, double>> param_views(FusionParams& p,
                                                    const FusionGradients& g) {
  std::vector<std::pair<double*, double>> views;
  for (std::size_t h = 0; h < p.heads; ++h) {
    for (std::size_t i = 0; i < p.w_q[h].data.size(); ++i)
      views.push_back({&p.w_q[h].data[i], g.w_q[h].data[i]});
    for (std::size_t i = 0; i < p.w_k[h].data.size(); ++i)
      views.push_back({&p.w_k[h].data[i], g.w_k[h].data[i]});
    for (std::size_t i = 0; i < p.w_v[h].data.size(); ++i)
      views.push_back({&p.w_v[h].data[i], g.w_v[h].data[i]});
  }
  for (std::size_t i = 0; i < p.classifier_w.size(); ++i)
    views.push_back({&p.classifier_w[i], g.classifier_w[i]});
  views.push_back({&p.classifier_b, g.classifier_b});
  return views;
}

}  // namespace

double grad_check(const EmbeddingMatrix& h_ct, const EmbeddingMatrix& h_c,
                  const FusionParams& p, int label, double step) {
  FusionGradients analytic = fusion_gradients(h_ct, h_c, p, label);
  FusionParams probe = p;
  auto views = param_views(probe, analytic);
  double max_rel = 0.0;
  for (auto& [value, grad] : views) {
    double original = *value;
    *value = original + step;
    double up = fusion_forward(h_ct, h_c, probe, label).loss;
    *value = original - step;
    double down = fusion_forward(h_ct, h_c, probe, label).loss;
    *value = original;
    double numeric = (up - down) / (2.0 * step);
    double rel = std::abs(numeric - grad) /
                 std::max({std::abs(numeric), std::abs(grad), 1e-8});
    max_rel = std::max(max_rel, rel);
  }
  return max_rel;
}

}  // namespace sct
