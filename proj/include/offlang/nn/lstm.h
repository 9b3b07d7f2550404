// Copyright 2026 The offlang Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OFFLANG_NN_LSTM_H_
#define OFFLANG_NN_LSTM_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "offlang/errors.h"
#include "offlang/nn/dense.h"
#include "offlang/nn/tensor.h"
#include "offlang/random.h"

namespace offlang::nn {

// Gate rows are stacked in the order input, forget, candidate, output:
// rows [0,h) i, [h,2h) f, [2h,3h) g, [3h,4h) o.
template <typename T>
struct LstmParams {
  Tensor<T> W;  // 4h x d
  Tensor<T> U;  // 4h x h
  Tensor<T> b;  // 4h

  std::size_t hidden() const { return b.size() / 4; }
  std::size_t input() const { return W.cols(); }

  static LstmParams zeros(std::size_t hidden, std::size_t input) {
    return {Tensor<T>({4 * hidden, input}), Tensor<T>({4 * hidden, hidden}),
            Tensor<T>({4 * hidden})};
  }

  // Uniform +-0.05 weights, forget-gate bias 1.
  static LstmParams init(std::size_t hidden, std::size_t input, Rng &rng) {
    LstmParams p = zeros(hidden, input);
    for (auto &v : p.W.values) v = static_cast<T>(rng.uniform(-0.05, 0.05));
    for (auto &v : p.U.values) v = static_cast<T>(rng.uniform(-0.05, 0.05));
    for (std::size_t k = 0; k < hidden; ++k) p.b[hidden + k] = T(1);
    return p;
  }

  void validate() const {
    const std::size_t h = hidden();
    if (b.size() % 4 != 0 || W.rank() != 2 || U.rank() != 2 ||
        W.rows() != 4 * h || U.rows() != 4 * h || U.cols() != h) {
      throw ShapeError("lstm: inconsistent parameter shapes");
    }
  }

  std::vector<ParamRef<T>> refs(const std::string &prefix, LstmParams &grads) {
    return {{prefix + ".W", W.span(), grads.W.span()},
            {prefix + ".U", U.span(), grads.U.span()},
            {prefix + ".b", b.span(), grads.b.span()}};
  }
};

template <typename T>
struct LstmStepCache {
  std::vector<T> x, h_prev, c_prev;
  std::vector<T> i, f, g, o;
  std::vector<T> c, tanh_c;
};

template <typename T>
void lstm_step_forward(const LstmParams<T> &p, std::span<const T> x,
                       std::span<const T> h_prev, std::span<const T> c_prev,
                       LstmStepCache<T> &cache, std::span<T> h_out,
                       std::span<T> c_out) {
  const std::size_t h = p.hidden();
  const std::size_t d = p.input();
  std::vector<T> z(4 * h);
  for (std::size_t r = 0; r < 4 * h; ++r) {
    T acc = p.b[r];
    const T *w = p.W.values.data() + r * d;
    for (std::size_t k = 0; k < d; ++k) acc += w[k] * x[k];
    const T *u = p.U.values.data() + r * h;
    for (std::size_t k = 0; k < h; ++k) acc += u[k] * h_prev[k];
    z[r] = acc;
  }
  cache.x.assign(x.begin(), x.end());
  cache.h_prev.assign(h_prev.begin(), h_prev.end());
  cache.c_prev.assign(c_prev.begin(), c_prev.end());
  cache.i.resize(h);
  cache.f.resize(h);
  cache.g.resize(h);
  cache.o.resize(h);
  cache.c.resize(h);
  cache.tanh_c.resize(h);
  for (std::size_t k = 0; k < h; ++k) {
    cache.i[k] = sigmoid(z[k]);
    cache.f[k] = sigmoid(z[h + k]);
    cache.g[k] = std::tanh(z[2 * h + k]);
    cache.o[k] = sigmoid(z[3 * h + k]);
    cache.c[k] = cache.f[k] * c_prev[k] + cache.i[k] * cache.g[k];
    cache.tanh_c[k] = std::tanh(cache.c[k]);
    c_out[k] = cache.c[k];
    h_out[k] = cache.o[k] * cache.tanh_c[k];
  }
}

// One cell step: c = f*c_prev + i*g, h = o*tanh(c).
template <typename T>
std::pair<Tensor<T>, Tensor<T>> lstm_step(const LstmParams<T> &p,
                                          const Tensor<T> &x,
                                          const Tensor<T> &h_prev,
                                          const Tensor<T> &c_prev) {
  p.validate();
  const std::size_t h = p.hidden();
  if (x.size() != p.input() || h_prev.size() != h || c_prev.size() != h) {
    throw ShapeError("lstm_step: input or state size mismatch");
  }
  LstmStepCache<T> cache;
  Tensor<T> h_out({h});
  Tensor<T> c_out({h});
  lstm_step_forward<T>(p, x.span(), h_prev.span(), c_prev.span(), cache,
                       h_out.span(), c_out.span());
  return {std::move(h_out), std::move(c_out)};
}

// Backpropagates dh and dc (gradients on this step's outputs). Parameter
// gradients accumulate into `grads`; dx, dh_prev and dc_prev are overwritten.
template <typename T>
void lstm_step_backward(const LstmParams<T> &p, const LstmStepCache<T> &cache,
                        std::span<const T> dh, std::span<const T> dc,
                        LstmParams<T> &grads, std::span<T> dx,
                        std::span<T> dh_prev, std::span<T> dc_prev) {
  const std::size_t h = p.hidden();
  const std::size_t d = p.input();
  std::vector<T> da(4 * h);
  for (std::size_t k = 0; k < h; ++k) {
    const T i = cache.i[k], f = cache.f[k], g = cache.g[k], o = cache.o[k];
    const T tc = cache.tanh_c[k];
    const T d_o = dh[k] * tc;
    const T d_c = dc[k] + dh[k] * o * (T(1) - tc * tc);
    da[k] = d_c * g * i * (T(1) - i);
    da[h + k] = d_c * cache.c_prev[k] * f * (T(1) - f);
    da[2 * h + k] = d_c * i * (T(1) - g * g);
    da[3 * h + k] = d_o * o * (T(1) - o);
    dc_prev[k] = d_c * f;
  }
  if (!dx.empty()) std::fill(dx.begin(), dx.end(), T(0));
  std::fill(dh_prev.begin(), dh_prev.end(), T(0));
  for (std::size_t r = 0; r < 4 * h; ++r) {
    const T a = da[r];
    grads.b[r] += a;
    if (a == T(0)) continue;
    const T *w = p.W.values.data() + r * d;
    T *gw = grads.W.values.data() + r * d;
    for (std::size_t k = 0; k < d; ++k) {
      gw[k] += a * cache.x[k];
      if (!dx.empty()) dx[k] += w[k] * a;
    }
    const T *u = p.U.values.data() + r * h;
    T *gu = grads.U.values.data() + r * h;
    for (std::size_t k = 0; k < h; ++k) {
      gu[k] += a * cache.h_prev[k];
      dh_prev[k] += u[k] * a;
    }
  }
}

template <typename T>
struct BiLstmCache {
  std::vector<LstmStepCache<T>> fwd;  // step t processes position t
  std::vector<LstmStepCache<T>> bwd;  // step t processes position len-1-t
  std::size_t true_len = 0;
  std::size_t input = 0;
};

// xs holds at least true_len rows of width d, row-major. Writes
// concat(h_fwd_final, h_bwd_final) into out (2h). Rows past true_len are
// never read.
template <typename T>
void bilstm_forward(const LstmParams<T> &p_fwd, const LstmParams<T> &p_bwd,
                    std::span<const T> xs, std::size_t true_len,
                    BiLstmCache<T> &cache, std::span<T> out) {
  const std::size_t h = p_fwd.hidden();
  const std::size_t d = p_fwd.input();
  cache.true_len = true_len;
  cache.input = d;
  cache.fwd.resize(true_len);
  cache.bwd.resize(true_len);
  std::fill(out.begin(), out.end(), T(0));
  if (true_len == 0) return;

  std::vector<T> hs(h, T(0)), cs(h, T(0)), hn(h), cn(h);
  for (std::size_t t = 0; t < true_len; ++t) {
    lstm_step_forward<T>(p_fwd, xs.subspan(t * d, d), hs, cs, cache.fwd[t], hn, cn);
    std::swap(hs, hn);
    std::swap(cs, cn);
  }
  std::copy(hs.begin(), hs.end(), out.begin());

  std::fill(hs.begin(), hs.end(), T(0));
  std::fill(cs.begin(), cs.end(), T(0));
  for (std::size_t t = 0; t < true_len; ++t) {
    const std::size_t pos = true_len - 1 - t;
    lstm_step_forward<T>(p_bwd, xs.subspan(pos * d, d), hs, cs, cache.bwd[t], hn, cn);
    std::swap(hs, hn);
    std::swap(cs, cn);
  }
  std::copy(hs.begin(), hs.end(), out.begin() + static_cast<std::ptrdiff_t>(h));
}

// dout is the gradient on the 2h output. Accumulates parameter gradients and
// adds input gradients into dxs (true_len x d) when dxs is nonempty.
template <typename T>
void bilstm_backward(const LstmParams<T> &p_fwd, const LstmParams<T> &p_bwd,
                     const BiLstmCache<T> &cache, std::span<const T> dout,
                     LstmParams<T> &g_fwd, LstmParams<T> &g_bwd,
                     std::span<T> dxs) {
  const std::size_t h = p_fwd.hidden();
  const std::size_t d = cache.input;
  const std::size_t len = cache.true_len;
  if (len == 0) return;
  std::vector<T> dh(h), dc(h), dh_prev(h), dc_prev(h), dx(d);

  const auto run = [&](const LstmParams<T> &p, const std::vector<LstmStepCache<T>> &steps,
                       LstmParams<T> &g, std::size_t out_offset, bool reversed) {
    std::copy(dout.begin() + static_cast<std::ptrdiff_t>(out_offset),
              dout.begin() + static_cast<std::ptrdiff_t>(out_offset + h), dh.begin());
    std::fill(dc.begin(), dc.end(), T(0));
    for (std::size_t s = len; s-- > 0;) {
      lstm_step_backward<T>(p, steps[s], dh, dc, g,
                            dxs.empty() ? std::span<T>() : std::span<T>(dx),
                            dh_prev, dc_prev);
      if (!dxs.empty()) {
        const std::size_t pos = reversed ? len - 1 - s : s;
        for (std::size_t k = 0; k < d; ++k) dxs[pos * d + k] += dx[k];
      }
      std::swap(dh, dh_prev);
      std::swap(dc, dc_prev);
    }
  };
  run(p_fwd, cache.fwd, g_fwd, 0, false);
  run(p_bwd, cache.bwd, g_bwd, h, true);
}

// Concatenated final forward and backward hidden states over the first
// true_len inputs. Zero vector when true_len is 0.
template <typename T>
Tensor<T> bilstm(const LstmParams<T> &p_fwd, const LstmParams<T> &p_bwd,
                 const std::vector<Tensor<T>> &xs, std::size_t true_len) {
  p_fwd.validate();
  p_bwd.validate();
  if (p_fwd.hidden() != p_bwd.hidden() || p_fwd.input() != p_bwd.input()) {
    throw ShapeError("bilstm: forward and backward cells differ in shape");
  }
  if (true_len > xs.size()) {
    throw ArgumentError("bilstm: true_len exceeds sequence length");
  }
  const std::size_t d = p_fwd.input();
  std::vector<T> flat;
  flat.reserve(true_len * d);
  for (std::size_t t = 0; t < true_len; ++t) {
    if (xs[t].size() != d) throw ShapeError("bilstm: input width mismatch");
    flat.insert(flat.end(), xs[t].values.begin(), xs[t].values.end());
  }
  BiLstmCache<T> cache;
  Tensor<T> out({2 * p_fwd.hidden()});
  bilstm_forward<T>(p_fwd, p_bwd, flat, true_len, cache, out.span());
  return out;
}

}  // namespace offlang::nn

#endif  // OFFLANG_NN_LSTM_H_
