/* Copyright 2026 The LesionKit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef LESIONKIT_NN_LAYERS_HPP_
#define LESIONKIT_NN_LAYERS_HPP_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lesionkit/core/rng.hpp"
#include "lesionkit/nn/tensor.hpp"

namespace lesionkit::nn {

template <typename T>
struct ParamRef {
  std::string name;
  Mat<T>* value = nullptr;
  Mat<T>* grad = nullptr;  // lazily allocated; may be empty until first backward
};

/// One computation node. forward() caches whatever backward() needs when
/// `training` is set; backward() ADDS its contribution into grad_in so nodes
/// with shared inputs accumulate naturally.
template <typename T>
class Layer {
 public:
  using Inputs = std::span<const Tensor3<T>* const>;

  virtual ~Layer() = default;
  virtual Shape3 out_shape(std::span<const Shape3> in) const = 0;
  virtual void forward(Inputs in, Tensor3<T>& out, bool training, std::uint64_t key) = 0;
  virtual void backward(const Tensor3<T>& grad_out, std::span<Tensor3<T>* const> grad_in) = 0;
  virtual void collect_params(const std::string& prefix, std::vector<ParamRef<T>>& out) {}
};

namespace detail {

inline int conv_out(int in, int k, int stride, int pad) {
  return (in + 2 * pad - k) / stride + 1;
}

inline int pool_out(int in, int k, int stride, int pad, bool ceil_mode) {
  const int span = in + 2 * pad - k;
  int out = ceil_mode ? (span + stride - 1) / stride + 1 : span / stride + 1;
  if (pad > 0 && (out - 1) * stride >= in + pad) --out;  // last window must touch the input
  return out;
}

template <typename T>
void ensure_grad(Mat<T>& grad, Eigen::Index rows, Eigen::Index cols) {
  if (grad.size() == 0) grad = Mat<T>::Zero(rows, cols);
}

}  // namespace detail

template <typename T>
class Conv2d final : public Layer<T> {
 public:
  Conv2d(int in_c, int out_c, int kernel, int stride, int pad, std::uint64_t /*unused*/ = 0)
      : in_c_(in_c), out_c_(out_c), k_(kernel), stride_(stride), pad_(pad) {
    weight_ = Mat<T>::Zero(out_c_, in_c_ * k_ * k_);
    bias_ = Mat<T>::Zero(out_c_, 1);
  }

  Shape3 out_shape(std::span<const Shape3> in) const override {
    const Shape3 s = in[0];
    if (s.c != in_c_) throw ValidationError("Conv2d: channel mismatch");
    const int oh = detail::conv_out(s.h, k_, stride_, pad_);
    const int ow = detail::conv_out(s.w, k_, stride_, pad_);
    if (oh < 1 || ow < 1) throw ValidationError("Conv2d: input too small for kernel");
    return {out_c_, oh, ow};
  }

  void forward(typename Layer<T>::Inputs in, Tensor3<T>& out, bool training,
               std::uint64_t) override {
    const Tensor3<T>& x = *in[0];
    in_shape_ = x.shape();
    const Shape3 os = out_shape(std::span<const Shape3>(&in_shape_, 1));
    out.resize(os);
    im2col(x, os.h, os.w, cols_);
    out.as_matrix().noalias() = weight_ * cols_;
    out.as_matrix().colwise() += bias_.col(0);
    if (!training) cols_.resize(0, 0);  // keep eval passes lean
  }

  void backward(const Tensor3<T>& grad_out, std::span<Tensor3<T>* const> grad_in) override {
    detail::ensure_grad(dweight_, weight_.rows(), weight_.cols());
    detail::ensure_grad(dbias_, bias_.rows(), bias_.cols());
    const auto g = grad_out.as_matrix();
    dweight_.noalias() += g * cols_.transpose();
    dbias_.col(0).noalias() += g.rowwise().sum();
    dcols_.noalias() = weight_.transpose() * g;
    col2im(dcols_, grad_out.h, grad_out.w, *grad_in[0]);
  }

  void collect_params(const std::string& prefix, std::vector<ParamRef<T>>& out) override {
    out.push_back({prefix + ".weight", &weight_, &dweight_});
    out.push_back({prefix + ".bias", &bias_, &dbias_});
  }

  int fan_in() const { return in_c_ * k_ * k_; }

 private:
  void im2col(const Tensor3<T>& x, int oh, int ow, RowMat<T>& cols) const {
    cols.resize(static_cast<Eigen::Index>(in_c_) * k_ * k_, static_cast<Eigen::Index>(oh) * ow);
    for (int ic = 0; ic < in_c_; ++ic) {
      for (int ky = 0; ky < k_; ++ky) {
        for (int kx = 0; kx < k_; ++kx) {
          const Eigen::Index r = (static_cast<Eigen::Index>(ic) * k_ + ky) * k_ + kx;
          T* dst = cols.data() + r * cols.cols();
          for (int oy = 0; oy < oh; ++oy) {
            const int iy = oy * stride_ - pad_ + ky;
            if (iy < 0 || iy >= x.h) {
              for (int ox = 0; ox < ow; ++ox) dst[oy * ow + ox] = T(0);
              continue;
            }
            const T* src = x.data.data() + (static_cast<std::ptrdiff_t>(ic) * x.h + iy) * x.w;
            for (int ox = 0; ox < ow; ++ox) {
              const int ix = ox * stride_ - pad_ + kx;
              dst[oy * ow + ox] = (ix < 0 || ix >= x.w) ? T(0) : src[ix];
            }
          }
        }
      }
    }
  }

  void col2im(const RowMat<T>& dcols, int oh, int ow, Tensor3<T>& gin) const {
    for (int ic = 0; ic < in_c_; ++ic) {
      for (int ky = 0; ky < k_; ++ky) {
        for (int kx = 0; kx < k_; ++kx) {
          const Eigen::Index r = (static_cast<Eigen::Index>(ic) * k_ + ky) * k_ + kx;
          const T* src = dcols.data() + r * dcols.cols();
          for (int oy = 0; oy < oh; ++oy) {
            const int iy = oy * stride_ - pad_ + ky;
            if (iy < 0 || iy >= gin.h) continue;
            T* dst = gin.data.data() + (static_cast<std::ptrdiff_t>(ic) * gin.h + iy) * gin.w;
            for (int ox = 0; ox < ow; ++ox) {
              const int ix = ox * stride_ - pad_ + kx;
              if (ix >= 0 && ix < gin.w) dst[ix] += src[oy * ow + ox];
            }
          }
        }
      }
    }
  }

  int in_c_, out_c_, k_, stride_, pad_;
  Mat<T> weight_, bias_, dweight_, dbias_;
  Shape3 in_shape_;
  RowMat<T> cols_, dcols_;
};

template <typename T>
class ReLU final : public Layer<T> {
 public:
  Shape3 out_shape(std::span<const Shape3> in) const override { return in[0]; }

  void forward(typename Layer<T>::Inputs in, Tensor3<T>& out, bool training,
               std::uint64_t) override {
    const Tensor3<T>& x = *in[0];
    out.resize(x.shape());
    out.data = x.data.cwiseMax(T(0));
    if (training) mask_ = (x.data.array() > T(0)).template cast<T>();
  }

  void backward(const Tensor3<T>& grad_out, std::span<Tensor3<T>* const> grad_in) override {
    grad_in[0]->data.array() += grad_out.data.array() * mask_.array();
  }

 private:
  Vec<T> mask_;
};

template <typename T>
class MaxPool2d final : public Layer<T> {
 public:
  MaxPool2d(int kernel, int stride, int pad = 0, bool ceil_mode = false)
      : k_(kernel), stride_(stride), pad_(pad), ceil_(ceil_mode) {}

  Shape3 out_shape(std::span<const Shape3> in) const override {
    const Shape3 s = in[0];
    const int oh = detail::pool_out(s.h, k_, stride_, pad_, ceil_);
    const int ow = detail::pool_out(s.w, k_, stride_, pad_, ceil_);
    if (oh < 1 || ow < 1) throw ValidationError("MaxPool2d: input too small");
    return {s.c, oh, ow};
  }

  void forward(typename Layer<T>::Inputs in, Tensor3<T>& out, bool training,
               std::uint64_t) override {
    const Tensor3<T>& x = *in[0];
    in_shape_ = x.shape();
    const Shape3 os = out_shape(std::span<const Shape3>(&in_shape_, 1));
    out.resize(os);
    if (training) argmax_.assign(static_cast<std::size_t>(os.size()), 0);
    for (int c = 0; c < os.c; ++c) {
      const T* xp = x.data.data() + static_cast<std::ptrdiff_t>(c) * x.h * x.w;
      for (int oy = 0; oy < os.h; ++oy) {
        const int y0 = std::max(oy * stride_ - pad_, 0);
        const int y1 = std::min(oy * stride_ - pad_ + k_, x.h);
        for (int ox = 0; ox < os.w; ++ox) {
          const int x0 = std::max(ox * stride_ - pad_, 0);
          const int x1 = std::min(ox * stride_ - pad_ + k_, x.w);
          T best = xp[y0 * x.w + x0];
          int best_idx = y0 * x.w + x0;
          for (int iy = y0; iy < y1; ++iy) {
            for (int ix = x0; ix < x1; ++ix) {
              const T v = xp[iy * x.w + ix];
              if (v > best) {
                best = v;
                best_idx = iy * x.w + ix;
              }
            }
          }
          const int oidx = (c * os.h + oy) * os.w + ox;
          out.data[oidx] = best;
          if (training) {
            argmax_[static_cast<std::size_t>(oidx)] = c * x.h * x.w + best_idx;
          }
        }
      }
    }
  }

  void backward(const Tensor3<T>& grad_out, std::span<Tensor3<T>* const> grad_in) override {
    for (int i = 0; i < grad_out.size(); ++i) {
      grad_in[0]->data[argmax_[static_cast<std::size_t>(i)]] += grad_out.data[i];
    }
  }

 private:
  int k_, stride_, pad_;
  bool ceil_;
  Shape3 in_shape_;
  std::vector<int> argmax_;
};

/// Average pooling onto a fixed output grid (bin i spans
/// [floor(i*H/out), ceil((i+1)*H/out))); the identity when sizes match, which
/// lets one classifier head serve multiple input geometries.
template <typename T>
class AdaptiveAvgPool final : public Layer<T> {
 public:
  AdaptiveAvgPool(int out_h, int out_w) : oh_(out_h), ow_(out_w) {}

  Shape3 out_shape(std::span<const Shape3> in) const override {
    if (in[0].h < oh_ || in[0].w < ow_) {
      throw ValidationError("AdaptiveAvgPool: input smaller than output grid");
    }
    return {in[0].c, oh_, ow_};
  }

  void forward(typename Layer<T>::Inputs in, Tensor3<T>& out, bool, std::uint64_t) override {
    const Tensor3<T>& x = *in[0];
    in_shape_ = x.shape();
    out.resize({x.c, oh_, ow_});
    for (int c = 0; c < x.c; ++c) {
      auto xc = x.channel(c);
      auto oc = out.channel(c);
      for (int oy = 0; oy < oh_; ++oy) {
        const auto [y0, y1] = bin(oy, x.h, oh_);
        for (int ox = 0; ox < ow_; ++ox) {
          const auto [x0, x1] = bin(ox, x.w, ow_);
          oc(oy, ox) = xc.block(y0, x0, y1 - y0, x1 - x0).mean();
        }
      }
    }
  }

  void backward(const Tensor3<T>& grad_out, std::span<Tensor3<T>* const> grad_in) override {
    Tensor3<T>& gin = *grad_in[0];
    for (int c = 0; c < gin.c; ++c) {
      auto gc = gin.channel(c);
      auto go = grad_out.channel(c);
      for (int oy = 0; oy < oh_; ++oy) {
        const auto [y0, y1] = bin(oy, in_shape_.h, oh_);
        for (int ox = 0; ox < ow_; ++ox) {
          const auto [x0, x1] = bin(ox, in_shape_.w, ow_);
          const T share = go(oy, ox) / static_cast<T>((y1 - y0) * (x1 - x0));
          gc.block(y0, x0, y1 - y0, x1 - x0).array() += share;
        }
      }
    }
  }

 private:
  static std::pair<int, int> bin(int i, int in, int out) {
    return {(i * in) / out, ((i + 1) * in + out - 1) / out};
  }

  int oh_, ow_;
  Shape3 in_shape_;
};

template <typename T>
class Linear final : public Layer<T> {
 public:
  Linear(int in_features, int out_features) : in_(in_features), out_(out_features) {
    weight_ = Mat<T>::Zero(out_, in_);
    bias_ = Mat<T>::Zero(out_, 1);
  }

  Shape3 out_shape(std::span<const Shape3> in) const override {
    if (in[0].size() != in_) throw ValidationError("Linear: feature count mismatch");
    return {out_, 1, 1};
  }

  void forward(typename Layer<T>::Inputs in, Tensor3<T>& out, bool training,
               std::uint64_t) override {
    const Tensor3<T>& x = *in[0];
    in_shape_ = x.shape();
    out.resize({out_, 1, 1});
    out.data.noalias() = weight_ * x.data + bias_.col(0);
    if (training) input_ = x.data;
  }

  void backward(const Tensor3<T>& grad_out, std::span<Tensor3<T>* const> grad_in) override {
    detail::ensure_grad(dweight_, weight_.rows(), weight_.cols());
    detail::ensure_grad(dbias_, bias_.rows(), bias_.cols());
    dweight_.noalias() += grad_out.data * input_.transpose();
    dbias_.col(0) += grad_out.data;
    grad_in[0]->data.noalias() += weight_.transpose() * grad_out.data;
  }

  void collect_params(const std::string& prefix, std::vector<ParamRef<T>>& out) override {
    out.push_back({prefix + ".weight", &weight_, &dweight_});
    out.push_back({prefix + ".bias", &bias_, &dbias_});
  }

  int fan_in() const { return in_; }

 private:
  int in_, out_;
  Mat<T> weight_, bias_, dweight_, dbias_;
  Shape3 in_shape_;
  Vec<T> input_;
};

/// Channel-axis concatenation of same-sized feature maps.
template <typename T>
class Concat final : public Layer<T> {
 public:
  Shape3 out_shape(std::span<const Shape3> in) const override {
    Shape3 s = in[0];
    for (std::size_t i = 1; i < in.size(); ++i) {
      if (in[i].h != s.h || in[i].w != s.w) {
        throw ValidationError("Concat: spatial size mismatch");
      }
      s.c += in[i].c;
    }
    return s;
  }

  void forward(typename Layer<T>::Inputs in, Tensor3<T>& out, bool, std::uint64_t) override {
    splits_.clear();
    int total_c = 0;
    for (const auto* t : in) {
      splits_.push_back(t->c);
      total_c += t->c;
    }
    out.resize({total_c, in[0]->h, in[0]->w});
    Eigen::Index offset = 0;
    for (const auto* t : in) {
      out.data.segment(offset, t->data.size()) = t->data;
      offset += t->data.size();
    }
  }

  void backward(const Tensor3<T>& grad_out, std::span<Tensor3<T>* const> grad_in) override {
    Eigen::Index offset = 0;
    for (std::size_t i = 0; i < grad_in.size(); ++i) {
      const Eigen::Index n = grad_in[i]->data.size();
      grad_in[i]->data += grad_out.data.segment(offset, n);
      offset += n;
    }
  }

 private:
  std::vector<int> splits_;
};

/// Inverted dropout; masks are drawn from a stream keyed by the per-sample
/// forward key and the node's salt, so training runs replay exactly.
template <typename T>
class Dropout final : public Layer<T> {
 public:
  explicit Dropout(double rate) : rate_(rate) {
    if (rate < 0.0 || rate >= 1.0) throw ValidationError("Dropout: rate must be in [0,1)");
  }

  Shape3 out_shape(std::span<const Shape3> in) const override { return in[0]; }

  void forward(typename Layer<T>::Inputs in, Tensor3<T>& out, bool training,
               std::uint64_t key) override {
    const Tensor3<T>& x = *in[0];
    out.resize(x.shape());
    if (!training || rate_ == 0.0) {
      out.data = x.data;
      mask_.resize(0);
      return;
    }
    RngStream rng(key);
    mask_.resize(x.data.size());
    const T scale = static_cast<T>(1.0 / (1.0 - rate_));
    for (Eigen::Index i = 0; i < mask_.size(); ++i) {
      mask_[i] = rng.bernoulli(rate_) ? T(0) : scale;
    }
    out.data.array() = x.data.array() * mask_.array();
  }

  void backward(const Tensor3<T>& grad_out, std::span<Tensor3<T>* const> grad_in) override {
    if (mask_.size() == 0) {
      grad_in[0]->data += grad_out.data;
    } else {
      grad_in[0]->data.array() += grad_out.data.array() * mask_.array();
    }
  }

 private:
  double rate_;
  Vec<T> mask_;
};

}  // namespace lesionkit::nn

#endif  // LESIONKIT_NN_LAYERS_HPP_
