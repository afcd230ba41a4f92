#include "mvgcn/model/params.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mvgcn::model {

using numkit::Tensor;

namespace {

class InitRng {
 public:
  explicit InitRng(std::uint64_t seed) : engine_(seed) {}

  /// Glorot-uniform fill: +-sqrt(6 / (fan_in + fan_out)).
  void glorot(Tensor& t, std::int64_t fan_in, std::int64_t fan_out) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (double& v : t.data) v = (2.0 * unit() - 1.0) * bound;
  }

 private:
  double unit() {  // [0, 1), stable across standard libraries
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  std::mt19937_64 engine_;
};

}  // namespace

ModelParams ModelParams::init(const ModelConfig& cfg, const dataprep::ViewConfig& views,
                              std::int64_t nodes, std::int64_t channels,
                              std::int64_t external_width) {
  cfg.validate();
  views.validate();
  ModelParams p;
  InitRng rng(cfg.seed);
  const std::int64_t f = cfg.hidden_width;

  for (int v = 0; v < dataprep::kViewCount; ++v) {
    const int len = views.lengths[static_cast<std::size_t>(v)];
    if (len == 0) continue;  // absent views own no parameters
    ViewParams vp;
    const std::int64_t in_width = channels * len;
    vp.w_in = Tensor::zeros({in_width, f});
    rng.glorot(vp.w_in, in_width, f);
    vp.w_res.resize(static_cast<std::size_t>(cfg.residual_units));
    for (auto& w : vp.w_res) {
      w = Tensor::zeros({f, f});
      rng.glorot(w, f, f);
    }
    vp.w_out = Tensor::zeros({f, channels});
    rng.glorot(vp.w_out, f, channels);
    p.views[static_cast<std::size_t>(v)] = std::move(vp);
  }

  const int active = views.active_views();
  for (int v = 0; v < dataprep::kViewCount; ++v)
    if (views.lengths[static_cast<std::size_t>(v)] > 0)
      p.fusion[static_cast<std::size_t>(v)] =
          Tensor::full({nodes, channels}, 1.0 / static_cast<double>(active));

  const bool with_ext = cfg.use_external && external_width > 0;
  if (with_ext) {
    Tensor w = Tensor::zeros({external_width, cfg.embed_width});
    rng.glorot(w, external_width, cfg.embed_width);
    p.w_ext = std::move(w);
  }
  if (cfg.use_meta) {
    Tensor w = Tensor::zeros({32, cfg.embed_width});
    rng.glorot(w, 32, cfg.embed_width);
    p.w_meta = std::move(w);
  }
  if (with_ext || cfg.use_meta) {
    const std::int64_t concat_width = cfg.embed_width * ((with_ext ? 1 : 0) + (cfg.use_meta ? 1 : 0));
    Tensor w = Tensor::zeros({concat_width, nodes * channels});
    rng.glorot(w, concat_width, nodes * channels);
    p.w_con = std::move(w);
  }
  if (cfg.postnet == ModelConfig::PostNet::Linear) {
    Tensor w = Tensor::zeros({nodes * channels, nodes * channels});
    rng.glorot(w, nodes * channels, nodes * channels);
    p.w_post = std::move(w);
  }
  return p;
}

void ModelParams::for_each(const std::function<void(const std::string&, Tensor&)>& fn) {
  for (int v = 0; v < dataprep::kViewCount; ++v) {
    auto& vp = views[static_cast<std::size_t>(v)];
    if (!vp) continue;
    const std::string prefix = "view" + std::to_string(v) + ".";
    fn(prefix + "w_in", vp->w_in);
    for (std::size_t k = 0; k < vp->w_res.size(); ++k)
      fn(prefix + "res" + std::to_string(k), vp->w_res[k]);
    fn(prefix + "w_out", vp->w_out);
  }
  for (int v = 0; v < dataprep::kViewCount; ++v)
    if (fusion[static_cast<std::size_t>(v)])
      fn("fusion" + std::to_string(v), *fusion[static_cast<std::size_t>(v)]);
  if (w_ext) fn("w_ext", *w_ext);
  if (w_meta) fn("w_meta", *w_meta);
  if (w_con) fn("w_con", *w_con);
  if (w_post) fn("w_post", *w_post);
}

void ModelParams::for_each(
    const std::function<void(const std::string&, const Tensor&)>& fn) const {
  const_cast<ModelParams*>(this)->for_each(
      [&fn](const std::string& name, Tensor& t) { fn(name, t); });
}

std::vector<Tensor*> ModelParams::tensors() {
  std::vector<Tensor*> out;
  for_each([&out](const std::string&, Tensor& t) { out.push_back(&t); });
  return out;
}

std::vector<std::string> ModelParams::names() const {
  std::vector<std::string> out;
  for_each([&out](const std::string& name, const Tensor&) { out.push_back(name); });
  return out;
}

std::int64_t ModelParams::parameter_count() const {
  std::int64_t n = 0;
  for_each([&n](const std::string&, const Tensor& t) { n += t.numel(); });
  return n;
}

}  // namespace mvgcn::model
