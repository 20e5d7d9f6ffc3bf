#include "wittlift/rep.hpp"

#include <map>

namespace wittlift {

Representation::Representation(GroupPtr group, RingPtr ring, uint32_t dim,
                               std::vector<Mat> generator_images)
    : group_(std::move(group)),
      ring_(std::move(ring)),
      dim_(dim),
      gen_images_(std::move(generator_images)) {
  if (gen_images_.size() != group_->generators().size())
    throw GroupError("Representation: one image per generator required");
  for (const auto& m : gen_images_) {
    if (m.n() != dim_) throw GroupError("Representation: dimension mismatch");
    if (!m.inverse()) throw GroupError("Representation: image not invertible");
  }
}

void Representation::expand() const {
  std::call_once(cache_->flag, [this] {
    std::vector<Mat> imgs(group_->order(), Mat::identity(ring_, dim_));
    const auto& words = group_->element_words();
    for (uint32_t g = 0; g < group_->order(); ++g) {
      Mat m = Mat::identity(ring_, dim_);
      for (int32_t s : words[g]) m = m * gen_images_[size_t(s)];
      imgs[g] = std::move(m);
    }
    cache_->images = std::move(imgs);
  });
}

const Mat& Representation::image(uint32_t g) const {
  expand();
  return cache_->images[g];
}

bool Representation::satisfies_relators() const {
  for (const auto& r : group_->relators()) {
    Mat m = Mat::identity(ring_, dim_);
    for (int32_t s : r) {
      if (s >= 0)
        m = m * gen_images_[size_t(s)];
      else
        m = m * *gen_images_[size_t(-s - 1)].inverse();
    }
    if (!m.is_identity()) return false;
  }
  return true;
}

bool Representation::verify_homomorphism(std::string* err) const {
  expand();
  uint32_t n = group_->order();
  if (n > 128) {
    if (err) *err = "group too large for the full check";
    return false;
  }
  const auto& imgs = cache_->images;
  for (uint32_t g = 0; g < n; ++g)
    for (uint32_t h = 0; h < n; ++h)
      if (imgs[group_->mul(g, h)] != imgs[g] * imgs[h]) {
        if (err)
          *err = "f(gh) != f(g)f(h) at (" + std::to_string(g) + "," +
                 std::to_string(h) + ")";
        return false;
      }
  return true;
}

bool Representation::strictly_equal(const Representation& o) const {
  if (group_->order() != o.group_->order() || dim_ != o.dim_) return false;
  if (ring_->name() != o.ring_->name()) return false;
  for (size_t i = 0; i < gen_images_.size(); ++i)
    if (gen_images_[i] != o.gen_images_[i]) return false;
  return true;
}

bool Representation::conjugate_to(const Representation& o) const {
  if (group_->order() != o.group_->order() || dim_ != o.dim_) return false;
  if (ring_->name() != o.ring_->name()) return false;
  if (strictly_equal(o)) return true;
  // solve f(s) X = X f'(s) for all generators s over the ring, by brute
  // enumeration for tiny rings/dimensions and by linear solving over fields
  uint64_t cells = 1;
  bool small = true;
  for (uint32_t i = 0; i < dim_ * dim_; ++i) {
    cells *= ring_->size();
    if (cells > 1u << 20) { small = false; break; }
  }
  if (!small)
    throw GroupError("conjugate_to: search space too large at this dimension");
  for (uint64_t code = 0; code < cells; ++code) {
    uint64_t c = code;
    Mat x(ring_, dim_);
    for (uint32_t i = 0; i < dim_; ++i)
      for (uint32_t j = 0; j < dim_; ++j) {
        x.set(i, j, ring_->elem_at(c % ring_->size()));
        c /= ring_->size();
      }
    if (!x.inverse()) continue;
    bool ok = true;
    for (size_t s = 0; s < gen_images_.size(); ++s)
      if (gen_images_[s] * x != x * o.gen_images_[s]) { ok = false; break; }
    if (ok) return true;
  }
  return false;
}

Representation Representation::reduced_mod_p() const {
  std::vector<Mat> imgs;
  for (const auto& m : gen_images_) imgs.push_back(reduce_mod_p(m));
  RingPtr r = imgs.empty() ? ring_ : imgs[0].ring();
  if (imgs.empty()) {
    if (auto w = std::dynamic_pointer_cast<const WittRing>(ring_))
      r = w->field();
    else if (auto z = std::dynamic_pointer_cast<const ZmodRing>(ring_))
      r = ZmodRing::make(z->p(), 1);
  }
  return Representation(group_, r, dim_, std::move(imgs));
}

nlohmann::json Representation::to_json() const {
  nlohmann::json imgs = nlohmann::json::array();
  for (const auto& m : gen_images_) imgs.push_back(m.to_json());
  return {{"group", group_->to_json()},
          {"ring", ring_->ring_json()},
          {"n", dim_},
          {"generator_images", imgs}};
}

Representation Representation::from_json(const nlohmann::json& j) {
  return from_json(j, FiniteGroup::from_json(j.at("group")));
}

Representation Representation::from_json(const nlohmann::json& j,
                                         GroupPtr group) {
  RingPtr ring = ring_from_json(j.at("ring"));
  uint32_t n = j.at("n").get<uint32_t>();
  std::vector<Mat> imgs;
  for (const auto& mj : j.at("generator_images"))
    imgs.push_back(Mat::from_json(mj, ring));
  return Representation(std::move(group), std::move(ring), n, std::move(imgs));
}

Representation induce_rep(const GroupPtr& g, const Subgroup& h,
                          const Representation& rho) {
  if (rho.group()->order() != h.elems.size())
    throw GroupError("induce_rep: representation is not of the subgroup");
  std::map<uint32_t, uint32_t> hpos;  // parent index -> subgroup index
  for (uint32_t i = 0; i < h.elems.size(); ++i) hpos[h.elems[i]] = i;
  // left coset representatives by least parent index
  std::vector<uint32_t> reps;
  std::vector<bool> covered(g->order(), false);
  for (uint32_t x = 0; x < g->order(); ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (uint32_t hh : h.elems) covered[g->mul(x, hh)] = true;
  }
  uint32_t r = uint32_t(reps.size());
  uint32_t d = rho.dim();
  RingPtr ring = rho.ring();
  auto block_of = [&](uint32_t x, uint32_t i,
                      uint32_t j) -> std::optional<Mat> {
    // block (i,j) of the induced image of x: rho(t_i^{-1} x t_j) if in H
    uint32_t y = g->mul(g->inverse(reps[i]), g->mul(x, reps[j]));
    auto it = hpos.find(y);
    if (it == hpos.end()) return std::nullopt;
    return rho.image(it->second);
  };
  std::vector<Mat> gen_images;
  for (uint32_t s : g->generators()) {
    Mat big(ring, r * d);
    for (uint32_t i = 0; i < r; ++i)
      for (uint32_t j = 0; j < r; ++j) {
        auto blk = block_of(s, i, j);
        if (!blk) continue;
        for (uint32_t a = 0; a < d; ++a)
          for (uint32_t b = 0; b < d; ++b)
            big.set(i * d + a, j * d + b, blk->at(a, b));
      }
    gen_images.push_back(std::move(big));
  }
  return Representation(g, ring, r * d, std::move(gen_images));
}

Mat induction_summand_idempotent(const Representation& induced,
                                 uint32_t block_dim) {
  Mat e(induced.ring(), induced.dim());
  for (uint32_t i = 0; i < block_dim; ++i)
    e.set(i, i, induced.ring()->one());
  return e;
}

Mat unipotent_jordan_block(FqPtr field, uint32_t size) {
  Mat m = Mat::identity(field, size);
  for (uint32_t i = 0; i + 1 < size; ++i) m.set(i, i + 1, field->one());
  return m;
}

Representation jordan_block_rep(uint32_t p, uint32_t n, FqPtr field) {
  if (field->p() != p)
    throw GroupError("jordan_block_rep: field characteristic mismatch");
  uint32_t size = 1;
  for (uint32_t i = 0; i + 1 < n; ++i) size *= p;
  size += 1;  // p^{n-1} + 1
  uint32_t order = 1;
  for (uint32_t i = 0; i < n; ++i) order *= p;
  auto g = FiniteGroup::cyclic(order);
  return Representation(g, field, size, {unipotent_jordan_block(field, size)});
}

Representation restrict_rep(const Representation& f, const Subgroup& h) {
  if (f.group()->order() < h.elems.size())
    throw GroupError("restrict_rep: subgroup larger than the group");
  std::vector<Mat> imgs;
  for (uint32_t s : h.group->generators()) imgs.push_back(f.image(h.elems[s]));
  return Representation(h.group, f.ring(), f.dim(), std::move(imgs));
}

Representation two_powers_rep(uint32_t m, uint32_t n) {
  if (m < n || n < 1) throw GroupError("two_powers_rep: need m >= n >= 1");
  auto f4 = FqField::make(2, 2);
  uint32_t dim = 1u << m;
  // nilpotent single Jordan block x of size 2^m, y = omega * x^{2^{m-n}}
  Mat x(f4, dim);
  for (uint32_t i = 0; i + 1 < dim; ++i) x.set(i, i + 1, f4->one());
  Elem omega = f4->elem_at(2);
  Mat y = x.pow(1u << (m - n)).scaled(omega);
  Mat id = Mat::identity(f4, dim);
  auto g = FiniteGroup::direct_product(FiniteGroup::cyclic(1u << m),
                                       FiniteGroup::cyclic(1u << n));
  return Representation(g, f4, dim, {id + x, id + y});
}

}  // namespace wittlift
