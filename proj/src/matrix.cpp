#include "wittlift/matrix.hpp"

namespace wittlift {

Mat::Mat(RingPtr ring, uint32_t n) : ring_(std::move(ring)), n_(n) {
  if (n == 0) throw RingError("Mat: dimension must be >= 1");
  e_.assign(size_t(n) * n, ring_->zero());
}

Mat Mat::identity(RingPtr ring, uint32_t n) {
  Mat m(ring, n);
  for (uint32_t i = 0; i < n; ++i) m.set(i, i, ring->one());
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  Mat r(ring_, n_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = ring_->add(e_[i], o.e_[i]);
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  Mat r(ring_, n_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = ring_->sub(e_[i], o.e_[i]);
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  Mat r(ring_, n_);
  for (uint32_t i = 0; i < n_; ++i)
    for (uint32_t k = 0; k < n_; ++k) {
      const Elem& a = at(i, k);
      if (ring_->is_zero(a)) continue;
      for (uint32_t j = 0; j < n_; ++j)
        r.e_[i * n_ + j] =
            ring_->add(r.e_[i * n_ + j], ring_->mul(a, o.at(k, j)));
    }
  return r;
}

Mat Mat::scaled(const Elem& c) const {
  Mat r(ring_, n_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = ring_->mul(c, e_[i]);
  return r;
}

Mat Mat::pow(uint64_t e) const {
  Mat r = identity(ring_, n_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool Mat::is_identity() const { return *this == identity(ring_, n_); }

bool Mat::is_zero() const {
  for (const auto& x : e_)
    if (!ring_->is_zero(x)) return false;
  return true;
}

std::optional<Mat> Mat::inverse() const {
  Mat a = *this;
  Mat inv = identity(ring_, n_);
  for (uint32_t col = 0; col < n_; ++col) {
    // find a row with a unit pivot in this column
    std::optional<uint32_t> piv;
    std::optional<Elem> pinv;
    for (uint32_t r = col; r < n_; ++r) {
      auto iv = ring_->inv(a.at(r, col));
      if (iv) {
        piv = r;
        pinv = *iv;
        break;
      }
    }
    if (!piv) return std::nullopt;
    if (*piv != col)
      for (uint32_t j = 0; j < n_; ++j) {
        std::swap(a.e_[*piv * n_ + j], a.e_[col * n_ + j]);
        std::swap(inv.e_[*piv * n_ + j], inv.e_[col * n_ + j]);
      }
    for (uint32_t j = 0; j < n_; ++j) {
      a.e_[col * n_ + j] = ring_->mul(*pinv, a.e_[col * n_ + j]);
      inv.e_[col * n_ + j] = ring_->mul(*pinv, inv.e_[col * n_ + j]);
    }
    for (uint32_t r = 0; r < n_; ++r) {
      if (r == col) continue;
      Elem f = a.at(r, col);
      if (ring_->is_zero(f)) continue;
      for (uint32_t j = 0; j < n_; ++j) {
        a.e_[r * n_ + j] =
            ring_->sub(a.e_[r * n_ + j], ring_->mul(f, a.e_[col * n_ + j]));
        inv.e_[r * n_ + j] =
            ring_->sub(inv.e_[r * n_ + j], ring_->mul(f, inv.e_[col * n_ + j]));
      }
    }
  }
  return inv;
}

nlohmann::json Mat::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& x : e_) entries.push_back(ring_->elem_json(x));
  return {{"ring", ring_->ring_json()}, {"n", n_}, {"entries", entries}};
}

Mat Mat::from_json(const nlohmann::json& j) {
  return from_json(j, ring_from_json(j.at("ring")));
}

Mat Mat::from_json(const nlohmann::json& j, RingPtr ring) {
  uint32_t n = j.at("n").get<uint32_t>();
  Mat m(ring, n);
  const auto& entries = j.at("entries");
  if (entries.size() != size_t(n) * n)
    throw RingError("matrix JSON: wrong entry count");
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t jj = 0; jj < n; ++jj)
      m.set(i, jj, ring->elem_from_json(entries[i * n + jj]));
  return m;
}

std::optional<uint64_t> matrix_order(const Mat& m, uint64_t bound) {
  if (!m.inverse()) throw RingError("matrix_order: matrix not invertible");
  Mat acc = m;
  for (uint64_t e = 1; e <= bound; ++e) {
    if (acc.is_identity()) return e;
    acc = acc * m;
  }
  return std::nullopt;
}

Mat reduce_mod_p(const Mat& m) {
  if (auto w = std::dynamic_pointer_cast<const WittRing>(m.ring())) {
    Mat r(w->field(), m.n());
    for (uint32_t i = 0; i < m.n(); ++i)
      for (uint32_t j = 0; j < m.n(); ++j) r.set(i, j, w->comp0(m.at(i, j)));
    return r;
  }
  if (auto z = std::dynamic_pointer_cast<const ZmodRing>(m.ring())) {
    if (z->k() != 2) throw RingError("reduce_mod_p: not a length-2 lift");
    auto zp = ZmodRing::make(z->p(), 1);
    Mat r(zp, m.n());
    for (uint32_t i = 0; i < m.n(); ++i)
      for (uint32_t j = 0; j < m.n(); ++j)
        r.set(i, j, Elem{m.at(i, j)[0] % z->p()});
    return r;
  }
  throw RingError("reduce_mod_p: ring is not a length-2 lift");
}

Mat teichmuller_lift(const Mat& m, WittPtr w) {
  Mat r(w, m.n());
  for (uint32_t i = 0; i < m.n(); ++i)
    for (uint32_t j = 0; j < m.n(); ++j)
      r.set(i, j, w->teichmuller(m.at(i, j)));
  return r;
}

Mat zp2_matrix_to_witt(const Mat& m, WittPtr w) {
  Mat r(w, m.n());
  for (uint32_t i = 0; i < m.n(); ++i)
    for (uint32_t j = 0; j < m.n(); ++j)
      r.set(i, j, zp2_to_witt(*w, m.at(i, j)[0]));
  return r;
}

}  // namespace wittlift
