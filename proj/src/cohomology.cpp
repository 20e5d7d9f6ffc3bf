#include "wittlift/cohomology.hpp"

#include <algorithm>
#include <atomic>

#include "wittlift/catalog.hpp"

namespace wittlift {

// ---------------------------------------------------------------- SmallField

SmallField::SmallField(const FqPtr& k) {
  q = uint32_t(k->size());
  addt.resize(q * q);
  mult.resize(q * q);
  negt.resize(q);
  invt.resize(q);
  for (uint32_t a = 0; a < q; ++a) {
    Elem ea = k->elem_at(a);
    negt[a] = uint16_t(k->index_of(k->neg(ea)));
    auto iv = k->inv(ea);
    invt[a] = iv ? uint16_t(k->index_of(*iv)) : 0;
    for (uint32_t b = 0; b < q; ++b) {
      Elem eb = k->elem_at(b);
      addt[a * q + b] = uint16_t(k->index_of(k->add(ea, eb)));
      mult[a * q + b] = uint16_t(k->index_of(k->mul(ea, eb)));
    }
  }
}

// ------------------------------------------------------------------- GModule

GModule::GModule(GroupPtr group, FqPtr field, uint32_t dim,
                 std::vector<std::vector<uint16_t>> action)
    : group_(std::move(group)),
      field_(std::move(field)),
      dim_(dim),
      tab_(field_),
      act_(std::move(action)) {
  if (act_.size() != group_->order())
    throw GroupError("GModule: one action matrix per element required");
  for (const auto& m : act_)
    if (m.size() != size_t(dim_) * dim_)
      throw GroupError("GModule: action matrix size mismatch");
}

GModule GModule::adjoint(const Representation& f) {
  auto k = std::dynamic_pointer_cast<const FqField>(f.ring());
  if (!k) throw GroupError("GModule::adjoint: representation not over a field");
  uint32_t n = f.dim();
  uint32_t D = n * n;
  uint32_t N = f.group()->order();
  std::vector<std::vector<uint16_t>> act(N);
  for (uint32_t g = 0; g < N; ++g) {
    const Mat& fg = f.image(g);
    const Mat& fginv = f.image(f.group()->inverse(g));
    std::vector<uint16_t>& m = act[g];
    m.assign(size_t(D) * D, 0);
    // basis element E_{kl} maps to f(g) E_{kl} f(g)^{-1}
    for (uint32_t kk = 0; kk < n; ++kk)
      for (uint32_t l = 0; l < n; ++l)
        for (uint32_t i = 0; i < n; ++i)
          for (uint32_t j = 0; j < n; ++j) {
            Elem v = k->mul(fg.at(i, kk), fginv.at(l, j));
            m[size_t(i * n + j) * D + (kk * n + l)] = uint16_t(k->index_of(v));
          }
  }
  GModule mod(f.group(), k, D, std::move(act));
  mod.rep_ = std::make_shared<Representation>(f);
  return mod;
}

GModule GModule::of_rep(const Representation& f) {
  auto k = std::dynamic_pointer_cast<const FqField>(f.ring());
  if (!k) throw GroupError("GModule::of_rep: representation not over a field");
  uint32_t n = f.dim();
  uint32_t N = f.group()->order();
  std::vector<std::vector<uint16_t>> act(N);
  for (uint32_t g = 0; g < N; ++g) {
    const Mat& fg = f.image(g);
    act[g].assign(size_t(n) * n, 0);
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < n; ++j)
        act[g][i * n + j] = uint16_t(k->index_of(fg.at(i, j)));
  }
  return GModule(f.group(), k, n, std::move(act));
}

GModule GModule::trivial(GroupPtr group, FqPtr field, uint32_t dim) {
  uint32_t N = group->order();
  std::vector<uint16_t> id(size_t(dim) * dim, 0);
  for (uint32_t i = 0; i < dim; ++i) id[i * dim + i] = 1;
  return GModule(std::move(group), std::move(field), dim,
                 std::vector<std::vector<uint16_t>>(N, id));
}

FVec GModule::apply(uint32_t g, const FVec& v) const {
  FVec out(dim_, 0);
  const auto& m = act_[g];
  for (uint32_t i = 0; i < dim_; ++i) {
    uint16_t acc = 0;
    for (uint32_t j = 0; j < dim_; ++j) {
      uint16_t x = m[size_t(i) * dim_ + j];
      if (x && v[j]) acc = tab_.add(acc, tab_.mul(x, v[j]));
    }
    out[i] = acc;
  }
  return out;
}

namespace {

struct LinResult {
  RankData rd;
  bool consistent = true;
  std::vector<uint16_t> solution;
};

// Gauss-Jordan over the tabulated field; columns processed left to right
// (unknowns are ordered by group-element index), pivot = first nonzero row.
LinResult solve_system(const SmallField& F, uint64_t unknowns,
                       std::vector<std::vector<uint16_t>> rows) {
  LinResult res;
  res.rd.unknowns = unknowns;
  res.rd.equations = rows.size();
  size_t rank = 0;
  std::vector<uint64_t> pivcol;
  for (uint64_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    size_t pr = rank;
    while (pr < rows.size() && rows[pr][col] == 0) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[rank], rows[pr]);
    uint16_t piv = F.inv(rows[rank][col]);
    if (piv != 1)
      for (auto& x : rows[rank]) x = F.mul(x, piv);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      uint16_t f = rows[r][col];
      if (f == 0) continue;
      const auto& prow = rows[rank];
      auto& row = rows[r];
      for (size_t j = col; j < row.size(); ++j)
        if (prow[j]) row[j] = F.sub(row[j], F.mul(f, prow[j]));
    }
    pivcol.push_back(col);
    ++rank;
  }
  res.rd.rank = rank;
  res.rd.aug_rank = rank;
  for (size_t r = rank; r < rows.size(); ++r)
    if (rows[r][unknowns] != 0) {
      res.consistent = false;
      res.rd.aug_rank = rank + 1;
      break;
    }
  if (res.consistent) {
    res.solution.assign(unknowns, 0);
    for (size_t i = 0; i < rank; ++i)
      res.solution[pivcol[i]] = rows[i][unknowns];
  }
  return res;
}

}  // namespace

uint32_t GModule::invariants_dim() const {
  const auto& gens = group_->generators();
  std::vector<std::vector<uint16_t>> rows;
  for (uint32_t s : gens)
    for (uint32_t i = 0; i < dim_; ++i) {
      std::vector<uint16_t> row(dim_ + 1, 0);
      for (uint32_t j = 0; j < dim_; ++j) row[j] = act_[s][i * dim_ + j];
      row[i] = tab_.sub(row[i], 1);
      rows.push_back(std::move(row));
    }
  auto res = solve_system(tab_, dim_, std::move(rows));
  return dim_ - uint32_t(res.rd.rank);
}

GModule GModule::restrict_to(const Subgroup& h) const {
  std::vector<std::vector<uint16_t>> act;
  for (uint32_t e : h.elems) act.push_back(act_[e]);
  return GModule(h.group, field_, dim_, std::move(act));
}

// ---------------------------------------------------------------- TwoCocycle

TwoCocycle::TwoCocycle(ModulePtr module, std::vector<FVec> values)
    : module_(std::move(module)), values_(std::move(values)) {
  uint32_t N = module_->group()->order();
  if (values_.size() != size_t(N) * N)
    throw GroupError("TwoCocycle: value table size mismatch");
  uint32_t e = module_->group()->identity();
  FVec zero(module_->dim(), 0);
  for (uint32_t g = 0; g < N; ++g)
    if (values_[e * N + g] != zero || values_[g * N + e] != zero)
      throw GroupError("TwoCocycle: not normalized");
}

bool TwoCocycle::is_zero() const {
  FVec zero(module_->dim(), 0);
  for (const auto& v : values_)
    if (v != zero) return false;
  return true;
}

bool TwoCocycle::check_identity(bool full, std::string* err) const {
  const auto& G = *module_->group();
  const auto& F = module_->tab();
  uint32_t N = G.order();
  uint32_t D = module_->dim();
  auto triple = [&](uint32_t g, uint32_t h, uint32_t l) {
    FVec lhs = module_->apply(g, at(h, l));
    const FVec& a = at(G.mul(g, h), l);
    const FVec& b = at(g, G.mul(h, l));
    const FVec& c = at(g, h);
    for (uint32_t i = 0; i < D; ++i) {
      uint16_t v = F.sub(lhs[i], a[i]);
      v = F.add(v, b[i]);
      v = F.sub(v, c[i]);
      if (v != 0) return false;
    }
    return true;
  };
  if (full) {
    for (uint32_t g = 0; g < N; ++g)
      for (uint32_t h = 0; h < N; ++h)
        for (uint32_t l = 0; l < N; ++l)
          if (!triple(g, h, l)) {
            if (err)
              *err = "cocycle identity fails at (" + std::to_string(g) + "," +
                     std::to_string(h) + "," + std::to_string(l) + ")";
            return false;
          }
    return true;
  }
  for (uint32_t g = 0; g < N; ++g)
    for (uint32_t h = 0; h < N; ++h)
      for (uint32_t s : G.generators())
        if (!triple(g, h, s)) {
          if (err)
            *err = "cocycle identity fails at (" + std::to_string(g) + "," +
                   std::to_string(h) + ",s" + std::to_string(s) + ")";
          return false;
        }
  return true;
}

TwoCocycle TwoCocycle::operator-(const TwoCocycle& o) const {
  if (module_->group()->order() != o.module_->group()->order() ||
      module_->dim() != o.module_->dim())
    throw GroupError("TwoCocycle: shape mismatch in difference");
  const auto& F = module_->tab();
  std::vector<FVec> vals = values_;
  for (size_t i = 0; i < vals.size(); ++i)
    for (size_t j = 0; j < vals[i].size(); ++j)
      vals[i][j] = F.sub(vals[i][j], o.values_[i][j]);
  return TwoCocycle(module_, std::move(vals));
}

TwoCocycle TwoCocycle::restrict_to(const Subgroup& h) const {
  auto mod = std::make_shared<GModule>(module_->restrict_to(h));
  uint32_t M = uint32_t(h.elems.size());
  uint32_t N = module_->group()->order();
  std::vector<FVec> vals(size_t(M) * M);
  for (uint32_t i = 0; i < M; ++i)
    for (uint32_t j = 0; j < M; ++j)
      vals[i * M + j] = values_[size_t(h.elems[i]) * N + h.elems[j]];
  return TwoCocycle(std::move(mod), std::move(vals));
}

uint64_t TwoCocycle::hash() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  mix(module_->group()->order());
  mix(module_->dim());
  for (const auto& v : values_)
    for (uint16_t x : v) mix(x);
  return h;
}

// --------------------------------------------------------------- obstruction

namespace {

FqPtr field_of(const Representation& f) {
  auto k = std::dynamic_pointer_cast<const FqField>(f.ring());
  if (!k) throw GroupError("expected a representation over a finite field");
  return k;
}

FVec cocycle_entry(const WittRing& w, const FqField& k, const Mat& a) {
  uint32_t n = a.n();
  FVec out(size_t(n) * n, 0);
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      Elem e = a.at(i, j);
      if (i == j) e = w.sub(e, w.one());
      out[i * n + j] = uint16_t(k.index_of(w.kernel_digit(e)));
    }
  return out;
}

TwoCocycle obstruction_impl(const Representation& f,
                            const std::vector<Mat>& section, bool parallel) {
  FqPtr k = field_of(f);
  auto w = WittRing::make(k);
  const auto& G = *f.group();
  uint32_t N = G.order();
  if (N > 128) throw GroupError("obstruction_class: group too large");
  if (section.size() != N)
    throw GroupError("obstruction_class: section must cover the group");
  if (!section[G.identity()].is_identity())
    throw GroupError("obstruction_class: section not normalized at e");
  for (uint32_t g = 0; g < N; ++g)
    if (reduce_mod_p(section[g]) != f.image(g))
      throw GroupError("obstruction_class: section does not lift f");
  std::vector<Mat> inv_section;
  inv_section.reserve(N);
  for (uint32_t g = 0; g < N; ++g) {
    auto iv = section[g].inverse();
    if (!iv) throw GroupError("obstruction_class: section not invertible");
    inv_section.push_back(std::move(*iv));
  }
  std::vector<FVec> vals(size_t(N) * N);
  auto pair_value = [&](uint32_t idx) {
    uint32_t g = idx / N, h = idx % N;
    Mat a = section[g] * section[h] * inv_section[G.mul(g, h)];
    vals[idx] = cocycle_entry(*w, *k, a);
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (int64_t idx = 0; idx < int64_t(N) * N; ++idx)
      pair_value(uint32_t(idx));
  } else {
    for (uint32_t idx = 0; idx < N * N; ++idx) pair_value(idx);
  }
  auto mod = std::make_shared<GModule>(GModule::adjoint(f));
  return TwoCocycle(std::move(mod), std::move(vals));
}

std::vector<Mat> teich_section(const Representation& f) {
  auto w = WittRing::make(field_of(f));
  std::vector<Mat> sec;
  for (uint32_t g = 0; g < f.group()->order(); ++g)
    sec.push_back(teichmuller_lift(f.image(g), w));
  return sec;
}

}  // namespace

TwoCocycle obstruction_class(const Representation& f) {
  return obstruction_impl(f, teich_section(f), true);
}

TwoCocycle obstruction_class_serial(const Representation& f) {
  return obstruction_impl(f, teich_section(f), false);
}

TwoCocycle obstruction_from_section(const Representation& f,
                                    const std::vector<Mat>& section) {
  return obstruction_impl(f, section, false);
}

// -------------------------------------------------------------- is_coboundary

namespace {

// unknown block start for element g (identity carries no unknowns)
int64_t slot_of(uint32_t g, uint32_t e) {
  if (g == e) return -1;
  return g < e ? int64_t(g) : int64_t(g) - 1;
}

// rows of the (g, generator) subsystem d^1(b)(g,s) = c(g,s)
std::vector<std::vector<uint16_t>> coboundary_rows(const TwoCocycle& c) {
  const auto& mod = *c.module();
  const auto& G = *mod.group();
  const auto& F = mod.tab();
  uint32_t N = G.order(), D = mod.dim(), e = G.identity();
  uint64_t unknowns = uint64_t(N - 1) * D;
  std::vector<std::vector<uint16_t>> rows;
  for (uint32_t g = 0; g < N; ++g) {
    if (g == e) continue;
    for (uint32_t s : G.generators()) {
      int64_t sg = slot_of(g, e), ss = slot_of(s, e), sgs = slot_of(G.mul(g, s), e);
      const auto& act = mod.action_matrix(g);
      const FVec& rhs = c.at(g, s);
      for (uint32_t i = 0; i < D; ++i) {
        std::vector<uint16_t> row(unknowns + 1, 0);
        if (sg >= 0) row[sg * D + i] = F.add(row[sg * D + i], 1);
        if (ss >= 0)
          for (uint32_t j = 0; j < D; ++j) {
            uint16_t a = act[size_t(i) * D + j];
            if (a) row[ss * D + j] = F.add(row[ss * D + j], a);
          }
        if (sgs >= 0) row[sgs * D + i] = F.sub(row[sgs * D + i], 1);
        // the corrected section (I + p b(g)) u(g) multiplies out to a
        // homomorphism exactly when d^1(b) = -c
        row[unknowns] = F.neg(rhs[i]);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

FVec cochain_at(const std::vector<uint16_t>& sol, uint32_t g, uint32_t e,
                uint32_t D) {
  FVec b(D, 0);
  int64_t s = slot_of(g, e);
  if (s >= 0)
    for (uint32_t i = 0; i < D; ++i) b[i] = sol[s * D + i];
  return b;
}

bool full_coboundary_check(const TwoCocycle& c,
                           const std::vector<uint16_t>& sol) {
  const auto& mod = *c.module();
  const auto& G = *mod.group();
  const auto& F = mod.tab();
  uint32_t N = G.order(), D = mod.dim(), e = G.identity();
  for (uint32_t g = 0; g < N; ++g)
    for (uint32_t h = 0; h < N; ++h) {
      FVec bg = cochain_at(sol, g, e, D);
      FVec bh = cochain_at(sol, h, e, D);
      FVec bgh = cochain_at(sol, G.mul(g, h), e, D);
      FVec gb = mod.apply(g, bh);
      const FVec& rhs = c.at(g, h);
      for (uint32_t i = 0; i < D; ++i)
        if (F.sub(F.add(bg[i], gb[i]), bgh[i]) != F.neg(rhs[i])) return false;
    }
  return true;
}

Representation assemble_lift(const Representation& f,
                             const std::vector<FVec>& cochain) {
  FqPtr k = field_of(f);
  auto w = WittRing::make(k);
  uint32_t n = f.dim();
  std::vector<Mat> imgs;
  for (uint32_t s : f.group()->generators()) {
    Mat corr = Mat::identity(w, n);
    const FVec& b = cochain[s];
    for (uint32_t i = 0; i < n; ++i)
      for (uint32_t j = 0; j < n; ++j) {
        Elem add = w->kernel_embed(k->elem_at(b[i * n + j]));
        corr.set(i, j, w->add(corr.at(i, j), add));
      }
    imgs.push_back(corr * teichmuller_lift(f.image(s), w));
  }
  return Representation(f.group(), w, n, std::move(imgs));
}

}  // namespace

ObstructionCertificate is_coboundary(const TwoCocycle& c) {
  const auto& mod = *c.module();
  const auto& G = *mod.group();
  std::string err;
  if (!c.check_identity(G.order() <= 24, &err))
    throw GroupError("is_coboundary: " + err);
  uint32_t N = G.order(), D = mod.dim(), e = G.identity();
  auto res = solve_system(mod.tab(), uint64_t(N - 1) * D, coboundary_rows(c));
  ObstructionCertificate cert;
  cert.cocycle = std::make_shared<TwoCocycle>(c);
  cert.rep = mod.base_rep();
  cert.rank_data = res.rd;
  if (!res.consistent) {
    cert.verdict = ObstructionCertificate::Verdict::OBSTRUCTED;
    return cert;
  }
  // the generator subsystem determines everything; confirm and assemble
  if (!full_coboundary_check(c, res.solution))
    throw GroupError("is_coboundary: subsystem solution fails a full equation");
  cert.verdict = ObstructionCertificate::Verdict::LIFTS;
  cert.cochain.resize(N);
  for (uint32_t g = 0; g < N; ++g)
    cert.cochain[g] = cochain_at(res.solution, g, e, D);
  if (cert.rep) {
    auto lift = assemble_lift(*cert.rep, cert.cochain);
    std::string herr;
    if (!lift.verify_homomorphism(&herr))
      throw GroupError("is_coboundary: assembled lift fails: " + herr);
    cert.lift = std::make_shared<Representation>(std::move(lift));
  }
  return cert;
}

bool ObstructionCertificate::reverify(std::string* err) const {
  if (verdict == Verdict::OBSTRUCTED) {
    if (!cocycle) {
      if (err) *err = "no cocycle stored";
      return false;
    }
    const auto& mod = *cocycle->module();
    auto res = solve_system(
        mod.tab(), uint64_t(mod.group()->order() - 1) * mod.dim(),
        coboundary_rows(*cocycle));
    if (res.consistent) {
      if (err) *err = "stored system is consistent after all";
      return false;
    }
    if (res.rd.rank != rank_data.rank || res.rd.aug_rank != rank_data.aug_rank) {
      if (err) *err = "rank data mismatch";
      return false;
    }
    return true;
  }
  if (!lift || !rep) {
    if (err) *err = "LIFTS certificate lacks the lift";
    return false;
  }
  if (!lift->verify_homomorphism(err)) return false;
  for (size_t i = 0; i < lift->generator_images().size(); ++i)
    if (reduce_mod_p(lift->generator_images()[i]) !=
        rep->generator_images()[i]) {
      if (err) *err = "lift does not reduce to the representation";
      return false;
    }
  return true;
}

nlohmann::json ObstructionCertificate::to_json() const {
  nlohmann::json j;
  j["verdict"] = lifts() ? "LIFTS" : "OBSTRUCTED";
  if (rep) {
    j["group"] = rep->group()->to_json();
    j["rep"] = rep->to_json();
  }
  if (cocycle) j["cocycle_hash"] = cocycle->hash();
  j["lift"] = lift ? lift->to_json() : nlohmann::json();
  j["rank_data"] = {{"unknowns", rank_data.unknowns},
                    {"equations", rank_data.equations},
                    {"rank", rank_data.rank},
                    {"aug_rank", rank_data.aug_rank}};
  if (stamp)
    j["exhaustive_stamp"] = {{"searched", stamp->searched},
                             {"complete", stamp->complete},
                             {"lift_found", stamp->lift_found}};
  return j;
}

// ---------------------------------------------------------- exhaustive search

namespace {

struct SearchSpace {
  FqPtr k;
  WittPtr w;
  uint32_t n = 0;
  uint64_t per_gen = 0;  // q^(n^2)
  uint64_t total = 0;    // per_gen^#gens, saturated
  std::vector<Mat> base;  // Teichmuller lifts of the generator images
};

SearchSpace make_space(const Representation& f) {
  SearchSpace sp;
  sp.k = field_of(f);
  sp.w = WittRing::make(sp.k);
  sp.n = f.dim();
  sp.per_gen = 1;
  bool sat = false;
  for (uint32_t i = 0; i < sp.n * sp.n; ++i) {
    if (sp.per_gen > UINT64_MAX / sp.k->q()) { sat = true; break; }
    sp.per_gen *= sp.k->q();
  }
  sp.total = 1;
  size_t gens = f.group()->generators().size();
  for (size_t i = 0; i < gens && !sat; ++i) {
    if (sp.total > UINT64_MAX / sp.per_gen) { sat = true; break; }
    sp.total *= sp.per_gen;
  }
  if (sat) sp.total = UINT64_MAX;
  for (uint32_t s : f.group()->generators())
    sp.base.push_back(teichmuller_lift(f.image(s), sp.w));
  return sp;
}

std::vector<Mat> candidate_images(const SearchSpace& sp, uint64_t idx) {
  std::vector<Mat> imgs;
  for (const Mat& b : sp.base) {
    uint64_t code = idx % sp.per_gen;
    idx /= sp.per_gen;
    Mat m = b;
    for (uint32_t i = 0; i < sp.n; ++i)
      for (uint32_t j = 0; j < sp.n; ++j) {
        Elem corr = sp.w->kernel_embed(sp.k->elem_at(code % sp.k->q()));
        code /= sp.k->q();
        m.set(i, j, sp.w->add(m.at(i, j), corr));
      }
    imgs.push_back(std::move(m));
  }
  return imgs;
}

bool relators_hold(const GroupPtr& g, const std::vector<Mat>& imgs,
                   const std::vector<Mat>& invs) {
  uint32_t n = imgs[0].n();
  for (const auto& r : g->relators()) {
    Mat m = Mat::identity(imgs[0].ring(), n);
    for (int32_t s : r)
      m = m * (s >= 0 ? imgs[size_t(s)] : invs[size_t(-s - 1)]);
    if (!m.is_identity()) return false;
  }
  return true;
}

SearchOutcome search_impl(const Representation& f, uint64_t budget,
                          bool parallel) {
  if (f.group()->relators().empty())
    throw GroupError("exhaustive_lift_search: group has no presentation");
  SearchSpace sp = make_space(f);
  SearchOutcome out;
  uint64_t limit = std::min(sp.total, budget);
  out.searched = limit;
  out.complete = sp.total <= budget;
  std::atomic<uint64_t> best{UINT64_MAX};
  auto try_one = [&](uint64_t idx) {
    auto imgs = candidate_images(sp, idx);
    std::vector<Mat> invs;
    invs.reserve(imgs.size());
    for (const auto& m : imgs) {
      auto iv = m.inverse();
      if (!iv) return;  // cannot happen: unipotent-plus-unit residues
      invs.push_back(std::move(*iv));
    }
    if (relators_hold(f.group(), imgs, invs)) {
      uint64_t cur = best.load();
      while (idx < cur && !best.compare_exchange_weak(cur, idx)) {}
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 256)
    for (int64_t idx = 0; idx < int64_t(limit); ++idx) try_one(uint64_t(idx));
  } else {
    for (uint64_t idx = 0; idx < limit; ++idx) try_one(idx);
  }
  if (best.load() != UINT64_MAX) {
    out.found = true;
    Representation lift(f.group(), sp.w, sp.n,
                        candidate_images(sp, best.load()));
    std::string err;
    if (!lift.verify_homomorphism(&err))
      throw GroupError("exhaustive_lift_search: relators insufficient: " + err);
    out.lift = std::move(lift);
  }
  return out;
}

}  // namespace

SearchOutcome exhaustive_lift_search(const Representation& f, uint64_t budget) {
  return search_impl(f, budget, true);
}

SearchOutcome exhaustive_lift_search_serial(const Representation& f,
                                            uint64_t budget) {
  return search_impl(f, budget, false);
}

// ------------------------------------------------------------------------ H1

namespace {

uint32_t z1_dim_table(const GModule& mod) {
  const auto& G = *mod.group();
  const auto& F = mod.tab();
  uint32_t N = G.order(), D = mod.dim(), e = G.identity();
  uint64_t unknowns = uint64_t(N - 1) * D;
  std::vector<std::vector<uint16_t>> rows;
  for (uint32_t g = 0; g < N; ++g) {
    if (g == e) continue;
    for (uint32_t s : G.generators()) {
      int64_t sg = slot_of(g, e), ss = slot_of(s, e), sgs = slot_of(G.mul(g, s), e);
      const auto& act = mod.action_matrix(g);
      for (uint32_t i = 0; i < D; ++i) {
        std::vector<uint16_t> row(unknowns + 1, 0);
        if (sgs >= 0) row[sgs * D + i] = F.add(row[sgs * D + i], 1);
        if (sg >= 0) row[sg * D + i] = F.sub(row[sg * D + i], 1);
        if (ss >= 0)
          for (uint32_t j = 0; j < D; ++j) {
            uint16_t a = act[size_t(i) * D + j];
            if (a) row[ss * D + j] = F.sub(row[ss * D + j], a);
          }
        rows.push_back(std::move(row));
      }
    }
  }
  auto res = solve_system(F, unknowns, std::move(rows));
  return uint32_t(unknowns - res.rd.rank);
}

// multiply D x D index matrices
std::vector<uint16_t> idx_mat_mul(const SmallField& F,
                                  const std::vector<uint16_t>& a,
                                  const std::vector<uint16_t>& b, uint32_t D) {
  std::vector<uint16_t> out(size_t(D) * D, 0);
  for (uint32_t i = 0; i < D; ++i)
    for (uint32_t kk = 0; kk < D; ++kk) {
      uint16_t x = a[size_t(i) * D + kk];
      if (!x) continue;
      for (uint32_t j = 0; j < D; ++j) {
        uint16_t y = b[size_t(kk) * D + j];
        if (y) out[size_t(i) * D + j] =
            F.add(out[size_t(i) * D + j], F.mul(x, y));
      }
    }
  return out;
}

uint32_t z1_dim_relator(const GModule& mod) {
  const auto& G = *mod.group();
  if (G.relators().empty())
    throw GroupError("h1_dimension: relator mode needs a presentation");
  const auto& F = mod.tab();
  uint32_t D = mod.dim();
  const auto& gens = G.generators();
  uint64_t unknowns = uint64_t(gens.size()) * D;
  std::vector<uint16_t> id(size_t(D) * D, 0);
  for (uint32_t i = 0; i < D; ++i) id[i * D + i] = 1;
  std::vector<std::vector<uint16_t>> rows;
  for (const auto& r : G.relators()) {
    // Fox-derivative walk: phi(w s) = phi(w) + w.phi(s),
    // phi(w s^-1) = phi(w) - (w s^-1).phi(s)
    std::vector<std::vector<uint16_t>> coeff(
        gens.size(), std::vector<uint16_t>(size_t(D) * D, 0));
    std::vector<uint16_t> cur = id;
    for (int32_t letter : r) {
      if (letter >= 0) {
        uint32_t gi = uint32_t(letter);
        for (size_t t = 0; t < coeff[gi].size(); ++t)
          coeff[gi][t] = F.add(coeff[gi][t], cur[t]);
        cur = idx_mat_mul(F, cur, mod.action_matrix(gens[gi]), D);
      } else {
        uint32_t gi = uint32_t(-letter - 1);
        cur = idx_mat_mul(
            F, cur, mod.action_matrix(G.inverse(gens[gi])), D);
        for (size_t t = 0; t < coeff[gi].size(); ++t)
          coeff[gi][t] = F.sub(coeff[gi][t], cur[t]);
      }
    }
    for (uint32_t i = 0; i < D; ++i) {
      std::vector<uint16_t> row(unknowns + 1, 0);
      for (size_t gi = 0; gi < gens.size(); ++gi)
        for (uint32_t j = 0; j < D; ++j)
          row[gi * D + j] = coeff[gi][size_t(i) * D + j];
      rows.push_back(std::move(row));
    }
  }
  auto res = solve_system(F, unknowns, std::move(rows));
  return uint32_t(unknowns - res.rd.rank);
}

}  // namespace

uint32_t h1_dimension(const GModule& m, H1Mode mode) {
  uint32_t z1 = mode == H1Mode::Table ? z1_dim_table(m) : z1_dim_relator(m);
  uint32_t b1 = m.dim() - m.invariants_dim();
  return z1 - b1;
}

RigidityReport is_strongly_rigid(const Representation& f) {
  RigidityReport rep{is_coboundary(obstruction_class(f)), 0, false};
  rep.h1 = h1_dimension(GModule::adjoint(f), H1Mode::Table);
  rep.strongly_rigid = !rep.cert.lifts() && rep.h1 == 0;
  return rep;
}

// --------------------------------------------------------- nonrigid_lift_check

namespace {

Mat quot64_residue(const Quot64Ptr& q, const Mat& m, const FqPtr& f4) {
  Mat out(f4, m.n());
  for (uint32_t i = 0; i < m.n(); ++i)
    for (uint32_t j = 0; j < m.n(); ++j) out.set(i, j, q->residue(m.at(i, j)));
  return out;
}

}  // namespace

nlohmann::json nonrigid_lift_check() {
  auto q = Quot64Ring::make();
  auto f4 = q->f4();
  // I + X = companion matrix of u^4 - 1 (the degree-4 divisor from the
  // power-of-2 construction at n=2, m=4), mapped into the quotient ring
  Mat c(q, 4);
  for (uint32_t i = 0; i + 1 < 4; ++i) c.set(i + 1, i, q->one());
  c.set(0, 3, q->one());
  Mat id = Mat::identity(q, 4);
  Mat x = c - id;
  Elem z3 = q->from_witt(q->w2f4()->teichmuller(f4->elem_at(2)));
  Mat y = x.scaled(q->t()) + (x * x).scaled(z3);
  Mat iy = id + y;

  nlohmann::json checks = nlohmann::json::array();
  bool ok = true;
  auto record = [&](const std::string& name, bool pass) {
    checks.push_back({{"name", name}, {"pass", pass}});
    ok = ok && pass;
  };
  record("(I+X)^4 = I", c.pow(4).is_identity());
  auto ord = matrix_order(c, 8);
  record("order of I+X is 4", ord && *ord == 4);
  Mat cbar = quot64_residue(q, c, f4);
  record("X reduces to a single size-4 Jordan block",
         acts_as_single_jordan_block(cbar));
  Mat xbar = quot64_residue(q, x, f4);
  Elem omega = f4->elem_at(2);
  record("Y reduces to omega x^2",
         quot64_residue(q, y, f4) == (xbar * xbar).scaled(omega));
  record("(I+Y)^2 = I", (iy * iy).is_identity());
  bool comm = false;
  if (auto ivy = iy.inverse()) {
    auto ivc = c.inverse();
    comm = ivc && (c * iy * *ivc * *ivy).is_identity();
  }
  record("[I+X, I+Y] = I", comm);

  nlohmann::json j;
  j["ok"] = ok;
  j["checks"] = std::move(checks);
  j["I_plus_X"] = c.to_json();
  j["Y"] = y.to_json();
  return j;
}

}  // namespace wittlift
