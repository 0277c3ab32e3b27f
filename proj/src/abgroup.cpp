#include "loopalg/abgroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "loopalg/errors.hpp"

namespace loopalg {

namespace {

int64_t lcm64(int64_t a, int64_t b) { return a / std::gcd(a, b) * b; }

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int64_t> invariant_factors, int64_t max_order)
    : factors_(std::move(invariant_factors)) {
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 1) throw Error(errkind::kBadGroup, "invariant factor must be >= 1");
    if (i + 1 < factors_.size() && factors_[i + 1] % factors_[i] != 0)
      throw Error(errkind::kBadGroup, "invariant factors must form a divisibility chain");
  }
  for (int64_t n : factors_) {
    if (order_ > max_order / n)
      throw Error(errkind::kCapExceeded,
                  "group order exceeds the configured cap (" + std::to_string(max_order) + ")");
    order_ *= n;
  }
}

int64_t FiniteAbelianGroup::exponent() const {
  int64_t e = 1;
  for (int64_t n : factors_) e = lcm64(e, n);
  return e;
}

GroupElement FiniteAbelianGroup::reduce(std::vector<int64_t> coords) const {
  if (coords.size() != factors_.size())
    throw Error(errkind::kBadGroup, "coordinate vector has wrong length");
  for (size_t i = 0; i < coords.size(); ++i) {
    coords[i] %= factors_[i];
    if (coords[i] < 0) coords[i] += factors_[i];
  }
  return GroupElement{std::move(coords)};
}

GroupElement FiniteAbelianGroup::add(const GroupElement& x, const GroupElement& y) const {
  std::vector<int64_t> c(factors_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = (x.c[i] + y.c[i]) % factors_[i];
  return GroupElement{std::move(c)};
}

GroupElement FiniteAbelianGroup::neg(const GroupElement& x) const {
  std::vector<int64_t> c(factors_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = x.c[i] == 0 ? 0 : factors_[i] - x.c[i];
  return GroupElement{std::move(c)};
}

GroupElement FiniteAbelianGroup::sub(const GroupElement& x, const GroupElement& y) const {
  return add(x, neg(y));
}

GroupElement FiniteAbelianGroup::smul(int64_t k, const GroupElement& x) const {
  std::vector<int64_t> c(factors_.size());
  for (size_t i = 0; i < c.size(); ++i) {
    int64_t v = (k % factors_[i]) * x.c[i] % factors_[i];
    if (v < 0) v += factors_[i];
    c[i] = v;
  }
  return GroupElement{std::move(c)};
}

int64_t FiniteAbelianGroup::element_order(const GroupElement& x) const {
  int64_t ord = 1;
  for (size_t i = 0; i < factors_.size(); ++i)
    ord = lcm64(ord, factors_[i] / std::gcd(factors_[i], x.c[i]));
  return ord;
}

int64_t FiniteAbelianGroup::index_of(const GroupElement& x) const {
  int64_t idx = 0;
  for (size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + x.c[i];
  return idx;
}

GroupElement FiniteAbelianGroup::element_at(int64_t idx) const {
  std::vector<int64_t> c(factors_.size());
  for (size_t i = factors_.size(); i-- > 0;) {
    c[i] = idx % factors_[i];
    idx /= factors_[i];
  }
  return GroupElement{std::move(c)};
}

std::vector<GroupElement> FiniteAbelianGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order_);
  for (int64_t i = 0; i < order_; ++i) out.push_back(element_at(i));
  return out;
}

std::vector<std::pair<GroupElement, int64_t>> FiniteAbelianGroup::cyclic_factors() const {
  std::vector<std::pair<GroupElement, int64_t>> out;
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] == 1) continue;
    std::vector<int64_t> c(factors_.size(), 0);
    c[i] = 1;
    out.emplace_back(GroupElement{std::move(c)}, factors_[i]);
  }
  return out;
}

std::string FiniteAbelianGroup::show(const GroupElement& x) const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < x.c.size(); ++i) os << (i ? "," : "") << x.c[i];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup::Subgroup(FiniteAbelianGroup parent, std::vector<GroupElement> gens)
    : parent_(std::move(parent)), gens_(std::move(gens)) {
  const int r = parent_.rank();
  for (const auto& g : gens_)
    if (static_cast<int>(g.c.size()) != r)
      throw Error(errkind::kBadGroup, "generator has wrong coordinate length");

  // Element set: closure of the generators.
  std::set<GroupElement> seen;
  seen.insert(parent_.zero());
  std::vector<GroupElement> frontier{parent_.zero()};
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier)
      for (const auto& g : gens_) {
        GroupElement y = parent_.add(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  elements_.assign(seen.begin(), seen.end());

  // Membership lattice [elements | diag(n)] and its Smith form.
  const int k = static_cast<int>(elements_.size());
  IntMat lat(r, k + r);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < r; ++i) lat.at(i, j) = elements_[j].c[i];
  for (int i = 0; i < r; ++i) lat.at(i, k + i) = parent_.invariant_factors()[i];
  SnfResult snf = smith_normal_form(lat);
  mem_u_ = snf.u;
  mem_diag_ = snf.diagonal();
  mem_diag_.resize(r, Int(0));

  // Canonical cyclic decomposition via the lattice chain
  //   diag(n) Z^r  <=  L  <=  Z^r,   H = L / diag(n) Z^r.
  // B = basis of L from the Smith form, C = B^{-1} diag(n), SNF(C) = U C V,
  // generators are the columns of B U^{-1}.
  if (r > 0) {
    IntMat b(r, r);  // basis of the column lattice: U^{-1} * diag(d)
    IntMat uinv = unimodular_inverse(snf.u);
    for (int j = 0; j < r; ++j)
      for (int i = 0; i < r; ++i) b.at(i, j) = uinv.at(i, j) * mem_diag_[j];
    IntMat binv_diag(r, r);  // C = B^{-1} diag(n), via b's structure: C = V_b ... solve directly
    // Solve B * C = diag(n) column by column using integer back-substitution on
    // the Smith form of B. B = uinv * diag(d), so C = diag(1/d) * u * diag(n).
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        Int num = snf.u.at(i, j) * parent_.invariant_factors()[j];
        if (num % mem_diag_[i] != 0)
          throw Error(errkind::kBadGroup, "internal: relation lattice not contained in span");
        binv_diag.at(i, j) = num / mem_diag_[i];
      }
    SnfResult snf2 = smith_normal_form(binv_diag);
    IntMat gen_mat = b.mul(unimodular_inverse(snf2.u));
    std::vector<int64_t> abs_factors;
    for (int j = 0; j < r; ++j) {
      Int dj = snf2.d.at(j, j);
      if (dj <= 1) continue;
      std::vector<int64_t> c(r);
      for (int i = 0; i < r; ++i) {
        Int v = gen_mat.at(i, j) % parent_.invariant_factors()[i];
        if (v < 0) v += parent_.invariant_factors()[i];
        c[i] = static_cast<int64_t>(v);
      }
      cyclic_.emplace_back(GroupElement{std::move(c)}, static_cast<int64_t>(dj));
      abs_factors.push_back(static_cast<int64_t>(dj));
    }
    abs_group_ = FiniteAbelianGroup(abs_factors, order());
  }

  // Abstract coordinates: enumerate all tuples over the cyclic generators.
  {
    const auto& abs = abs_group_;
    for (int64_t i = 0; i < abs.order(); ++i) {
      GroupElement t = abs.element_at(i);
      GroupElement x = parent_.zero();
      for (size_t j = 0; j < cyclic_.size(); ++j)
        x = parent_.add(x, parent_.smul(t.c[j], cyclic_[j].first));
      auto [it, fresh] = abs_coords_.emplace(parent_.index_of(x), t);
      if (!fresh)
        throw Error(errkind::kBadGroup, "internal: cyclic decomposition is not a direct sum");
    }
    if (static_cast<int64_t>(abs_coords_.size()) != order())
      throw Error(errkind::kBadGroup, "internal: cyclic decomposition misses elements");
  }
}

Subgroup Subgroup::generated(const FiniteAbelianGroup& parent, std::vector<GroupElement> gens) {
  return Subgroup(parent, std::move(gens));
}

Subgroup Subgroup::whole(const FiniteAbelianGroup& parent) {
  std::vector<GroupElement> gens;
  for (auto& [g, n] : parent.cyclic_factors()) gens.push_back(g);
  return Subgroup(parent, std::move(gens));
}

Subgroup Subgroup::trivial_in(const FiniteAbelianGroup& parent) { return Subgroup(parent, {}); }

bool Subgroup::contains(const GroupElement& x) const {
  const int r = parent_.rank();
  if (static_cast<int>(x.c.size()) != r) return false;
  // x is in the column lattice iff S y = U x is solvable, i.e. diag | U x.
  for (int i = 0; i < r; ++i) {
    Int s = 0;
    for (int j = 0; j < r; ++j) s += mem_u_.at(i, j) * x.c[j];
    if (mem_diag_[i] == 0) {
      if (s != 0) return false;
    } else if (s % mem_diag_[i] != 0) {
      return false;
    }
  }
  return true;
}

GroupElement Subgroup::embed(const GroupElement& abs_elem) const {
  GroupElement x = parent_.zero();
  for (size_t j = 0; j < cyclic_.size(); ++j)
    x = parent_.add(x, parent_.smul(abs_elem.c[j], cyclic_[j].first));
  return x;
}

GroupElement Subgroup::coords_of(const GroupElement& parent_elem) const {
  auto it = abs_coords_.find(parent_.index_of(parent_elem));
  if (it == abs_coords_.end())
    throw Error(errkind::kBadGroup, "element is not in the subgroup");
  return it->second;
}

// ---------------------------------------------------------------------------
// GroupHom

GroupHom GroupHom::create(FiniteAbelianGroup domain, FiniteAbelianGroup codomain, IntMat matrix) {
  if (matrix.rows != codomain.rank() || matrix.cols != domain.rank())
    throw Error(errkind::kBadGroup, "homomorphism matrix has wrong shape");
  // Well-defined on relations: n_j * (column j) = 0 in the codomain.
  for (int j = 0; j < matrix.cols; ++j)
    for (int i = 0; i < matrix.rows; ++i) {
      Int v = matrix.at(i, j) * domain.invariant_factors()[j];
      if (v % codomain.invariant_factors()[i] != 0)
        throw Error(errkind::kBadGroup, "matrix does not respect invariant-factor relations");
    }
  return GroupHom(std::move(domain), std::move(codomain), std::move(matrix));
}

GroupHom GroupHom::identity(const FiniteAbelianGroup& g) {
  return GroupHom(g, g, IntMat::identity(g.rank()));
}

GroupElement GroupHom::apply(const GroupElement& x) const {
  std::vector<int64_t> c(codomain_.rank());
  for (int i = 0; i < codomain_.rank(); ++i) {
    Int s = 0;
    for (int j = 0; j < domain_.rank(); ++j) s += matrix_.at(i, j) * x.c[j];
    int64_t n = codomain_.invariant_factors()[i];
    Int v = s % n;
    if (v < 0) v += n;
    c[i] = static_cast<int64_t>(v);
  }
  return GroupElement{std::move(c)};
}

bool GroupHom::is_surjective() const {
  std::vector<GroupElement> images;
  for (auto& [g, n] : domain_.cyclic_factors()) images.push_back(apply(g));
  Subgroup img = Subgroup::generated(codomain_, images);
  return img.order() == codomain_.order();
}

Subgroup GroupHom::kernel() const {
  std::vector<GroupElement> ker;
  for (const auto& x : domain_.elements())
    if (apply(x) == codomain_.zero()) ker.push_back(x);
  return Subgroup::generated(domain_, ker);
}

const GroupElement& Section::apply(const GroupElement& q) const {
  return table[pi.codomain().index_of(q)];
}

// ---------------------------------------------------------------------------
// Operations

QuotientResult quotient(const FiniteAbelianGroup& g, const Subgroup& h) {
  if (h.parent() != g)
    throw Error(errkind::kGroupMismatch, "subgroup parent differs from the given group");
  const int r = g.rank();
  const int k = static_cast<int>(h.elements().size());
  IntMat lat(r, k + r);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < r; ++i) lat.at(i, j) = h.elements()[j].c[i];
  for (int i = 0; i < r; ++i) lat.at(i, k + i) = g.invariant_factors()[i];
  SnfResult snf = smith_normal_form(lat);

  std::vector<int64_t> qfactors;
  std::vector<int> keep;
  for (int i = 0; i < r; ++i) {
    Int d = snf.d.at(i, i);
    if (d > 1) {
      qfactors.push_back(static_cast<int64_t>(d));
      keep.push_back(i);
    }
  }
  FiniteAbelianGroup q(qfactors, g.order() == 0 ? 1 : g.order());
  IntMat pm(static_cast<int>(keep.size()), r);
  for (size_t i = 0; i < keep.size(); ++i)
    for (int j = 0; j < r; ++j) {
      Int v = snf.u.at(keep[i], j) % qfactors[i];
      if (v < 0) v += qfactors[i];
      pm.at(static_cast<int>(i), j) = v;
    }
  GroupHom pi = GroupHom::create(g, q, pm);
  return QuotientResult{std::move(q), std::move(pi)};
}

Section section(const GroupHom& pi) {
  if (!pi.is_surjective())
    throw Error(errkind::kNonSurjective, "section requires a surjective homomorphism");
  const auto& q = pi.codomain();
  std::vector<GroupElement> table(q.order(), GroupElement{});
  std::vector<bool> done(q.order(), false);
  int64_t remaining = q.order();
  for (int64_t i = 0; i < pi.domain().order() && remaining > 0; ++i) {
    GroupElement g = pi.domain().element_at(i);
    int64_t qi = q.index_of(pi.apply(g));
    if (!done[qi]) {
      done[qi] = true;
      table[qi] = g;
      --remaining;
    }
  }
  return Section{pi, std::move(table)};
}

std::vector<GroupHom> hom_group(const FiniteAbelianGroup& h, const FiniteAbelianGroup& t) {
  // Images of the canonical generator of each factor, ranging over the
  // elements of t annihilated by n_i, enumerated in index order.
  std::vector<std::vector<GroupElement>> choices;
  for (int64_t n : h.invariant_factors()) {
    std::vector<GroupElement> ch;
    for (const auto& x : t.elements())
      if (t.smul(n, x) == t.zero()) ch.push_back(x);
    choices.push_back(std::move(ch));
  }
  std::vector<GroupHom> out;
  std::vector<size_t> pick(choices.size(), 0);
  for (;;) {
    IntMat m(t.rank(), h.rank());
    for (int j = 0; j < h.rank(); ++j)
      for (int i = 0; i < t.rank(); ++i) m.at(i, j) = choices[j][pick[j]].c[i];
    out.push_back(GroupHom::create(h, t, std::move(m)));
    size_t j = 0;
    for (; j < pick.size(); ++j) {
      if (++pick[j] < choices[j].size()) break;
      pick[j] = 0;
    }
    if (j == pick.size()) break;
    if (pick.empty()) break;
  }
  return out;
}

std::vector<Subgroup> all_subgroups(const FiniteAbelianGroup& g) {
  // Enumerate element-index sets first (cheap closures), then build Subgroup
  // objects once per distinct set.
  const int64_t n = g.order();
  std::vector<std::vector<int64_t>> add_row(n);  // addition table, built lazily per row
  auto add_idx = [&](int64_t a, int64_t b) {
    auto& row = add_row[a];
    if (row.empty()) {
      row.resize(n);
      GroupElement ea = g.element_at(a);
      for (int64_t j = 0; j < n; ++j) row[j] = g.index_of(g.add(ea, g.element_at(j)));
    }
    return row[b];
  };

  // Closure of a subgroup set with one extra element: union of cosets S + k*x.
  auto extend = [&](const std::vector<int64_t>& s, int64_t x) {
    std::vector<char> in(n, 0);
    for (int64_t i : s) in[i] = 1;
    std::vector<int64_t> out = s;
    int64_t shift = x;
    while (!in[shift]) {
      for (int64_t i : s) {
        int64_t j = add_idx(i, shift);
        if (!in[j]) {
          in[j] = 1;
          out.push_back(j);
        }
      }
      shift = add_idx(shift, x);
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::set<std::vector<int64_t>> seen;
  std::vector<std::vector<int64_t>> queue{{0}};
  seen.insert(queue[0]);
  for (size_t q = 0; q < queue.size(); ++q) {
    std::vector<int64_t> s = queue[q];
    for (int64_t x = 1; x < n; ++x) {
      if (std::binary_search(s.begin(), s.end(), x)) continue;
      auto bigger = extend(s, x);
      if (seen.insert(bigger).second) queue.push_back(std::move(bigger));
    }
  }

  std::vector<Subgroup> out;
  out.reserve(seen.size());
  for (const auto& s : seen) {
    std::vector<GroupElement> gens;
    gens.reserve(s.size());
    for (int64_t i : s) gens.push_back(g.element_at(i));
    out.push_back(Subgroup::generated(g, std::move(gens)));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return out;
}

}  // namespace loopalg
