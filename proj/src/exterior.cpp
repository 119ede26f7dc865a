#include "mvcurl/exterior.hpp"

#include <set>

namespace mvcurl {

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty() || names_.size() > kMaxVars) throw DomainError("chart dimension must be in [1, 16]");
  std::set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw ValidationError("empty coordinate name");
    if (!seen.insert(name).second) throw ValidationError("duplicate coordinate name '" + name + "'");
  }
}

RationalFunc Chart::coordinate(std::size_t i) const {
  if (i >= dim()) throw DomainError("coordinate index out of range");
  return RationalFunc::variable(dim(), i);
}

ChartPtr make_chart(std::vector<std::string> names) { return std::make_shared<const Chart>(std::move(names)); }

ChartPtr make_chart(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return make_chart(std::move(names));
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a != b && !(*a == *b)) throw DimensionMismatch("objects live on different charts");
}

std::vector<std::size_t> IndexSet::indices() const {
  std::vector<std::size_t> out;
  for (std::uint32_t rest = bits; rest != 0; rest &= rest - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
  }
  return out;
}

int shuffle_sign(IndexSet a, IndexSet b) noexcept {
  if ((a.bits & b.bits) != 0) return 0;
  int inversions = 0;
  for (std::uint32_t rest = b.bits; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(a.bits >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

// ---------------------------------------------------------------------------

VolumeForm::VolumeForm(ChartPtr chart, RationalFunc density) : chart_(std::move(chart)), density_(std::move(density)) {
  if (density_.nvars() != chart_->dim()) throw DimensionMismatch("density lives on a different chart");
  if (density_.is_zero()) throw MathError("volume form density must be non-zero");
}

VolumeForm VolumeForm::standard(ChartPtr chart) {
  auto one = chart->one();
  return VolumeForm(std::move(chart), std::move(one));
}

DifferentialForm VolumeForm::as_form() const {
  return DifferentialForm::blade(chart_, IndexSet::full(chart_->dim()), density_);
}

VolumeForm VolumeForm::scaled(const RationalFunc& m) const { return VolumeForm(chart_, m * density_); }

namespace {

template <class Kind>
BladeSum<Kind> wedge_impl(const BladeSum<Kind>& a, const BladeSum<Kind>& b) {
  require_same_chart(a.chart(), b.chart());
  BladeSum<Kind> r(a.chart(), a.grade() + b.grade());
  for (const auto& [ia, fa] : a.terms()) {
    for (const auto& [ib, fb] : b.terms()) {
      const int s = shuffle_sign(ia, ib);
      if (s == 0) continue;
      RationalFunc c = fa * fb;
      r.add(ia | ib, s > 0 ? c : -c);
    }
  }
  return r;
}

// Contraction of blade `inner` into blade `outer` from the left: the sign of
// the shuffle (inner, outer \ inner), or 0 when inner is not contained.
int left_contraction_sign(IndexSet inner, IndexSet outer) noexcept {
  if (!inner.subset_of(outer)) return 0;
  return shuffle_sign(inner, outer - inner);
}

}  // namespace

Multivector wedge(const Multivector& a, const Multivector& b) { return wedge_impl(a, b); }
DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) { return wedge_impl(a, b); }

RationalFunc pairing(const DifferentialForm& omega, const Multivector& a) {
  require_same_chart(omega.chart(), a.chart());
  RationalFunc total = a.chart()->zero();
  if (omega.grade() != a.grade()) return total;
  for (const auto& [idx, f] : omega.terms()) {
    auto it = a.terms().find(idx);
    if (it != a.terms().end()) total += f * it->second;
  }
  return total;
}

DifferentialForm interior_product_form(const Multivector& a, const DifferentialForm& omega) {
  require_same_chart(a.chart(), omega.chart());
  if (omega.grade() < a.grade()) return DifferentialForm(a.chart(), 0);
  DifferentialForm r(a.chart(), omega.grade() - a.grade());
  for (const auto& [ia, fa] : a.terms()) {
    for (const auto& [iw, fw] : omega.terms()) {
      const int s = left_contraction_sign(ia, iw);
      if (s == 0) continue;
      RationalFunc c = fa * fw;
      r.add(iw - ia, s > 0 ? c : -c);
    }
  }
  return r;
}

Multivector interior_product_vector(const DifferentialForm& omega, const Multivector& a) {
  require_same_chart(a.chart(), omega.chart());
  if (a.grade() < omega.grade()) return Multivector(a.chart(), 0);
  Multivector r(a.chart(), a.grade() - omega.grade());
  for (const auto& [iw, fw] : omega.terms()) {
    for (const auto& [ia, fa] : a.terms()) {
      const int s = left_contraction_sign(iw, ia);
      if (s == 0) continue;
      RationalFunc c = fw * fa;
      r.add(ia - iw, s > 0 ? c : -c);
    }
  }
  return r;
}

DifferentialForm flat(const VolumeForm& v, const Multivector& a) {
  require_same_chart(v.chart(), a.chart());
  const std::size_t n = v.chart()->dim();
  if (a.grade() > static_cast<int>(n)) throw DomainError("grade exceeds the chart dimension");
  const IndexSet full = IndexSet::full(n);
  DifferentialForm r(a.chart(), static_cast<int>(n) - a.grade());
  for (const auto& [idx, f] : a.terms()) {
    RationalFunc c = f * v.density();
    r.add(full - idx, shuffle_sign(idx, full - idx) > 0 ? c : -c);
  }
  return r;
}

Multivector sharp(const VolumeForm& v, const DifferentialForm& omega) {
  require_same_chart(v.chart(), omega.chart());
  const std::size_t n = v.chart()->dim();
  if (omega.grade() > static_cast<int>(n)) throw DomainError("degree exceeds the chart dimension");
  const IndexSet full = IndexSet::full(n);
  const RationalFunc inv = v.density().inverse();
  Multivector r(omega.chart(), static_cast<int>(n) - omega.grade());
  for (const auto& [idx, f] : omega.terms()) {
    const IndexSet comp = full - idx;
    RationalFunc c = f * inv;
    r.add(comp, shuffle_sign(comp, idx) > 0 ? c : -c);
  }
  return r;
}

DifferentialForm exterior_derivative(const DifferentialForm& omega) {
  const std::size_t n = omega.chart()->dim();
  DifferentialForm r(omega.chart(), omega.grade() + 1);
  for (const auto& [idx, f] : omega.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      const IndexSet di = IndexSet::single(i);
      const int s = shuffle_sign(di, idx);
      if (s == 0) continue;
      RationalFunc c = f.derivative(i);
      if (c.is_zero()) continue;
      r.add(di | idx, s > 0 ? c : -c);
    }
  }
  return r;
}

DifferentialForm differential(const ChartPtr& chart, const RationalFunc& f) {
  if (f.nvars() != chart->dim()) throw DimensionMismatch("function lives on a different chart");
  DifferentialForm r(chart, 1);
  for (std::size_t i = 0; i < chart->dim(); ++i) r.add(IndexSet::single(i), f.derivative(i));
  return r;
}

DifferentialForm witten_derivative(const Rational& t, const RationalFunc& f, const DifferentialForm& omega) {
  DifferentialForm d_omega = exterior_derivative(omega);
  if (t == 0) return d_omega;
  const RationalFunc tf = RationalFunc::constant(f.nvars(), t) * f;
  return wedge(differential(omega.chart(), tf), omega) + d_omega;
}

DifferentialForm marsden_derivative(const RationalFunc& f, const DifferentialForm& omega) {
  if (f.is_zero()) throw MathError("Marsden differential needs a non-zero function");
  return f.inverse() * exterior_derivative(f * omega);
}

}  // namespace mvcurl
