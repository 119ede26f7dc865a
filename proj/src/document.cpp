#include "mvcurl/document.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace mvcurl {

std::string_view keyword(BindingKind kind) {
  switch (kind) {
    case BindingKind::Function: return "func";
    case BindingKind::Multivector: return "mv";
    case BindingKind::Form: return "form";
    case BindingKind::Volume: return "volume";
    case BindingKind::Lie: return "lie";
  }
  return "?";
}

std::optional<BindingKind> kind_from_keyword(std::string_view word) {
  static constexpr std::array kinds{BindingKind::Function, BindingKind::Multivector, BindingKind::Form,
                                    BindingKind::Volume, BindingKind::Lie};
  for (auto k : kinds)
    if (keyword(k) == word) return k;
  return std::nullopt;
}

bool is_reserved_name(std::string_view name) {
  if (name == "chart" || kind_from_keyword(name)) return true;
  if (name.size() >= 2 && (name[0] == 'e' || name[0] == 'd'))
    return std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  return false;
}

Document::Document(ChartPtr chart) : chart_(std::move(chart)) {
  if (!chart_) throw ValidationError("document without a chart");
  for (const auto& n : chart_->names())
    if (is_reserved_name(n)) throw ValidationError("coordinate name '" + n + "' is reserved");
}

namespace {

bool holds_kind(const BindingValue& v, BindingKind kind) {
  switch (kind) {
    case BindingKind::Function: return std::holds_alternative<RationalFunc>(v);
    case BindingKind::Multivector: return std::holds_alternative<Multivector>(v);
    case BindingKind::Form: return std::holds_alternative<DifferentialForm>(v);
    case BindingKind::Volume: return std::holds_alternative<VolumeForm>(v);
    case BindingKind::Lie: return std::holds_alternative<StructureConstants>(v);
  }
  return false;
}

}  // namespace

void Document::add(Binding binding) {
  const auto& name = binding.name;
  if (name.empty()) throw ValidationError("empty binding name");
  if (is_reserved_name(name)) throw ValidationError("name '" + name + "' is reserved");
  const auto& coords = chart_->names();
  if (std::find(coords.begin(), coords.end(), name) != coords.end())
    throw ValidationError("name '" + name + "' is a coordinate");
  if (find(name)) throw ValidationError("duplicate binding '" + name + "'");
  if (!holds_kind(binding.value, binding.kind))
    throw ValidationError("binding '" + name + "' does not hold a " + std::string(keyword(binding.kind)));

  const std::size_t n = chart_->dim();
  const bool ok = std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RationalFunc>) {
          return v.nvars() == n;
        } else if constexpr (std::is_same_v<T, StructureConstants>) {
          return v.dim() == n;
        } else {
          return *v.chart() == *chart_;
        }
      },
      binding.value);
  if (!ok) throw ValidationError("binding '" + name + "' is not defined over the document chart");
  bindings_.push_back(std::move(binding));
}

const Binding* Document::find(std::string_view name) const {
  for (const auto& b : bindings_)
    if (b.name == name) return &b;
  return nullptr;
}

const Binding& Document::get(std::string_view name) const {
  if (const auto* b = find(name)) return *b;
  throw ValidationError("no binding named '" + std::string(name) + "'");
}

const Binding* Document::first_of(BindingKind kind) const {
  for (const auto& b : bindings_)
    if (b.kind == kind) return &b;
  return nullptr;
}

}  // namespace mvcurl
