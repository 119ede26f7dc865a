#include "mvcurl/json_io.hpp"

namespace mvcurl {
namespace {

Json polynomial_to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json exps = Json::array();
    for (std::size_t i = 0; i < p.nvars(); ++i) exps.push_back(m.exponent(i));
    terms.push_back({{"exponents", exps}, {"coeff", to_json(c)}});
  }
  return terms;
}

Polynomial polynomial_from_json(const Json& j, std::size_t nvars) {
  std::vector<Polynomial::Term> terms;
  for (const auto& t : j) {
    const auto& exps = t.at("exponents");
    if (exps.size() != nvars) throw ValidationError("monomial with wrong number of exponents");
    Monomial m(nvars);
    for (std::size_t i = 0; i < nvars; ++i) m.set_exponent(i, exps[i].get<unsigned>());
    terms.emplace_back(m, rational_from_json(t.at("coeff")));
  }
  return Polynomial::from_terms(nvars, std::move(terms));
}

template <class Kind>
Json blade_sum_to_json(const BladeSum<Kind>& a, const char* kind) {
  Json terms = Json::array();
  for (const auto& [blade, f] : a.terms()) {
    Json idx = Json::array();
    for (auto i : blade.indices()) idx.push_back(i + 1);
    terms.push_back({{"blade", idx}, {"coeff", to_json(f)}});
  }
  return {{"kind", kind}, {"grade", a.grade()}, {"terms", terms}};
}

template <class Kind>
BladeSum<Kind> blade_sum_from_json(const Json& j, const ChartPtr& chart, const char* kind) {
  if (j.at("kind").get<std::string>() != kind) throw ValidationError(std::string("expected kind ") + kind);
  const int grade = j.at("grade").get<int>();
  BladeSum<Kind> out(chart, grade);
  for (const auto& t : j.at("terms")) {
    IndexSet blade;
    for (const auto& i : t.at("blade")) {
      const auto k = i.get<std::size_t>();
      if (k == 0 || k > chart->dim()) throw ValidationError("blade index outside the chart");
      if (blade.contains(k - 1)) throw ValidationError("repeated blade index");
      blade = blade | IndexSet::single(k - 1);
    }
    if (blade.grade() != grade) throw ValidationError("blade grade differs from object grade");
    out.add(blade, rational_func_from_json(t.at("coeff"), chart->dim()));
  }
  return out;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
}

}  // namespace

Json to_json(const Rational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

Json to_json(const RationalFunc& f) {
  return {{"numerator", polynomial_to_json(f.numerator())}, {"denominator", polynomial_to_json(f.denominator())}};
}

Json to_json(const Multivector& a) { return blade_sum_to_json(a, "mv"); }
Json to_json(const DifferentialForm& omega) { return blade_sum_to_json(omega, "form"); }

Json to_json(const VolumeForm& v) { return {{"kind", "volume"}, {"density", to_json(v.density())}}; }

Json to_json(const StructureConstants& c) {
  Json brackets = Json::array();
  for (std::size_t i = 0; i < c.dim(); ++i) {
    for (std::size_t j = i + 1; j < c.dim(); ++j) {
      Json value = Json::array();
      bool nonzero = false;
      for (std::size_t k = 0; k < c.dim(); ++k) {
        value.push_back(to_json(c(i, j, k)));
        nonzero = nonzero || c(i, j, k) != 0;
      }
      if (nonzero) brackets.push_back({{"i", i + 1}, {"j", j + 1}, {"value", value}});
    }
  }
  return {{"kind", "lie"}, {"dim", c.dim()}, {"brackets", brackets}};
}

Json to_json(const Binding& b) {
  Json value = std::visit([](const auto& v) { return to_json(v); }, b.value);
  return {{"name", b.name}, {"kind", std::string(keyword(b.kind))}, {"value", value}};
}

Json to_json(const Document& doc) {
  Json bindings = Json::array();
  for (const auto& b : doc.bindings()) bindings.push_back(to_json(b));
  return {{"chart", doc.chart()->names()}, {"bindings", bindings}};
}

Json to_json(const TruncatedComplexReport& r) {
  return {{"k", r.k},
          {"domain_degree_bound", r.domain_degree_bound},
          {"dim_exact_k", r.dim_exact_k},
          {"dim_kernel", r.dim_kernel},
          {"dim_image_from_km1", r.dim_image_from_km1},
          {"truncated_h_dim", r.truncated_h_dim},
          {"truncated", r.truncated}};
}

Rational rational_from_json(const Json& j) {
  return guarded([&] {
    mpz_class num, den;
    if (num.set_str(j.at("num").get<std::string>(), 10) != 0 || den.set_str(j.at("den").get<std::string>(), 10) != 0)
      throw ValidationError("rational components must be decimal integers");
    if (den == 0) throw ValidationError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
  });
}

RationalFunc rational_func_from_json(const Json& j, std::size_t nvars) {
  return guarded([&] {
    auto num = polynomial_from_json(j.at("numerator"), nvars);
    auto den = polynomial_from_json(j.at("denominator"), nvars);
    if (den.is_zero()) throw ValidationError("zero denominator");
    return RationalFunc(num, den);
  });
}

Multivector multivector_from_json(const Json& j, const ChartPtr& chart) {
  return guarded([&] { return blade_sum_from_json<VectorKind>(j, chart, "mv"); });
}

DifferentialForm form_from_json(const Json& j, const ChartPtr& chart) {
  return guarded([&] { return blade_sum_from_json<FormKind>(j, chart, "form"); });
}

namespace {

StructureConstants lie_from_json(const Json& j, std::size_t n) {
  if (j.at("dim").get<std::size_t>() != n) throw ValidationError("structure constants of the wrong dimension");
  std::vector<StructureConstants::Bracket> brackets;
  for (const auto& b : j.at("brackets")) {
    const auto i = b.at("i").get<std::size_t>();
    const auto k = b.at("j").get<std::size_t>();
    if (i == 0 || k == 0) throw ValidationError("bracket index outside the algebra");
    std::vector<Rational> value;
    for (const auto& q : b.at("value")) value.push_back(rational_from_json(q));
    if (value.size() != n) throw ValidationError("bracket value of the wrong length");
    brackets.push_back({i - 1, k - 1, std::move(value)});
  }
  return StructureConstants(n, brackets);
}

}  // namespace

Document document_from_json(const Json& j) {
  return guarded([&] {
    std::vector<std::string> names = j.at("chart").get<std::vector<std::string>>();
    Document doc(make_chart(std::move(names)));
    const auto& chart = doc.chart();
    for (const auto& b : j.at("bindings")) {
      auto kind = kind_from_keyword(b.at("kind").get<std::string>());
      if (!kind) throw ValidationError("unknown binding kind");
      const auto& v = b.at("value");
      BindingValue value;
      switch (*kind) {
        case BindingKind::Function: value = rational_func_from_json(v, chart->dim()); break;
        case BindingKind::Multivector: value = multivector_from_json(v, chart); break;
        case BindingKind::Form: value = form_from_json(v, chart); break;
        case BindingKind::Volume: {
          auto density = rational_func_from_json(v.at("density"), chart->dim());
          if (density.is_zero()) throw ValidationError("volume density must be non-zero");
          value = VolumeForm(chart, density);
          break;
        }
        case BindingKind::Lie: value = lie_from_json(v, chart->dim()); break;
      }
      doc.add({b.at("name").get<std::string>(), *kind, std::move(value)});
    }
    return doc;
  });
}

}  // namespace mvcurl
