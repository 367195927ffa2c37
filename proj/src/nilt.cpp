#include "pfcme/nilt.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "pfcme/errors.hpp"
#include "pfcme/summation.hpp"

namespace pfcme {

double PoleResidueForm::reconstruct(double t) const {
  CompensatedSum sum;
  for (std::size_t l = 0; l < nodes.size(); ++l) {
    sum.add((weights[l] * std::exp(-nodes[l] * t)).real());
  }
  return sum.value();
}

PoleResidueForm pole_residue(const PfCmeDistribution& dist, bool prune_small) {
  const auto& p = dist.params();
  const auto& B = dist.coeffs().B;
  const double C = dist.normalization();
  PoleResidueForm form;
  form.order = p.n;
  form.nodes.reserve(B.size());
  form.weights.reserve(B.size());
  double largest = 0.0;
  for (double b : B) largest = std::max(largest, b);
  for (std::size_t l = 0; l < B.size(); ++l) {
    if (prune_small && B[l] < kResidueCutoff * largest) continue;
    const double a = static_cast<double>(l) * p.omega;
    form.nodes.emplace_back(1.0, -a);
    if (l == 0) {
      form.weights.emplace_back(C * B[0], 0.0);
    } else {
      form.weights.push_back(2.0 * C * B[l] * Complex(std::cos(a), -std::sin(a)));
    }
  }
  return form;
}

namespace {

Complex horner(const std::vector<double>& coeffs, Complex s) {
  Complex acc(0.0, 0.0);
  for (double c : coeffs) acc = acc * s + c;
  return acc;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw DomainError("bad coefficient '" + std::string(item) + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

TransformFunction rational_transform(std::vector<double> numerator,
                                     std::vector<double> denominator,
                                     std::string name) {
  if (numerator.empty()) throw DomainError("empty numerator");
  if (std::all_of(denominator.begin(), denominator.end(),
                  [](double c) { return c == 0.0; })) {
    throw DomainError("denominator must have a nonzero coefficient");
  }
  TransformFunction f;
  f.name = std::move(name);
  f.description = "(" + join(numerator) + ")/(" + join(denominator) + ")";
  f.transform = [num = std::move(numerator),
                 den = std::move(denominator)](Complex s) {
    return horner(num, s) / horner(den, s);
  };
  return f;
}

TransformFunction parse_rational(std::string_view text) {
  std::optional<std::vector<double>> num, den;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t semi = text.find(';', pos);
    if (semi == std::string_view::npos) semi = text.size();
    std::string_view part = text.substr(pos, semi - pos);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    pos = semi + 1;
    if (part.empty()) continue;
    const std::size_t eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw DomainError("expected key=value in '" + std::string(part) + "'");
    }
    std::string_view key = part.substr(0, eq);
    while (!key.empty() && key.back() == ' ') key.remove_suffix(1);
    const std::vector<double> values = parse_list(part.substr(eq + 1));
    if (key == "num") {
      num = values;
    } else if (key == "den") {
      den = values;
    } else {
      throw DomainError("unknown key '" + std::string(key) + "'");
    }
  }
  if (!num || !den) throw DomainError("rational transform needs num= and den=");
  return rational_transform(*num, *den);
}

const std::vector<TransformFunction>& catalog() {
  static const std::vector<TransformFunction> entries = [] {
    std::vector<TransformFunction> v;

    auto named = [](TransformFunction f, std::string name,
                    std::function<double(double)> inverse) {
      f.name = std::move(name);
      f.inverse = std::move(inverse);
      return f;
    };
    v.push_back(named(rational_transform({1.0}, {1.0, 0.0}), "const",
                      [](double) { return 1.0; }));
    v.push_back(named(rational_transform({1.0}, {1.0, 0.0, 0.0}), "ramp",
                      [](double t) { return t; }));
    v.push_back(named(rational_transform({1.0}, {1.0, 1.0}), "exp",
                      [](double t) { return std::exp(-t); }));
    v.push_back(named(rational_transform({1.0}, {1.0, 0.0, 1.0}), "sin",
                      [](double t) { return std::sin(t); }));

    TransformFunction step;
    step.name = "step";
    step.description = "exp(-s)/s";
    step.transform = [](Complex s) { return std::exp(-s) / s; };
    step.inverse = [](double t) { return t >= 1.0 ? 1.0 : 0.0; };
    v.push_back(std::move(step));
    return v;
  }();
  return entries;
}

std::optional<TransformFunction> find_transform(std::string_view name) {
  for (const auto& f : catalog()) {
    if (f.name == name) return f;
  }
  return std::nullopt;
}

double invert(const PoleResidueForm& form, const TransformFunction& F,
              double T) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw DomainError("inversion time must be positive and finite");
  }
  CompensatedSum sum;
  for (std::size_t l = 0; l < form.nodes.size(); ++l) {
    const Complex s = form.nodes[l] / T;
    const Complex value = F.transform(s);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      std::ostringstream os;
      os << "transform '" << F.name << "' is not finite at node " << l
         << " (s = " << s.real() << (s.imag() < 0 ? " - " : " + ")
         << std::abs(s.imag()) << "i)";
      throw NumericError(os.str());
    }
    sum.add((form.weights[l] * value).real());
  }
  return sum.value() / T;
}

}  // namespace pfcme
