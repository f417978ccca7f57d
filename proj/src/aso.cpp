#include "qboson/aso.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace qboson {

namespace {

void check_compatible(const ASOElement& x, const ASOElement& y) {
  if (!x.table()->compatible_with(*y.table())) {
    throw IncompatibleError("ASO elements use different ladder tables");
  }
}

void check_not_degenerate(const LadderTable& tab) {
  const int bad = tab.first_degenerate_level();
  if (bad != 0) {
    throw DegenerateDeformationError(
        bad, "degenerate deformation: F(" + std::to_string(bad) + ") = " +
                 std::to_string(tab.F(bad)) + " at level " + std::to_string(bad));
  }
}

}  // namespace

ASOElement::ASOElement(LadderTableRef table) : table_(std::move(table)) {}

ASOElement ASOElement::monomial(int n, int m, LadderTableRef table, Complex coeff) {
  ASOElement x(std::move(table));
  x.add(n, m, coeff);
  return x;
}

int ASOElement::max_degree() const {
  int deg = 0;
  for (const auto& [nm, v] : terms_) deg = std::max(deg, nm.first + nm.second);
  return deg;
}

Complex ASOElement::coeff(int n, int m) const {
  auto it = terms_.find({n, m});
  return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

void ASOElement::add(int n, int m, Complex amplitude) {
  if (n < 0 || m < 0) throw Error("negative monomial powers");
  if (amplitude == Complex{0.0, 0.0}) return;
  auto [it, inserted] = terms_.try_emplace({n, m}, amplitude);
  if (!inserted) {
    it->second += amplitude;
    if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
  }
}

ASOElement& ASOElement::operator+=(const ASOElement& other) {
  check_compatible(*this, other);
  for (const auto& [nm, v] : other.terms_) add(nm.first, nm.second, v);
  return *this;
}

ASOElement& ASOElement::operator-=(const ASOElement& other) {
  check_compatible(*this, other);
  for (const auto& [nm, v] : other.terms_) add(nm.first, nm.second, -v);
  return *this;
}

ASOElement& ASOElement::operator*=(Complex scale) {
  if (scale == Complex{0.0, 0.0}) {
    terms_.clear();
    return *this;
  }
  for (auto& [nm, v] : terms_) v *= scale;
  return *this;
}

bool ASOElement::operator==(const ASOElement& other) const {
  return terms_ == other.terms_;
}

std::string ASOElement::to_json() const {
  nlohmann::ordered_json j;
  j["terms"] = nlohmann::json::array();
  for (const auto& [nm, v] : terms_) {
    j["terms"].push_back({{"np", nm.first}, {"nm", nm.second},
                          {"re", v.real()}, {"im", v.imag()}});
  }
  return j.dump();
}

ASOElement ASOElement::from_json(const std::string& text, LadderTableRef table) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad ASO element JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw InputError("ASO element JSON needs a \"terms\" array");
  }
  ASOElement x(std::move(table));
  for (const auto& t : j["terms"]) {
    x.add(t.at("np").get<int>(), t.at("nm").get<int>(),
          Complex{t.at("re").get<double>(), t.value("im", 0.0)});
  }
  return x;
}

SigmaCoeffs::SigmaCoeffs(LadderTableRef table) : table_(std::move(table)) {}

double SigmaCoeffs::c(int n, int m, int i) const {
  // sqrt(F!(n+i)/F!(i)) * sqrt(F!(m+i)/F!(i)) with the ratios telescoped:
  // keeps intermediates small and makes C(0,m,i) anchors exact
  double left = 1.0, right = 1.0;
  for (int j = i + 1; j <= n + i; ++j) left *= table_->F(j);
  for (int j = i + 1; j <= m + i; ++j) right *= table_->F(j);
  return std::sqrt(left) * std::sqrt(right);
}

std::vector<double> SigmaCoeffs::d_row(int n, int m, int kmax) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = rows_.find({n, m});
    if (it != rows_.end() && static_cast<int>(it->second.size()) > kmax) {
      return {it->second.begin(), it->second.begin() + kmax + 1};
    }
  }
  const int bad = table_->first_degenerate_level();
  if (bad != 0 && bad <= std::max(n, m) + kmax) {
    throw DegenerateDeformationError(
        bad, "degenerate deformation: F(" + std::to_string(bad) + ") <= 0");
  }
  std::vector<double> d(static_cast<std::size_t>(kmax) + 1);
  d[0] = 1.0 / c(n, m, 0);
  for (int k = 1; k <= kmax; ++k) {
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += c(n + i, m + i, k - i) * d[static_cast<std::size_t>(i)];
    d[static_cast<std::size_t>(k)] = -sum / c(n + k, m + k, 0);
  }
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto& slot = rows_[{n, m}];
    if (slot.size() < d.size()) slot = d;
  }
  return d;
}

ASOElement bullet_undeformed(const ASOElement& x, const ASOElement& y) {
  check_compatible(x, y);
  if (!x.table()->is_standard()) {
    throw UnsupportedKindError(
        "bullet_undeformed needs the standard table; use bullet_deformed");
  }
  const double hbar = x.table()->hbar();
  ASOElement out(x.table());
  for (const auto& [nm, v] : x.terms()) {
    const int n = nm.first, m = nm.second;
    for (const auto& [rs, w] : y.terms()) {
      const int r = rs.first, s = rs.second;
      double pairing = 1.0;  // hbar^k k! binom(m,k) binom(r,k), iteratively
      for (int k = 0; k <= std::min(m, r); ++k) {
        out.add(n + r - k, m + s - k, v * w * pairing);
        pairing *= hbar * static_cast<double>(m - k) * static_cast<double>(r - k) /
                   static_cast<double>(k + 1);
      }
    }
  }
  return out;
}

EigenElement sigma(const ASOElement& x) {
  const SigmaCoeffs coeffs(x.table());
  const int d = x.table()->dim();
  EigenElement out(x.table());
  for (const auto& [nm, v] : x.terms()) {
    const int n = nm.first, m = nm.second;
    for (int i = 0; n + i < d && m + i < d; ++i) {
      out.add(n + i, m + i, v * coeffs.c(n, m, i));
    }
  }
  return out;
}

ASOElement sigma_inverse(const EigenElement& x) {
  check_not_degenerate(*x.table());
  const SigmaCoeffs coeffs(x.table());
  const int d = x.dim();
  ASOElement out(x.table());
  for (const auto& [nm, v] : x.terms()) {
    const int n = nm.first, m = nm.second;
    const int kcap = d - 1 - std::max(n, m);
    const auto row = coeffs.d_row(n, m, kcap);
    for (int k = 0; k <= kcap; ++k) {
      out.add(n + k, m + k, v * row[static_cast<std::size_t>(k)]);
    }
  }
  return out;
}

ASOElement bullet_deformed(const ASOElement& x, const ASOElement& y) {
  check_compatible(x, y);
  return sigma_inverse(star(sigma(x), sigma(y)));
}

}  // namespace qboson
