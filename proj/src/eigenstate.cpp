#include "qboson/eigenstate.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>

#include <nlohmann/json.hpp>

namespace qboson {

namespace {

void check_compatible(const EigenElement& x, const EigenElement& y) {
  if (x.dim() != y.dim() || !x.table()->compatible_with(*y.table())) {
    throw IncompatibleError("eigen elements use different dimensions or ladder tables");
  }
}

}  // namespace

std::string to_string(Generator g) {
  switch (g) {
    case Generator::one: return "1";
    case Generator::e: return "E";
    case Generator::a: return "A";
    case Generator::a_plus: return "A+";
    case Generator::n: return "N";
    case Generator::h: return "H";
  }
  return "?";
}

EigenElement::EigenElement(LadderTableRef table)
    : table_(std::move(table)), dim_(table_->dim()) {}

EigenElement EigenElement::basis(int n, int m, LadderTableRef table) {
  EigenElement x(std::move(table));
  x.add(n, m, Complex{1.0, 0.0});
  return x;
}

Complex EigenElement::coeff(int n, int m) const {
  auto it = terms_.find({n, m});
  return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

void EigenElement::add(int n, int m, Complex amplitude) {
  if (n < 0 || m < 0 || n >= dim_ || m >= dim_) {
    throw LevelCapError("eigen index (" + std::to_string(n) + "," + std::to_string(m) +
                        ") outside dimension " + std::to_string(dim_));
  }
  if (amplitude == Complex{0.0, 0.0}) return;
  auto [it, inserted] = terms_.try_emplace({n, m}, amplitude);
  if (!inserted) {
    it->second += amplitude;
    if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
  }
}

EigenElement& EigenElement::operator+=(const EigenElement& other) {
  check_compatible(*this, other);
  for (const auto& [nm, v] : other.terms_) add(nm.first, nm.second, v);
  return *this;
}

EigenElement& EigenElement::operator-=(const EigenElement& other) {
  check_compatible(*this, other);
  for (const auto& [nm, v] : other.terms_) add(nm.first, nm.second, -v);
  return *this;
}

EigenElement& EigenElement::operator*=(Complex scale) {
  if (scale == Complex{0.0, 0.0}) {
    terms_.clear();
    return *this;
  }
  for (auto& [nm, v] : terms_) v *= scale;
  return *this;
}

bool EigenElement::operator==(const EigenElement& other) const {
  return dim_ == other.dim_ && terms_ == other.terms_;
}

std::string EigenElement::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim_;
  j["terms"] = nlohmann::json::array();
  for (const auto& [nm, v] : terms_) {
    j["terms"].push_back({{"n", nm.first}, {"m", nm.second},
                          {"re", v.real()}, {"im", v.imag()}});
  }
  return j.dump();
}

EigenElement EigenElement::from_json(const std::string& text, LadderTableRef table) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad eigen element JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw InputError("eigen element JSON needs a \"terms\" array");
  }
  if (j.contains("dim") && j["dim"].get<int>() != table->dim()) {
    throw IncompatibleError("eigen element dim does not match the ladder table");
  }
  EigenElement x(std::move(table));
  for (const auto& t : j["terms"]) {
    x.add(t.at("n").get<int>(), t.at("m").get<int>(),
          Complex{t.at("re").get<double>(), t.value("im", 0.0)});
  }
  return x;
}

EigenElement star(const EigenElement& x, const EigenElement& y) {
  check_compatible(x, y);
  EigenElement out(x.table());
  const auto& ymap = y.terms();
  for (const auto& [nm, v] : x.terms()) {
    const int m = nm.second;
    auto it = ymap.lower_bound({m, std::numeric_limits<int>::min()});
    for (; it != ymap.end() && it->first.first == m; ++it) {
      out.add(nm.first, it->first.second, v * it->second);
    }
  }
  return out;
}

EigenElement conjugate(const EigenElement& x) {
  EigenElement out(x.table());
  for (const auto& [nm, v] : x.terms()) out.add(nm.second, nm.first, std::conj(v));
  return out;
}

Complex inner_product(const EigenElement& x, const EigenElement& y) {
  check_compatible(x, y);
  Complex acc{0.0, 0.0};
  const auto& ymap = y.terms();
  for (const auto& [nm, v] : x.terms()) {
    auto it = ymap.find(nm);
    if (it != ymap.end()) acc += std::conj(v) * it->second;
  }
  return acc;
}

EigenElement identity_element(LadderTableRef table) {
  EigenElement x(table);
  for (int n = 0; n < x.dim(); ++n) x.add(n, n, Complex{1.0, 0.0});
  return x;
}

EigenElement generator(Generator which, LadderTableRef table) {
  EigenElement x(table);
  const int d = x.dim();
  switch (which) {
    case Generator::one:
    case Generator::e:
      return identity_element(std::move(table));
    case Generator::a:
      for (int n = 0; n + 1 < d; ++n)
        x.add(n, n + 1, Complex{std::sqrt(table->F(n + 1)), 0.0});
      return x;
    case Generator::a_plus:
      for (int n = 0; n + 1 < d; ++n)
        x.add(n + 1, n, Complex{std::sqrt(table->F(n + 1)), 0.0});
      return x;
    case Generator::n:
      for (int n = 1; n < d; ++n) x.add(n, n, Complex{static_cast<double>(n), 0.0});
      return x;
    case Generator::h:
      for (int n = 0; n < d; ++n) x.add(n, n, Complex{table->energy(n), 0.0});
      return x;
  }
  throw Error("unreachable generator");
}

EigenElement apply_ladder(Side side, Generator which, const EigenElement& x) {
  const LadderTable& tab = *x.table();
  const int d = x.dim();
  EigenElement out(x.table());
  for (const auto& [nm, v] : x.terms()) {
    const int n = nm.first;
    const int m = nm.second;
    if (side == Side::left) {
      switch (which) {
        case Generator::one:
        case Generator::e: out.add(n, m, v); break;
        case Generator::a:
          if (n >= 1) out.add(n - 1, m, v * std::sqrt(tab.F(n)));
          break;
        case Generator::a_plus:
          if (n + 1 < d) out.add(n + 1, m, v * std::sqrt(tab.F(n + 1)));
          break;
        case Generator::n: out.add(n, m, v * static_cast<double>(n)); break;
        case Generator::h: out.add(n, m, v * tab.energy(n)); break;
      }
    } else {
      switch (which) {
        case Generator::one:
        case Generator::e: out.add(n, m, v); break;
        case Generator::a:
          if (m + 1 < d) out.add(n, m + 1, v * std::sqrt(tab.F(m + 1)));
          break;
        case Generator::a_plus:
          if (m >= 1) out.add(n, m - 1, v * std::sqrt(tab.F(m)));
          break;
        case Generator::n: out.add(n, m, v * static_cast<double>(m)); break;
        case Generator::h: out.add(n, m, v * tab.energy(m)); break;
      }
    }
  }
  return out;
}

Word Word::parse(std::string_view text) {
  Word word;
  Word::Term current;
  bool have_factor = false;
  double pending_sign = 1.0;

  std::size_t i = 0;
  auto flush_term = [&]() {
    if (have_factor) {
      current.coeff *= pending_sign;
      word.terms.push_back(current);
    } else if (pending_sign != 1.0 || !word.terms.empty()) {
      throw InputError("dangling sign or empty term in word");
    }
    current = Word::Term{};
    have_factor = false;
    pending_sign = 1.0;
  };

  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    if (c == '*') { ++i; continue; }
    if ((c == '+' || c == '-') && have_factor) {
      // binary op: close the current term
      flush_term();
      pending_sign = (c == '-') ? -1.0 : 1.0;
      ++i;
      continue;
    }
    if ((c == '+' || c == '-') && !have_factor && current.letters.empty() &&
        current.coeff == Complex{1.0, 0.0}) {
      pending_sign *= (c == '-') ? -1.0 : 1.0;
      ++i;
      continue;
    }
    if (c == 'A') {
      if (i + 1 < text.size() && text[i + 1] == '+') {
        current.letters.push_back(Generator::a_plus);
        i += 2;
      } else {
        current.letters.push_back(Generator::a);
        ++i;
      }
      have_factor = true;
      continue;
    }
    if (c == 'N') { current.letters.push_back(Generator::n); ++i; have_factor = true; continue; }
    if (c == 'E') { current.letters.push_back(Generator::e); ++i; have_factor = true; continue; }
    if (c == 'H') { current.letters.push_back(Generator::h); ++i; have_factor = true; continue; }
    if (c == 'i' ) { current.coeff *= Complex{0.0, 1.0}; ++i; have_factor = true; continue; }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text.data() + i;
      char* end = nullptr;
      const double value = std::strtod(begin, &end);
      if (end == begin) throw InputError("bad numeric literal in word");
      i += static_cast<std::size_t>(end - begin);
      if (i < text.size() && text[i] == 'i') {
        current.coeff *= Complex{0.0, value};
        ++i;
      } else if (value == 1.0) {
        // the unit symbol; keeps "1" a valid word
      } else {
        current.coeff *= value;
      }
      have_factor = true;
      continue;
    }
    throw InputError(std::string("unexpected character '") + c + "' in word");
  }
  flush_term();
  if (word.terms.empty()) throw InputError("empty word");
  return word;
}

int Word::ladder_degree() const {
  int deg = 0;
  for (const auto& t : terms) {
    int d = 0;
    for (Generator g : t.letters)
      if (g == Generator::a || g == Generator::a_plus) ++d;
    deg = std::max(deg, d);
  }
  return deg;
}

EigenElement sigma_hom(const Word& word, LadderTableRef table) {
  EigenElement out(table);
  for (const auto& term : word.terms) {
    EigenElement acc = identity_element(table);
    for (Generator g : term.letters) acc = star(acc, generator(g, table));
    acc *= term.coeff;
    out += acc;
  }
  return out;
}

OperatorMatrix pi_matrix(const EigenElement& x) {
  OperatorMatrix mat = OperatorMatrix::Zero(x.dim(), x.dim());
  for (const auto& [nm, v] : x.terms()) mat(nm.first, nm.second) = v;
  return mat;
}

EigenElement element_from_matrix(const OperatorMatrix& mat, LadderTableRef table) {
  if (mat.rows() != table->dim() || mat.cols() != table->dim()) {
    throw IncompatibleError("matrix dimension does not match the ladder table");
  }
  EigenElement x(std::move(table));
  for (int n = 0; n < mat.rows(); ++n)
    for (int m = 0; m < mat.cols(); ++m)
      if (mat(n, m) != Complex{0.0, 0.0}) x.add(n, m, mat(n, m));
  return x;
}

}  // namespace qboson
