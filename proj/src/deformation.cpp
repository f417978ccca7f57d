#include "qboson/deformation.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qboson {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

void check_finite_f(const DeformationSpec& spec) {
  for (int n = 0; n < spec.level_cap(); ++n) {
    if (!std::isfinite(spec.eval_f(n))) {
      throw InputError("f(" + std::to_string(n) + ") is not finite for this spec");
    }
  }
}

}  // namespace

std::string to_string(DeformationKind kind) {
  switch (kind) {
    case DeformationKind::standard: return "standard";
    case DeformationKind::q_symmetric: return "q";
    case DeformationKind::qp: return "qp";
    case DeformationKind::series: return "series";
    case DeformationKind::table: return "table";
  }
  return "?";
}

DeformationSpec DeformationSpec::standard(double hbar, int level_cap) {
  require(hbar > 0, "hbar must be positive");
  require(level_cap >= 1, "level_cap must be positive");
  DeformationSpec s;
  s.kind_ = DeformationKind::standard;
  s.hbar_ = hbar;
  s.level_cap_ = level_cap;
  return s;
}

DeformationSpec DeformationSpec::q_symmetric(double q, double hbar, int level_cap) {
  require(hbar > 0, "hbar must be positive");
  require(level_cap >= 1, "level_cap must be positive");
  require(q > 0, "q must be positive");
  require(q != 1.0, "q = 1 is excluded; use the standard kind for the limit");
  DeformationSpec s;
  s.kind_ = DeformationKind::q_symmetric;
  s.hbar_ = hbar;
  s.level_cap_ = level_cap;
  s.q_ = q;
  check_finite_f(s);
  return s;
}

DeformationSpec DeformationSpec::qp(double q, double p, double hbar, int level_cap) {
  require(hbar > 0, "hbar must be positive");
  require(level_cap >= 1, "level_cap must be positive");
  require(q > 0 && p > 0, "q and p must be positive");
  require(q != p, "q = p is excluded; use the standard kind for the limit");
  DeformationSpec s;
  s.kind_ = DeformationKind::qp;
  s.hbar_ = hbar;
  s.level_cap_ = level_cap;
  s.q_ = q;
  s.p_ = p;
  check_finite_f(s);
  return s;
}

DeformationSpec DeformationSpec::series(std::vector<double> coeffs, double hbar,
                                        int level_cap) {
  require(hbar > 0, "hbar must be positive");
  require(level_cap >= 1, "level_cap must be positive");
  require(!coeffs.empty(), "series needs at least one coefficient");
  for (double c : coeffs) require(std::isfinite(c), "series coefficients must be finite");
  DeformationSpec s;
  s.kind_ = DeformationKind::series;
  s.hbar_ = hbar;
  s.level_cap_ = level_cap;
  s.coeffs_ = std::move(coeffs);
  check_finite_f(s);
  return s;
}

DeformationSpec DeformationSpec::table(std::vector<double> values, double hbar) {
  require(hbar > 0, "hbar must be positive");
  require(!values.empty(), "table needs at least one value");
  for (double v : values) require(std::isfinite(v), "table values must be finite");
  DeformationSpec s;
  s.kind_ = DeformationKind::table;
  s.hbar_ = hbar;
  s.level_cap_ = static_cast<int>(values.size());
  s.coeffs_ = std::move(values);
  return s;
}

double DeformationSpec::eval_f(int n) const {
  if (n < 0 || n >= level_cap_) {
    throw LevelCapError("f(" + std::to_string(n) + ") is beyond the level cap " +
                        std::to_string(level_cap_));
  }
  switch (kind_) {
    case DeformationKind::standard:
      return hbar_;
    case DeformationKind::q_symmetric:
    case DeformationKind::qp:
      return closed_F(n + 1) - closed_F(n);
    case DeformationKind::series: {
      // q0 + q1 n + ... + qK n^K by Horner
      double x = static_cast<double>(n);
      double acc = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
      return acc;
    }
    case DeformationKind::table:
      return coeffs_[static_cast<std::size_t>(n)];
  }
  throw Error("unreachable deformation kind");
}

double DeformationSpec::closed_F(int n) const {
  if (n < 0 || n > level_cap_) {
    throw LevelCapError("F(" + std::to_string(n) + ") is beyond the level cap " +
                        std::to_string(level_cap_));
  }
  switch (kind_) {
    case DeformationKind::standard:
      return hbar_ * n;
    case DeformationKind::q_symmetric:
      return hbar_ * (std::pow(q_, n) - std::pow(q_, -n)) / (q_ - 1.0 / q_);
    case DeformationKind::qp:
      return hbar_ * (std::pow(q_, n) - std::pow(p_, n)) / (q_ - p_);
    case DeformationKind::series:
    case DeformationKind::table: {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += eval_f(i);
      return acc;
    }
  }
  throw Error("unreachable deformation kind");
}

DeformationSpec DeformationSpec::scale_coefficients() const {
  if (kind_ != DeformationKind::series) {
    throw UnsupportedKindError("scale_coefficients applies to series specs only, got " +
                               to_string(kind_));
  }
  std::vector<double> scaled(coeffs_.size());
  double hpow = 1.0;
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    scaled[n] = coeffs_[n] * hpow;
    hpow *= hbar_;
  }
  return series(std::move(scaled), hbar_, level_cap_);
}

DeformationSpec DeformationSpec::with_level_cap(int level_cap) const {
  switch (kind_) {
    case DeformationKind::standard: return standard(hbar_, level_cap);
    case DeformationKind::q_symmetric: return q_symmetric(q_, hbar_, level_cap);
    case DeformationKind::qp: return qp(q_, p_, hbar_, level_cap);
    case DeformationKind::series: return series(coeffs_, hbar_, level_cap);
    case DeformationKind::table: {
      require(level_cap <= static_cast<int>(coeffs_.size()),
              "cannot grow a table spec beyond its values");
      std::vector<double> v(coeffs_.begin(), coeffs_.begin() + level_cap);
      return table(std::move(v), hbar_);
    }
  }
  throw Error("unreachable deformation kind");
}

std::string DeformationSpec::to_json() const {
  nlohmann::ordered_json j;
  j["hbar"] = hbar_;
  j["kind"] = to_string(kind_);
  switch (kind_) {
    case DeformationKind::standard:
      break;
    case DeformationKind::q_symmetric:
      j["q"] = q_;
      break;
    case DeformationKind::qp:
      j["q"] = q_;
      j["p"] = p_;
      break;
    case DeformationKind::series:
      j["coeffs"] = coeffs_;
      break;
    case DeformationKind::table:
      j["values"] = coeffs_;
      break;
  }
  j["level_cap"] = level_cap_;
  return j.dump();
}

DeformationSpec DeformationSpec::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad deformation spec JSON: ") + e.what());
  }
  require(j.is_object(), "deformation spec must be a JSON object");
  require(j.contains("kind") && j["kind"].is_string(), "spec needs a string \"kind\"");
  const std::string kind = j["kind"].get<std::string>();

  std::vector<std::string> allowed = {"kind", "hbar", "level_cap"};
  if (kind == "q") allowed.push_back("q");
  else if (kind == "qp") { allowed.push_back("q"); allowed.push_back("p"); }
  else if (kind == "series") allowed.push_back("coeffs");
  else if (kind == "table") allowed.push_back("values");
  else if (kind != "standard") throw InputError("unknown deformation kind \"" + kind + "\"");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const auto& k : allowed) known = known || (item.key() == k);
    require(known, "unknown field \"" + item.key() + "\" in deformation spec");
  }

  const double hbar = j.value("hbar", 1.0);
  const int cap = j.value("level_cap", static_cast<int>(kDefaultLevelCap));
  auto get_num = [&](const char* key) {
    require(j.contains(key) && j[key].is_number(),
            std::string("kind \"") + kind + "\" needs numeric \"" + key + "\"");
    return j[key].get<double>();
  };
  auto get_vec = [&](const char* key) {
    require(j.contains(key) && j[key].is_array(),
            std::string("kind \"") + kind + "\" needs array \"" + key + "\"");
    std::vector<double> v;
    for (const auto& e : j[key]) {
      require(e.is_number(), std::string("\"") + key + "\" entries must be numbers");
      v.push_back(e.get<double>());
    }
    return v;
  };

  if (kind == "standard") return standard(hbar, cap);
  if (kind == "q") return q_symmetric(get_num("q"), hbar, cap);
  if (kind == "qp") return qp(get_num("q"), get_num("p"), hbar, cap);
  if (kind == "series") return series(get_vec("coeffs"), hbar, cap);
  // table: level_cap, when given, must not exceed the value count
  auto values = get_vec("values");
  if (j.contains("level_cap")) {
    require(cap <= static_cast<int>(values.size()),
            "table level_cap exceeds the number of values");
    values.resize(static_cast<std::size_t>(cap));
  }
  return table(std::move(values), hbar);
}

LadderTable::LadderTable(const DeformationSpec& spec)
    : spec_(spec), dim_(spec.level_cap()) {
  F_.resize(static_cast<std::size_t>(dim_) + 1);
  F_fact_.resize(static_cast<std::size_t>(dim_) + 1);
  E_.resize(static_cast<std::size_t>(dim_));
  F_[0] = 0.0;
  F_fact_[0] = 1.0;
  for (int n = 1; n <= dim_; ++n) {
    F_[n] = F_[n - 1] + spec_.eval_f(n - 1);
    F_fact_[n] = F_fact_[n - 1] * F_[n];
  }
  for (int n = 0; n < dim_; ++n) E_[n] = 0.5 * (F_[n + 1] + F_[n]);
}

double LadderTable::F(int n) const {
  if (n < 0 || n > dim_) throw LevelCapError("F index " + std::to_string(n) + " out of range");
  return F_[static_cast<std::size_t>(n)];
}

double LadderTable::F_factorial(int n) const {
  if (n < 0 || n > dim_) throw LevelCapError("F! index " + std::to_string(n) + " out of range");
  return F_fact_[static_cast<std::size_t>(n)];
}

double LadderTable::energy(int n) const {
  if (n < 0 || n >= dim_) throw LevelCapError("E index " + std::to_string(n) + " out of range");
  return E_[static_cast<std::size_t>(n)];
}

double LadderTable::f(int n) const { return spec_.eval_f(n); }

int LadderTable::first_degenerate_level() const {
  for (int j = 1; j <= dim_; ++j) {
    if (!(F_[j] > 0.0) || !std::isfinite(F_[j])) return j;
  }
  return 0;
}

bool LadderTable::compatible_with(const LadderTable& other) const {
  return dim_ == other.dim_ && spec_.hbar() == other.spec_.hbar() && F_ == other.F_;
}

LadderTableRef build_ladder_table(const DeformationSpec& spec) {
  return std::make_shared<const LadderTable>(spec);
}

}  // namespace qboson
