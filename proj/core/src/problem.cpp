#include "corona/problem.hpp"

#include <json.hpp>

#include <cmath>
#include <random>

#include "corona/errors.hpp"
#include "corona/slice_regular.hpp"

namespace corona {

using Json = nlohmann::ordered_json;

namespace {

void check_series_count(int n, std::size_t have, const char* what) {
  if (n < 1 || n > 8) throw InvalidInput("problem size n must be 1..8");
  if (have != static_cast<std::size_t>(n)) {
    throw InvalidInput(std::string(what) + ": expected n series, got " +
                       std::to_string(have));
  }
}

void check_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw InvalidInput(std::string(what) + ": non-finite value");
}

}  // namespace

void DiskCoronaProblem::validate() const {
  check_series_count(n, F.size(), "F");
  check_series_count(n, G.size(), "G");
  for (const auto& s : F)
    for (Complex c : s.coefficients()) {
      check_finite(c.real(), "F coefficient");
      check_finite(c.imag(), "F coefficient");
    }
  for (const auto& s : G)
    for (Complex c : s.coefficients()) {
      check_finite(c.real(), "G coefficient");
      check_finite(c.imag(), "G coefficient");
    }
  if (delta != 0.0 && !(delta > 0.0 && delta < 1.0)) {
    throw InvalidInput("delta must lie in (0,1) when supplied");
  }
}

void BallCoronaProblem::validate() const {
  check_series_count(n, f.size(), "f");
  for (const auto& s : f)
    for (const Quaternion& c : s.coefficients()) {
      check_finite(c.x0, "f coefficient");
      check_finite(c.x1, "f coefficient");
      check_finite(c.x2, "f coefficient");
      check_finite(c.x3, "f coefficient");
    }
  if (delta != 0.0 && !(delta > 0.0 && delta < 1.0)) {
    throw InvalidInput("delta must lie in (0,1) when supplied");
  }
}

namespace {

Json parse_or_throw(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InvalidInput("problem file is not valid JSON");
  if (!j.is_object()) throw InvalidInput("problem JSON must be an object");
  return j;
}

std::string kind_of(const Json& j) {
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw InvalidInput("problem JSON missing string field \"kind\"");
  }
  return j["kind"].get<std::string>();
}

double delta_of(const Json& j) {
  if (!j.contains("delta")) return 0.0;
  if (!j["delta"].is_number()) throw InvalidInput("\"delta\" must be a number");
  return j["delta"].get<double>();
}

int n_of(const Json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw InvalidInput("problem JSON missing integer field \"n\"");
  }
  return j["n"].get<int>();
}

CSeries parse_cseries(const Json& arr, const char* what) {
  if (!arr.is_array() || arr.empty()) {
    throw InvalidInput(std::string(what) + ": each series is a nonempty array");
  }
  if (arr.size() > static_cast<std::size_t>(kSeriesDegreeCap) + 1) {
    throw InvalidInput(std::string(what) + ": series exceeds degree cap");
  }
  std::vector<Complex> coef;
  coef.reserve(arr.size());
  for (const auto& c : arr) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      throw InvalidInput(std::string(what) + ": coefficients are [re,im] pairs");
    }
    coef.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  return CSeries(std::move(coef));
}

QSeries parse_qseries(const Json& arr, const char* what) {
  if (!arr.is_array() || arr.empty()) {
    throw InvalidInput(std::string(what) + ": each series is a nonempty array");
  }
  if (arr.size() > static_cast<std::size_t>(kSeriesDegreeCap) + 1) {
    throw InvalidInput(std::string(what) + ": series exceeds degree cap");
  }
  std::vector<Quaternion> coef;
  coef.reserve(arr.size());
  for (const auto& c : arr) {
    if (!c.is_array() || c.size() != 4) {
      throw InvalidInput(std::string(what) + ": coefficients are [x0,x1,x2,x3]");
    }
    for (const auto& x : c) {
      if (!x.is_number()) throw InvalidInput(std::string(what) + ": non-numeric component");
    }
    coef.push_back(Quaternion{c[0].get<double>(), c[1].get<double>(), c[2].get<double>(),
                              c[3].get<double>()});
  }
  return QSeries(std::move(coef));
}

Json dump_cseries(const CSeries& s) {
  Json arr = Json::array();
  for (Complex c : s.coefficients()) arr.push_back(Json::array({c.real(), c.imag()}));
  return arr;
}

Json dump_qseries(const QSeries& s) {
  Json arr = Json::array();
  for (const Quaternion& c : s.coefficients())
    arr.push_back(Json::array({c.x0, c.x1, c.x2, c.x3}));
  return arr;
}

}  // namespace

ProblemKind peek_problem_kind(const std::string& json_text) {
  const std::string kind = kind_of(parse_or_throw(json_text));
  if (kind == "disk") return ProblemKind::Disk;
  if (kind == "ball") return ProblemKind::Ball;
  throw InvalidInput("unknown problem kind \"" + kind + "\"");
}

DiskCoronaProblem parse_disk_problem(const std::string& json_text) {
  Json j = parse_or_throw(json_text);
  if (kind_of(j) != "disk") throw InvalidInput("expected a problem of kind \"disk\"");
  DiskCoronaProblem p;
  p.n = n_of(j);
  p.delta = delta_of(j);
  if (!j.contains("F") || !j["F"].is_array() || !j.contains("G") || !j["G"].is_array()) {
    throw InvalidInput("disk problem needs array fields \"F\" and \"G\"");
  }
  for (const auto& s : j["F"]) p.F.push_back(parse_cseries(s, "F"));
  for (const auto& s : j["G"]) p.G.push_back(parse_cseries(s, "G"));
  p.validate();
  return p;
}

BallCoronaProblem parse_ball_problem(const std::string& json_text) {
  Json j = parse_or_throw(json_text);
  if (kind_of(j) != "ball") throw InvalidInput("expected a problem of kind \"ball\"");
  BallCoronaProblem p;
  p.n = n_of(j);
  p.delta = delta_of(j);
  if (!j.contains("f") || !j["f"].is_array()) {
    throw InvalidInput("ball problem needs array field \"f\"");
  }
  for (const auto& s : j["f"]) p.f.push_back(parse_qseries(s, "f"));
  p.validate();
  return p;
}

std::string to_json_text(const DiskCoronaProblem& p) {
  Json j;
  j["kind"] = "disk";
  j["n"] = p.n;
  if (p.delta != 0.0) j["delta"] = p.delta;
  j["F"] = Json::array();
  for (const auto& s : p.F) j["F"].push_back(dump_cseries(s));
  j["G"] = Json::array();
  for (const auto& s : p.G) j["G"].push_back(dump_cseries(s));
  return j.dump(2) + "\n";
}

std::string to_json_text(const BallCoronaProblem& p) {
  Json j;
  j["kind"] = "ball";
  j["n"] = p.n;
  if (p.delta != 0.0) j["delta"] = p.delta;
  j["f"] = Json::array();
  for (const auto& s : p.f) j["f"].push_back(dump_qseries(s));
  return j.dump(2) + "\n";
}

namespace {

// Spreads `budget` over `count` magnitudes with random proportions and
// random phases. Uses a fixed 80% fill so the guaranteed caps hold with
// margin rather than being attained exactly.
std::vector<Complex> random_budgeted_coefficients(std::mt19937_64& rng, int count,
                                                  double budget) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
  std::vector<double> w(static_cast<std::size_t>(count));
  double total = 0.0;
  for (auto& x : w) {
    x = 0.05 + unit(rng);
    total += x;
  }
  std::vector<Complex> out(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    double mag = 0.8 * budget * w[static_cast<std::size_t>(m)] / total;
    double ph = angle(rng);
    out[static_cast<std::size_t>(m)] = Complex(mag * std::cos(ph), mag * std::sin(ph));
  }
  return out;
}

}  // namespace

DiskCoronaProblem generate_disk_problem(int n, double delta_target, int degree,
                                        std::uint64_t seed) {
  if (n < 1 || n > 8) throw InvalidInput("generator: n must be 1..8");
  if (degree < 0 || degree > 64) throw InvalidInput("generator: degree must be 0..64");
  if (!(delta_target > 0.0) || delta_target >= 0.999) {
    throw InvalidInput("generator: delta target infeasible (need 0 < delta < 0.999)");
  }

  // F_1 = c0 + tail with l1(tail) <= c0 - delta_target, so |F_1| >= delta_target
  // everywhere. The remaining series share an l1 budget sized so that
  //   sup D <= (2 c0 - delta_target)^2 + (2n-1) b^2 <= 1,
  // and b is additionally capped to keep the pairing certificate Delta
  // bounded below (|F_1 Fhat_1| >= delta^2 dominates |G_1 Ghat_1| <= b^2).
  const double c0 = delta_target + 0.15 * (1.0 - delta_target);
  const double tail_budget = c0 - delta_target;
  const double sup_f1 = 2.0 * c0 - delta_target;
  const int others = 2 * n - 1;
  const double b_cap = std::sqrt((1.0 - sup_f1 * sup_f1) / others);
  const double b = std::min(b_cap, 0.9 * delta_target / std::sqrt(2.0));
  if (!(b > 0.0)) throw InvalidInput("generator: delta target infeasible (no budget left)");

  std::mt19937_64 rng(seed);
  DiskCoronaProblem p;
  p.n = n;
  p.delta = delta_target;

  {
    std::vector<Complex> coef(static_cast<std::size_t>(degree) + 1);
    coef[0] = Complex(c0, 0.0);
    if (degree > 0) {
      auto tail = random_budgeted_coefficients(rng, degree, tail_budget);
      for (int m = 1; m <= degree; ++m) coef[static_cast<std::size_t>(m)] = tail[static_cast<std::size_t>(m - 1)];
    }
    p.F.emplace_back(std::move(coef));
  }
  for (int j = 1; j < n; ++j) p.F.emplace_back(random_budgeted_coefficients(rng, degree + 1, b));
  for (int j = 0; j < n; ++j) p.G.emplace_back(random_budgeted_coefficients(rng, degree + 1, b));

  p.validate();
  return p;
}

BallCoronaProblem generate_ball_problem(int n, double delta_target, int degree,
                                        std::uint64_t seed) {
  DiskCoronaProblem d = generate_disk_problem(n, delta_target, degree, seed);
  const Frame fr = frame_for(Quaternion::e1());
  BallCoronaProblem p;
  p.n = n;
  p.delta = delta_target;
  for (int j = 0; j < n; ++j) {
    p.f.push_back(reassemble(d.F[static_cast<std::size_t>(j)], d.G[static_cast<std::size_t>(j)], fr));
  }
  p.validate();
  return p;
}

}  // namespace corona
