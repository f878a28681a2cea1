#include "octoverify/tolerances.hpp"

#include <utility>

namespace octoverify {

namespace {

using Field = double Tolerances::*;

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"algebra", &Tolerances::algebra},       {"division", &Tolerances::division},
      {"unit", &Tolerances::unit},             {"frame", &Tolerances::frame},
      {"geometry", &Tolerances::geometry},     {"eigencheck", &Tolerances::eigencheck},
      {"constancy", &Tolerances::constancy},   {"psd", &Tolerances::psd},
      {"jacobi", &Tolerances::jacobi},         {"eigenmap", &Tolerances::eigenmap},
      {"harmonic", &Tolerances::harmonic},     {"lemma", &Tolerances::lemma},
      {"hemisphere", &Tolerances::hemisphere}, {"mean_zero", &Tolerances::mean_zero},
  };
  return table;
}

}  // namespace

bool Tolerances::set(std::string_view name, double value) {
  for (const auto& [key, field] : fields()) {
    if (key == name) {
      this->*field = value;
      return true;
    }
  }
  return false;
}

std::optional<double> Tolerances::get(std::string_view name) const {
  for (const auto& [key, field] : fields()) {
    if (key == name) return this->*field;
  }
  return std::nullopt;
}

const std::vector<std::string>& Tolerances::names() {
  static const std::vector<std::string> out = [] {
    std::vector<std::string> v;
    for (const auto& f : fields()) v.push_back(f.first);
    return v;
  }();
  return out;
}

std::map<std::string, double> Tolerances::as_map() const {
  std::map<std::string, double> m;
  for (const auto& [key, field] : fields()) m[key] = this->*field;
  return m;
}

}  // namespace octoverify
