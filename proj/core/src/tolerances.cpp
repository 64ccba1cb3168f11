#include "sympidx/tolerances.hpp"

#include <stdexcept>

namespace sympidx {

void Tolerances::set(const std::string& name, double value) {
  if (!(value > 0)) throw std::invalid_argument("tolerance '" + name + "' must be positive");
  static const std::map<std::string, double Tolerances::*> fields = {
      {"eps_sym_blocks", &Tolerances::eps_sym_blocks}, {"eps_sym_user", &Tolerances::eps_sym_user},
      {"rank", &Tolerances::rank},                     {"cluster", &Tolerances::cluster},
      {"floor_guard", &Tolerances::floor_guard},       {"angle_match", &Tolerances::angle_match},
      {"zero_phase", &Tolerances::zero_phase},
  };
  if (name == "angle_bits") {
    angle_bits = static_cast<int>(value);
    return;
  }
  auto it = fields.find(name);
  if (it == fields.end()) throw std::invalid_argument("unknown tolerance '" + name + "'");
  this->*(it->second) = value;
}

nlohmann::json Tolerances::to_json() const {
  return {{"eps_sym_blocks", eps_sym_blocks}, {"eps_sym_user", eps_sym_user},
          {"rank", rank},                     {"cluster", cluster},
          {"floor_guard", floor_guard},       {"angle_match", angle_match},
          {"zero_phase", zero_phase},         {"angle_bits", angle_bits}};
}

namespace {
Tolerances& current() {
  static Tolerances t;
  return t;
}
}  // namespace

const Tolerances& default_tolerances() {
  return current();
}

void set_default_tolerances(const Tolerances& t) {
  current() = t;
}

}  // namespace sympidx
