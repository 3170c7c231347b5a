#include "fracdelay/scenarios.h"

namespace fracdelay {
namespace {

// Homogeneous three-state system with two algebraic states.
constexpr std::string_view kEx1 = R"cfg({
  "order": [0.45,0.65,0.2],
  "A": [[-2.2,0.2,0.1],[0.3,-2.4,0.2],[0.5,0.2,-2.3]],
  "B": [[0.2,0.1,0.3],[0.2,0.2,0.1],[0.1,0.3,0.5]],
  "E": [[0.2,0.1],[0.2,0.3],[0.3,0.4]],
  "C": [[0.1,0.2,0.1],[0.1,0.3,0.1]],
  "D": [[0.1,0.2],[0.2,0.1]],
  "f": ["0","0","0"],
  "g": ["0","0"],
  "tau1": "1 + 0.5*t*sin(t)^2",
  "tau2": "1/3 + 0.5*t",
  "tau3": "0.5 + 0.5*t*cos(t)^2",
  "r": 1.0,
  "psi": ["0.3","0.2","0.8"],
  "phi": "derived"
}
)cfg";

// Same matrices and delays as ex1, different orders, vanishing forcing.
constexpr std::string_view kEx2 = R"cfg({
  "order": [0.5,0.7,0.3],
  "A": [[-2.2,0.2,0.1],[0.3,-2.4,0.2],[0.5,0.2,-2.3]],
  "B": [[0.2,0.1,0.3],[0.2,0.2,0.1],[0.1,0.3,0.5]],
  "E": [[0.2,0.1],[0.2,0.3],[0.3,0.4]],
  "C": [[0.1,0.2,0.1],[0.1,0.3,0.1]],
  "D": [[0.1,0.2],[0.2,0.1]],
  "f": ["2/(1+t)","t/exp(t)","sin(t)^2/(1+t)"],
  "g": ["t/(1+t^2)","1/exp(t)"],
  "tau1": "1 + 0.5*t*sin(t)^2",
  "tau2": "1/3 + 0.5*t",
  "tau3": "0.5 + 0.5*t*cos(t)^2",
  "r": 1.0,
  "psi": ["0.5","0.1","1.2"],
  "phi": "derived"
}
)cfg";

// Two-state system with bounded, non-vanishing forcing.
constexpr std::string_view kEx3 = R"cfg({
  "order": [0.55,0.25],
  "A": [[-2.2,0.2],[0.1,-1.4]],
  "B": [[0.2,0.1],[0.2,0.3]],
  "E": [[0.2,0.5],[0.2,0.3]],
  "C": [[0.4,0.2],[0.2,0.3]],
  "D": [[0.2,0.5],[0.3,0.1]],
  "f": ["0.02 + 0.01*sin(t)","0.1*t/(1+t)"],
  "g": ["0.1 + 0.1*cos(t)","0.1 + 0.25*2^(t/(t+1))"],
  "tau1": "1 + 0.5*t*sin(t)^2",
  "tau2": "0.5 + 0.3*cos(t)^2",
  "tau3": "0.5 + 0.5*t*cos(t)^2",
  "r": 1.0,
  "psi": ["1","1"],
  "phi": "derived"
}
)cfg";

RealVector Vec2(double a, double b) {
  RealVector v(2);
  v << a, b;
  return v;
}

}  // namespace

const std::vector<Scenario>& BuiltinScenarios() {
  static const std::vector<Scenario> kScenarios = {
      {"ex1", kEx1, 0.01, 50.0, std::nullopt, std::nullopt},
      {"ex2", kEx2, 0.01, 50.0, std::nullopt, std::nullopt},
      {"ex3", kEx3, 0.02, 150.0, Vec2(0.03, 0.1), Vec2(0.2, 0.6)},
  };
  return kScenarios;
}

const Scenario* FindScenario(std::string_view name) {
  for (const auto& s : BuiltinScenarios()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace fracdelay
