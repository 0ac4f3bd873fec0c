#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "expgame/cli.hpp"
#include "expgame/game_file.hpp"
#include "expgame/rcf.hpp"
#include "expgame/report.hpp"
#include "expgame/tautology.hpp"

namespace py = pybind11;
using namespace expgame;

// Rational <-> fractions.Fraction (ints are accepted on input).
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!py::hasattr(src, "numerator") || !py::hasattr(src, "denominator")) return false;
    const auto num = py::str(src.attr("numerator")).cast<std::string>();
    const auto den = py::str(src.attr("denominator")).cast<std::string>();
    const auto r = Rational::parse(num + "/" + den);
    if (!r) return false;
    value = *r;
    return true;
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    const auto builtins_int = py::module_::import("builtins").attr("int");
    return py::module_::import("fractions")
        .attr("Fraction")(builtins_int(r.numerator()), builtins_int(r.denominator()))
        .release();
  }
};
}  // namespace pybind11::detail

namespace {

std::string rendered(const std::string& name, const std::string& text, const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) out += render_diagnostic(name, text, d);
  return out;
}

Game parse_game(const std::string& text) {
  auto r = parse_game_file(text);
  if (!r.ok()) throw py::value_error(rendered("<game>", text, r.diagnostics));
  return std::move(*r.value);
}

Profile parse_profile(const Game& g, const std::string& text) {
  auto r = parse_profile_file(text, g);
  if (!r.ok()) throw py::value_error(rendered("<profile>", text, r.diagnostics));
  return std::move(*r.value);
}

// One dict per player mapping strategy index to probability.
Profile profile_from(const Game& g, const std::vector<std::map<std::uint64_t, Rational>>& dists) {
  Profile p;
  for (std::size_t i = 0; i < dists.size(); ++i) p.strategies.push_back(MixedStrategy{i, dists[i]});
  if (const auto errors = validate_profile(g, p); !errors.empty()) throw py::value_error(errors.front());
  for (auto& m : p.strategies) m = m.normalized();
  return p;
}

py::dict verdict_dict(const Game& g, const Verdict& v) {
  py::dict d;
  d["verdict"] = verdict_name(v);
  if (const auto* n = std::get_if<NotEquilibrium>(&v)) {
    d["player"] = g.players[n->witness.player];
    d["witness"] = n->witness.new_strategy.probs;
    d["old_value"] = n->witness.old_value;
    d["new_value"] = n->witness.new_value;
  } else if (const auto* u = std::get_if<Unknown>(&v)) {
    d["grid_denominator"] = u->grid_denominator;
    d["max_observed_improvement"] = u->max_observed_improvement;
  }
  return d;
}

std::vector<std::map<std::uint64_t, Rational>> dists_of(const Profile& p) {
  std::vector<std::map<std::uint64_t, Rational>> out;
  for (const auto& m : p.strategies) out.push_back(m.probs);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Expectation games over finite-valued Lukasiewicz logic";

  py::class_<Game>(m, "Game")
      .def_property_readonly("k", [](const Game& g) { return g.scale.k(); })
      .def_readonly("players", &Game::players)
      .def_readonly("variables", &Game::variables)
      .def_readonly("controls", &Game::controls)
      .def("strategy_count", [](const Game& g, std::size_t i) { return strategy_count(g, i); })
      .def("strategy", [](const Game& g, std::size_t i, std::uint64_t s) { return strategy_at(g, i, s).values; })
      .def("__str__", &format_game);

  py::class_<Profile>(m, "Profile")
      .def_property_readonly("strategies", &dists_of)
      .def("__eq__", [](const Profile& a, const Profile& b) { return a == b; });

  m.def("parse_game", &parse_game, py::arg("text"));
  m.def("parse_profile", &parse_profile, py::arg("game"), py::arg("text"));
  m.def("profile", &profile_from, py::arg("game"), py::arg("distributions"));
  m.def("format_profile", &format_profile, py::arg("game"), py::arg("profile"));

  m.def("payoffs", [](const Game& g, const std::string& combination) {
    auto r = parse_combination(combination, g);
    if (!r.ok()) throw py::value_error(rendered("<combination>", combination, r.diagnostics));
    std::vector<Rational> out;
    for (std::size_t i = 0; i < g.player_count(); ++i) out.push_back(payoff(g, i, *r.value));
    return out;
  }, py::arg("game"), py::arg("combination"));
  m.def("expected_payoffs", [](const Game& g, const Profile& p) { return expected_payoffs(g, p); });
  m.def("goal_values", [](const Game& g, const Profile& p) { return eval_goals(g, p); });

  m.def("verify", [](const Game& g, const Profile& p, std::uint32_t grid) {
    const auto r = verify_equilibrium(g, p, grid);
    py::dict d = verdict_dict(g, r.overall);
    py::list players;
    for (const auto& v : r.players) players.append(verdict_dict(g, v));
    d["players"] = players;
    return d;
  }, py::arg("game"), py::arg("profile"), py::arg("grid") = 1);

  m.def("search", [](const Game& g, std::uint32_t grid) {
    const auto r = search_equilibrium(g, grid);
    py::dict d;
    d["certified"] = r.certified ? py::cast(*r.certified) : py::none();
    d["best_candidate"] = r.best_candidate;
    d["epsilon"] = r.epsilon;
    d["profiles_examined"] = r.profiles_examined;
    return d;
  }, py::arg("game"), py::arg("grid"));

  m.def("dynamics", [](const Game& g, std::optional<Profile> start, std::uint64_t max_iters, std::uint32_t grid) {
    const auto t = best_response_dynamics(g, start ? *start : all_zero_profile(g), max_iters, grid);
    py::dict d;
    if (std::holds_alternative<FixedPoint>(t.status)) {
      d["status"] = "fixed-point";
    } else if (const auto* c = std::get_if<Cycle>(&t.status)) {
      d["status"] = "cycle";
      d["period"] = c->period;
    } else {
      d["status"] = "max-iters";
    }
    d["iterations"] = t.iterations;
    py::list steps;
    for (const auto& s : t.steps) steps.append(s.profile);
    d["profiles"] = steps;
    return d;
  }, py::arg("game"), py::arg("start") = py::none(), py::arg("max_iters") = 100, py::arg("grid") = 1);

  m.def("compile_existence", [](const Game& g) { return rcf::compile_existence_sentence(g).str(); });
  m.def("compile_verification", [](const Game& g, const Profile& p, const std::string& player) {
    const auto i = g.player_index(player);
    if (!i) throw py::value_error("unknown player " + player);
    return rcf::compile_verification_query(g, p, *i).str();
  }, py::arg("game"), py::arg("profile"), py::arg("player"));

  m.def("is_tautology", [](const std::string& formula, std::uint32_t k) {
    auto f = parse_formula(formula);
    if (!f.ok()) throw py::value_error(rendered("<formula>", formula, f.diagnostics));
    return is_tautology(*f.value, LkScale(k));
  }, py::arg("formula"), py::arg("k"));

  m.def("evaluate", [](const std::string& formula, const Valuation& v, std::uint32_t k) {
    auto f = parse_formula(formula);
    if (!f.ok()) throw py::value_error(rendered("<formula>", formula, f.diagnostics));
    return eval_formula(*f.value, v, LkScale(k));
  }, py::arg("formula"), py::arg("valuation"), py::arg("k"));

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "expgame");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
