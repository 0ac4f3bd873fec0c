#include "expgame/game_file.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace expgame {

namespace {

struct Line {
  std::string_view text;  // comment stripped, trimmed
  std::size_t offset;     // of text within the file
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

Line trim(std::string_view s, std::size_t offset) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return {s.substr(b, e - b), offset + b};
}

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line l = trim(raw, start);
    if (!l.text.empty()) out.push_back(l);
    start = end + 1;
  }
  return out;
}

// Splits on whitespace and commas, keeping offsets.
std::vector<Line> words_of(const Line& l) {
  std::vector<Line> out;
  std::size_t i = 0;
  const auto sep = [](char c) { return is_space(c) || c == ','; };
  while (i < l.text.size()) {
    while (i < l.text.size() && sep(l.text[i])) ++i;
    std::size_t j = i;
    while (j < l.text.size() && !sep(l.text[j])) ++j;
    if (j > i) out.push_back({l.text.substr(i, j - i), l.offset + i});
    i = j;
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

Diagnostic error_at(std::size_t begin, std::size_t end, std::string msg) {
  return {Diagnostic::Severity::Error, begin, std::max(end, begin), std::move(msg)};
}

Diagnostic error_at(const Line& l, std::string msg) {
  return error_at(l.offset, l.offset + l.text.size(), std::move(msg));
}

std::vector<Diagnostic> shifted(std::vector<Diagnostic> ds, std::size_t by) {
  for (auto& d : ds) {
    d.begin += by;
    d.end += by;
  }
  return ds;
}

// "keyword NAME: body" -> (NAME, body)
std::optional<std::pair<Line, Line>> named_section(const Line& l, std::string_view keyword) {
  std::string_view rest = l.text.substr(keyword.size());
  const auto colon = rest.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const Line name = trim(rest.substr(0, colon), l.offset + keyword.size());
  const Line body = trim(rest.substr(colon + 1), l.offset + keyword.size() + colon + 1);
  return std::make_pair(name, body);
}

bool starts_with_word(std::string_view text, std::string_view word) {
  return text.substr(0, word.size()) == word && (text.size() == word.size() || is_space(text[word.size()]));
}

}  // namespace

ParseResult<Game> parse_game_file(std::string_view text) {
  ParseResult<Game> result;
  auto& diags = result.diagnostics;

  std::optional<std::uint32_t> k;
  std::optional<Line> k_line;
  struct PlayerDecl {
    Line line;
    std::vector<std::string> vars;
  };
  std::vector<std::pair<std::string, PlayerDecl>> players;
  std::map<std::string, std::pair<Line, Line>> payoff_lines;  // player -> (line, formula text)
  std::map<std::string, std::pair<Line, Line>> goal_lines;

  for (const Line& l : lines_of(text)) {
    const auto words = words_of(l);
    if (l.text.front() == 'k' && trim(l.text.substr(1), 0).text.starts_with(":")) {
      if (k) {
        diags.push_back(error_at(l, "duplicate k declaration"));
        continue;
      }
      const std::string_view value = trim(l.text.substr(l.text.find(':') + 1), 0).text;
      const auto r = Rational::parse(value);
      if (!r || !r->is_integer() || r->sign() <= 0 || r->raw().get_num() > 1'000'000) {
        diags.push_back(error_at(l, "k must be a positive integer"));
        continue;
      }
      k = static_cast<std::uint32_t>(r->raw().get_num().get_ui());
      k_line = l;
    } else if (starts_with_word(l.text, "player")) {
      if (words.size() < 3 || words[2].text != "controls") {
        diags.push_back(error_at(l, "expected 'player <name> controls <variables>'"));
        continue;
      }
      const Line& name = words[1];
      if (!is_identifier(name.text)) {
        diags.push_back(error_at(name, "invalid player name"));
        continue;
      }
      const bool dup = std::any_of(players.begin(), players.end(), [&](const auto& p) { return p.first == name.text; });
      if (dup) {
        diags.push_back(error_at(name, "duplicate player " + std::string(name.text)));
        continue;
      }
      PlayerDecl decl{l, {}};
      for (std::size_t w = 3; w < words.size(); ++w) {
        if (!is_identifier(words[w].text)) {
          diags.push_back(error_at(words[w], "invalid variable name"));
          continue;
        }
        decl.vars.emplace_back(words[w].text);
      }
      players.emplace_back(std::string(name.text), std::move(decl));
    } else if (starts_with_word(l.text, "payoff") || starts_with_word(l.text, "goal")) {
      const bool is_payoff = starts_with_word(l.text, "payoff");
      const auto section = named_section(l, is_payoff ? "payoff" : "goal");
      if (!section) {
        diags.push_back(error_at(l, is_payoff ? "expected 'payoff <player>: <formula>'"
                                              : "expected 'goal <player>: <formula>'"));
        continue;
      }
      auto& table = is_payoff ? payoff_lines : goal_lines;
      const std::string name(section->first.text);
      if (!table.emplace(name, std::make_pair(l, section->second)).second) {
        diags.push_back(error_at(section->first, std::string("duplicate ") + (is_payoff ? "payoff" : "goal") +
                                                     " for " + name));
      }
    } else {
      diags.push_back(error_at(l, "unrecognised line; expected k:, player, payoff or goal"));
    }
  }

  if (!k) diags.push_back(error_at(0, 0, "missing 'k:' declaration"));

  Game g;
  if (k) g.scale = LkScale(*k);
  for (const auto& [name, decl] : players) {
    g.players.push_back(name);
    g.controls.push_back(decl.vars);
    for (const auto& v : decl.vars) {
      if (std::find(g.variables.begin(), g.variables.end(), v) == g.variables.end()) g.variables.push_back(v);
    }
  }
  g.payoffs.resize(g.players.size());
  g.goals.resize(g.players.size());

  for (const auto* table : {&payoff_lines, &goal_lines}) {
    const bool is_payoff = table == &payoff_lines;
    for (const auto& [name, lines] : *table) {
      const auto idx = g.player_index(name);
      if (!idx) {
        const Line& l = lines.first;
        diags.push_back(error_at(l, std::string(is_payoff ? "payoff" : "goal") + " for undeclared player " + name));
        continue;
      }
      const Line& body = lines.second;
      if (body.text.empty()) {
        diags.push_back(error_at(lines.first, "empty formula"));
        continue;
      }
      if (is_payoff) {
        auto f = parse_formula(body.text);
        if (f.ok()) g.payoffs[*idx] = *f.value;
        for (auto& d : shifted(std::move(f.diagnostics), body.offset)) diags.push_back(std::move(d));
      } else {
        auto f = parse_modal_formula(body.text, g.players);
        if (f.ok()) g.goals[*idx] = *f.value;
        for (auto& d : shifted(std::move(f.diagnostics), body.offset)) diags.push_back(std::move(d));
      }
    }
  }

  if (!diags.empty()) return result;

  // Structural checks, located at the declaration they concern.
  for (const auto& v : validate_game(g)) {
    Diagnostic d = error_at(0, 0, v.message);
    if (v.player) {
      const std::string& name = g.players[*v.player];
      const Line& player_line = players[*v.player].second.line;
      const Line* where = &player_line;
      if (v.section == Violation::Section::Payoff && payoff_lines.contains(name)) where = &payoff_lines.at(name).first;
      if (v.section == Violation::Section::Goal && goal_lines.contains(name)) where = &goal_lines.at(name).first;
      d = error_at(*where, v.message);
    } else if (!players.empty()) {
      d = error_at(players.front().second.line, v.message);
    }
    diags.push_back(std::move(d));
  }
  if (diags.empty()) result.value = std::move(g);
  return result;
}

std::string format_game(const Game& g) {
  std::ostringstream os;
  os << "k: " << g.scale.k() << '\n';
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    os << "player " << g.players[i] << " controls ";
    for (std::size_t j = 0; j < g.controls[i].size(); ++j) os << (j ? ", " : "") << g.controls[i][j];
    os << '\n';
  }
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    if (g.payoffs[i]) os << "payoff " << g.players[i] << ": " << print_formula(g.payoffs[i]) << '\n';
  }
  for (std::size_t i = 0; i < g.player_count(); ++i) {
    if (g.goals[i]) os << "goal " << g.players[i] << ": " << print_modal_formula(g.goals[i], g.players) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// profiles and combinations

namespace {

// Parses "v1=a,v2=b" into a strategy of `player`; diagnostics are absolute.
std::optional<Strategy> parse_assignment(const Line& l, const Game& g, std::size_t player,
                                         std::vector<Diagnostic>& diags) {
  std::map<std::string, Rational> values;
  bool ok = true;
  std::size_t i = 0;
  while (i <= l.text.size()) {
    std::size_t j = l.text.find(',', i);
    if (j == std::string_view::npos) j = l.text.size();
    const Line item = trim(l.text.substr(i, j - i), l.offset + i);
    const auto eq = item.text.find('=');
    if (eq == std::string_view::npos) {
      diags.push_back(error_at(item, "expected variable=value"));
      ok = false;
    } else {
      const std::string var(trim(item.text.substr(0, eq), 0).text);
      const auto value = Rational::parse(trim(item.text.substr(eq + 1), 0).text);
      if (!value) {
        diags.push_back(error_at(item, "malformed value"));
        ok = false;
      } else if (!g.scale.contains(*value)) {
        diags.push_back(error_at(item, "value " + value->str() + " outside L_" + std::to_string(g.scale.k())));
        ok = false;
      } else if (!values.emplace(var, *value).second) {
        diags.push_back(error_at(item, "variable " + var + " assigned twice"));
        ok = false;
      }
    }
    i = j + 1;
  }
  if (!ok) return std::nullopt;

  Strategy s{player, {}};
  for (const auto& v : g.controls[player]) {
    const auto it = values.find(v);
    if (it == values.end()) {
      diags.push_back(error_at(l, "missing value for " + v + " (controlled by " + g.players[player] + ")"));
      ok = false;
      continue;
    }
    s.values.push_back(it->second);
    values.erase(it);
  }
  for (const auto& [v, _] : values) {
    diags.push_back(error_at(l, "variable " + v + " is not controlled by " + g.players[player]));
    ok = false;
  }
  if (!ok) return std::nullopt;
  return s;
}

}  // namespace

ParseResult<Profile> parse_profile_file(std::string_view text, const Game& g) {
  ParseResult<Profile> result;
  auto& diags = result.diagnostics;
  Profile p;
  for (std::size_t i = 0; i < g.player_count(); ++i) p.strategies.push_back({i, {}});
  std::vector<std::optional<Line>> first_line(g.player_count());

  for (const Line& l : lines_of(text)) {
    std::vector<Line> fields;
    {
      std::size_t i = 0;
      while (i < l.text.size()) {
        while (i < l.text.size() && is_space(l.text[i])) ++i;
        std::size_t j = i;
        while (j < l.text.size() && !is_space(l.text[j])) ++j;
        if (j > i) fields.push_back({l.text.substr(i, j - i), l.offset + i});
        i = j;
      }
    }
    if (fields.size() != 3) {
      diags.push_back(error_at(l, "expected '<player> <var=value,...> <probability>'"));
      continue;
    }
    const auto player = g.player_index(fields[0].text);
    if (!player) {
      diags.push_back(error_at(fields[0], "unknown player " + std::string(fields[0].text)));
      continue;
    }
    const auto prob = Rational::parse(fields[2].text);
    if (!prob) {
      diags.push_back(error_at(fields[2], "malformed probability"));
      continue;
    }
    const auto s = parse_assignment(fields[1], g, *player, diags);
    if (!s) continue;
    if (!first_line[*player]) first_line[*player] = l;
    const std::uint64_t index = strategy_index(g, *s);
    if (!p.strategies[*player].probs.emplace(index, *prob).second) {
      diags.push_back(error_at(l, "duplicate entry for " + g.players[*player] + " " + format_strategy(g, *s)));
    }
  }
  if (!diags.empty()) return result;

  for (std::size_t i = 0; i < g.player_count(); ++i) {
    if (!first_line[i]) diags.push_back(error_at(0, 0, "no entries for " + g.players[i]));
  }
  for (const auto& msg : validate_profile(g, p)) {
    // validation messages start with the player name
    const std::string who = msg.substr(0, msg.find(' '));
    const auto idx = g.player_index(who);
    if (idx && first_line[*idx]) {
      diags.push_back(error_at(*first_line[*idx], msg));
    } else if (!idx || first_line[*idx]) {
      diags.push_back(error_at(0, 0, msg));
    }
  }
  if (!diags.empty()) return result;

  for (auto& m : p.strategies) m = m.normalized();
  result.value = std::move(p);
  return result;
}

std::string format_profile(const Game& g, const Profile& p) {
  std::ostringstream os;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (const auto& [s, q] : p[i].probs) {
      if (q.is_zero()) continue;
      os << g.players[i] << "  " << format_strategy(g, strategy_at(g, i, s)) << "  " << q.str() << '\n';
    }
  }
  return os.str();
}

ParseResult<StrategyCombination> parse_combination(std::string_view text, const Game& g) {
  ParseResult<StrategyCombination> result;
  const Line all = trim(text, 0);
  std::map<std::string, std::string> by_var;
  std::map<std::string, Line> where;
  std::size_t i = 0;
  while (i <= all.text.size()) {
    std::size_t j = all.text.find(',', i);
    if (j == std::string_view::npos) j = all.text.size();
    const Line item = trim(all.text.substr(i, j - i), all.offset + i);
    const auto eq = item.text.find('=');
    const std::string var(eq == std::string_view::npos ? item.text : trim(item.text.substr(0, eq), 0).text);
    if (eq == std::string_view::npos) {
      result.diagnostics.push_back(error_at(item, "expected variable=value"));
    } else if (!g.owner_of(var)) {
      result.diagnostics.push_back(error_at(item, "unknown variable " + var));
    }
    where.emplace(var, item);
    i = j + 1;
  }
  if (!result.diagnostics.empty()) return result;

  // Regroup per owner and reuse the per-player assignment parser.
  std::vector<std::string> per_player(g.player_count());
  for (const auto& [var, item] : where) {
    std::string& s = per_player[*g.owner_of(var)];
    if (!s.empty()) s += ',';
    s += std::string(item.text);
  }
  StrategyCombination combo;
  for (std::size_t p = 0; p < g.player_count(); ++p) {
    std::vector<Diagnostic> local;
    auto s = parse_assignment({per_player[p], 0}, g, p, local);
    for (auto& d : local) {
      d.begin = all.offset;
      d.end = all.offset + all.text.size();
      result.diagnostics.push_back(std::move(d));
    }
    if (s) combo.push_back(std::move(*s));
  }
  if (result.diagnostics.empty()) result.value = std::move(combo);
  return result;
}

}  // namespace expgame
