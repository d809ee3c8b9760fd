// SPDX-License-Identifier: Apache-2.0

#include "tfmp/instance_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "tfmp/errors.hpp"

namespace tfmp {

namespace {

struct Token {
  std::string_view text;
  int column = 0;  // 1-based
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

const std::set<std::string_view> kSections = {"horizon",  "sectors",       "flights",
                                              "capacities", "continuations", "windows"};

class Parser {
 public:
  Parser(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  Instance run() {
    split();
    if (!sections_.contains("horizon")) fail(1, 1, "missing [horizon] section");
    parse_horizon();
    if (auto it = sections_.find("sectors"); it != sections_.end()) parse_sectors(it->second);
    if (auto it = sections_.find("flights"); it != sections_.end()) parse_flights(it->second);
    if (auto it = sections_.find("capacities"); it != sections_.end()) parse_capacities(it->second);
    if (auto it = sections_.find("continuations"); it != sections_.end()) {
      parse_continuations(it->second);
    }
    if (auto it = sections_.find("windows"); it != sections_.end()) parse_windows(it->second);
    return std::move(inst_);
  }

 private:
  [[noreturn]] void fail(int line, int column, const std::string& msg) const {
    throw ParseError(source_, line, column, msg);
  }

  void split() {
    std::vector<Line>* current = nullptr;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view raw = text_.substr(pos, end - pos);
      pos = end + 1;
      ++number;
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

      Line line{number, {}};
      std::size_t i = 0;
      while (i < raw.size()) {
        while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
        if (i >= raw.size()) break;
        const std::size_t start = i;
        while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
        line.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
      }
      if (line.tokens.empty()) continue;

      const Token& first = line.tokens.front();
      if (first.text.front() == '[') {
        if (line.tokens.size() != 1 || first.text.back() != ']') {
          fail(number, first.column, "malformed section header");
        }
        const std::string_view name = first.text.substr(1, first.text.size() - 2);
        if (!kSections.contains(name)) {
          fail(number, first.column, "unknown section [" + std::string(name) + "]");
        }
        auto [it, fresh] = sections_.try_emplace(std::string(name));
        if (!fresh) fail(number, first.column, "duplicate section [" + std::string(name) + "]");
        section_lines_[std::string(name)] = number;
        current = &it->second;
        continue;
      }
      if (current == nullptr) fail(number, first.column, "content before the first section");
      current->push_back(std::move(line));
    }
  }

  int to_int(const Line& line, const Token& tok, std::string_view text) const {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail(line.number, tok.column, "expected an integer, got '" + std::string(text) + "'");
    }
    return value;
  }

  double to_double(const Line& line, const Token& tok, std::string_view text) const {
    double value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail(line.number, tok.column, "expected a number, got '" + std::string(text) + "'");
    }
    return value;
  }

  // `key=value` or `key = value` pairs on one line, starting at token `from`.
  std::vector<std::pair<Token, Token>> pairs(const Line& line, std::size_t from) const {
    std::vector<Token> flat;
    for (std::size_t i = from; i < line.tokens.size(); ++i) {
      const Token& tok = line.tokens[i];
      std::size_t start = 0;
      while (start <= tok.text.size()) {
        std::size_t eq = tok.text.find('=', start);
        const std::size_t stop = eq == std::string_view::npos ? tok.text.size() : eq;
        if (stop > start) {
          flat.push_back({tok.text.substr(start, stop - start), tok.column + static_cast<int>(start)});
        }
        if (eq == std::string_view::npos) break;
        flat.push_back({"=", tok.column + static_cast<int>(eq)});
        start = eq + 1;
      }
    }
    std::vector<std::pair<Token, Token>> out;
    std::size_t i = 0;
    while (i < flat.size()) {
      if (flat[i].text == "=") fail(line.number, flat[i].column, "missing key before '='");
      if (i + 1 >= flat.size() || flat[i + 1].text != "=") {
        fail(line.number, flat[i].column, "expected key=value, got '" + std::string(flat[i].text) + "'");
      }
      if (i + 2 >= flat.size() || flat[i + 2].text == "=") {
        fail(line.number, flat[i + 1].column, "missing value for '" + std::string(flat[i].text) + "'");
      }
      out.emplace_back(flat[i], flat[i + 2]);
      i += 3;
    }
    return out;
  }

  void parse_horizon() {
    std::set<std::string> seen;
    bool has_periods = false;
    for (const Line& line : sections_["horizon"]) {
      for (const auto& [key, value] : pairs(line, 0)) {
        const std::string k(key.text);
        if (!seen.insert(k).second) fail(line.number, key.column, "duplicate key '" + k + "'");
        const int v = to_int(line, value, value.text);
        if (k == "periods") {
          inst_.horizon = v;
          has_periods = true;
        } else if (k == "period_minutes") {
          inst_.period_minutes = v;
        } else if (k == "max_ground_hold") {
          inst_.window_policy.max_ground_hold = v;
        } else if (k == "max_air_hold") {
          inst_.window_policy.max_air_hold = v;
        } else if (k == "allow_early") {
          inst_.window_policy.allow_early = v;
        } else if (k == "format") {
          if (v != kFormatVersion) {
            fail(line.number, value.column, "unsupported format version " + std::to_string(v));
          }
        } else {
          fail(line.number, key.column, "unknown horizon key '" + k + "'");
        }
      }
    }
    if (!has_periods) fail(section_lines_["horizon"], 1, "[horizon] needs periods=");
    if (inst_.horizon < 1) fail(section_lines_["horizon"], 1, "periods must be at least 1");
    inst_.capacities = CapacityProfile(inst_.horizon);
  }

  void parse_sectors(const std::vector<Line>& lines) {
    for (const Line& line : lines) {
      for (const Token& tok : line.tokens) inst_.sectors.emplace_back(tok.text);
    }
  }

  static std::vector<std::pair<std::string_view, int>> split_list(const Token& tok,
                                                                  std::string_view sep) {
    std::vector<std::pair<std::string_view, int>> out;
    std::size_t start = 0;
    while (true) {
      const std::size_t at = tok.text.find(sep, start);
      const std::size_t stop = at == std::string_view::npos ? tok.text.size() : at;
      out.emplace_back(tok.text.substr(start, stop - start), tok.column + static_cast<int>(start));
      if (at == std::string_view::npos) break;
      start = at + sep.size();
    }
    return out;
  }

  void parse_flights(const std::vector<Line>& lines) {
    for (const Line& line : lines) {
      Flight f;
      f.id = std::string(line.tokens.front().text);
      if (f.id.find('=') != std::string::npos) {
        fail(line.number, line.tokens.front().column, "flight line must start with an id");
      }
      std::set<std::string> seen;
      for (const auto& [key, value] : pairs(line, 1)) {
        const std::string k(key.text);
        if (!seen.insert(k).second) fail(line.number, key.column, "duplicate key '" + k + "'");
        if (k == "path") {
          for (const auto& [name, col] : split_list(value, ">")) {
            if (name.empty()) fail(line.number, col, "empty sector name in path");
            f.path.emplace_back(name);
          }
        } else if (k == "dep") {
          f.scheduled_departure = to_int(line, value, value.text);
        } else if (k == "arr") {
          f.scheduled_arrival = to_int(line, value, value.text);
        } else if (k == "turn") {
          f.turnaround = to_int(line, value, value.text);
        } else if (k == "cg") {
          f.ground_cost = to_double(line, value, value.text);
        } else if (k == "ca") {
          f.air_cost = to_double(line, value, value.text);
        } else if (k == "transit") {
          for (const auto& [item, col] : split_list(value, ",")) {
            f.transit_times.push_back(to_int(line, Token{item, col}, item));
          }
        } else {
          fail(line.number, key.column, "unknown flight key '" + k + "'");
        }
      }
      for (const char* required : {"path", "dep", "arr", "cg", "ca"}) {
        if (!seen.contains(required)) {
          fail(line.number, line.tokens.front().column,
               "flight " + f.id + " is missing " + required + "=");
        }
      }
      if (!seen.contains("transit") && f.path.size() > 1) {
        fail(line.number, line.tokens.front().column, "flight " + f.id + " is missing transit=");
      }
      f.windows.assign(f.path.size(), std::nullopt);
      inst_.flights.push_back(std::move(f));
    }
  }

  std::pair<int, int> range(const Line& line, const Token& tok) const {
    const std::size_t dots = tok.text.find("..");
    if (dots == std::string_view::npos) {
      const int t = to_int(line, tok, tok.text);
      return {t, t};
    }
    const int a = to_int(line, tok, tok.text.substr(0, dots));
    const int b = to_int(line, Token{tok.text, tok.column + static_cast<int>(dots) + 2},
                         tok.text.substr(dots + 2));
    if (b < a) fail(line.number, tok.column, "empty range " + std::string(tok.text));
    return {a, b};
  }

  void parse_capacities(const std::vector<Line>& lines) {
    for (const Line& line : lines) {
      if (line.tokens.size() < 2) fail(line.number, line.tokens.front().column, "expected sector and range");
      const std::string sector(line.tokens[0].text);
      const auto [from, to] = range(line, line.tokens[1]);
      if (from < 1 || to > inst_.horizon) {
        fail(line.number, line.tokens[1].column,
             "range " + std::string(line.tokens[1].text) + " is outside 1.." +
                 std::to_string(inst_.horizon));
      }
      std::set<std::string> seen;
      for (const auto& [key, value] : pairs(line, 2)) {
        const std::string k(key.text);
        if (!seen.insert(k).second) fail(line.number, key.column, "duplicate key '" + k + "'");
        ResourceKind kind;
        if (k == "D") {
          kind = ResourceKind::kDeparture;
        } else if (k == "A") {
          kind = ResourceKind::kArrival;
        } else if (k == "S") {
          kind = ResourceKind::kSector;
        } else {
          fail(line.number, key.column, "unknown capacity key '" + k + "' (use D, A or S)");
        }
        const int v = value.text == "*" ? kUnbounded : to_int(line, value, value.text);
        if (v < 0 && v != kUnbounded) fail(line.number, value.column, "capacity must be >= 0 or *");
        inst_.capacities.set(sector, kind, from, to, v);
      }
    }
  }

  void parse_continuations(const std::vector<Line>& lines) {
    for (const Line& line : lines) {
      // Accept both "a > b" and "a>b".
      std::string joined;
      for (const Token& tok : line.tokens) joined += tok.text;
      const std::size_t gt = joined.find('>');
      if (gt == std::string::npos || gt == 0 || gt + 1 == joined.size() ||
          joined.find('>', gt + 1) != std::string::npos) {
        fail(line.number, line.tokens.front().column, "expected 'incoming > outgoing'");
      }
      inst_.continuations.push_back({joined.substr(0, gt), joined.substr(gt + 1)});
    }
  }

  void parse_windows(const std::vector<Line>& lines) {
    for (const Line& line : lines) {
      if (line.tokens.size() != 3) {
        fail(line.number, line.tokens.front().column, "expected 'flight sector first..last'");
      }
      const std::string id(line.tokens[0].text);
      const auto idx = inst_.flight_index(id);
      if (!idx) fail(line.number, line.tokens[0].column, "window for unknown flight " + id);
      Flight& f = inst_.flights[*idx];
      const std::string sector(line.tokens[1].text);
      std::size_t pos = 0;
      while (pos < f.path.size() && f.path[pos] != sector) ++pos;
      if (pos == f.path.size()) {
        fail(line.number, line.tokens[1].column, "sector " + sector + " is not on the path of " + id);
      }
      if (f.windows[pos]) {
        fail(line.number, line.tokens[1].column, "duplicate window for " + id + " at " + sector);
      }
      const auto [a, b] = range(line, line.tokens[2]);
      f.windows[pos] = TimeWindow{a, b};
    }
  }

  std::string_view text_;
  std::string source_;
  std::map<std::string, std::vector<Line>> sections_;
  std::map<std::string, int> section_lines_;
  Instance inst_;
};

std::string number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string capacity_text(int v) { return v == kUnbounded ? "*" : std::to_string(v); }

}  // namespace

Instance parse_instance_text(std::string_view text, const std::string& source) {
  return Parser(text, source).run();
}

Instance read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str(), path.string());
}

Instance parse_instance(const std::filesystem::path& path) {
  Instance raw = read_instance_file(path);
  // Validate first so that derivation never sees malformed flights.
  Instance shaped = raw;
  for (auto& f : shaped.flights) {
    for (auto& w : f.windows) {
      if (!w) w = TimeWindow{1, std::max(1, shaped.horizon)};
    }
  }
  validate_instance(shaped);
  return validate_instance(derive_time_windows(std::move(raw))).get();
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "[horizon]\n"
      << "format = " << kFormatVersion << '\n'
      << "periods = " << inst.horizon << '\n'
      << "period_minutes = " << inst.period_minutes << '\n'
      << "max_ground_hold = " << inst.window_policy.max_ground_hold << '\n'
      << "max_air_hold = " << inst.window_policy.max_air_hold << '\n'
      << "allow_early = " << inst.window_policy.allow_early << '\n';

  out << "\n[sectors]\n";
  for (std::size_t i = 0; i < inst.sectors.size(); ++i) {
    out << inst.sectors[i] << (i + 1 == inst.sectors.size() ? "\n" : " ");
  }

  out << "\n[flights]\n";
  for (const auto& f : inst.flights) {
    out << f.id << " path=";
    for (std::size_t i = 0; i < f.path.size(); ++i) out << (i ? ">" : "") << f.path[i];
    out << " dep=" << f.scheduled_departure << " arr=" << f.scheduled_arrival
        << " turn=" << f.turnaround << " cg=" << number(f.ground_cost)
        << " ca=" << number(f.air_cost);
    if (!f.transit_times.empty()) {
      out << " transit=";
      for (std::size_t i = 0; i < f.transit_times.size(); ++i) {
        out << (i ? "," : "") << f.transit_times[i];
      }
    }
    out << '\n';
  }

  out << "\n[capacities]\n";
  for (const auto& sector : inst.capacities.sectors()) {
    int t = 1;
    while (t <= inst.horizon) {
      auto at = [&](int u) {
        return std::array<int, 3>{inst.capacities.get(sector, ResourceKind::kDeparture, u),
                                  inst.capacities.get(sector, ResourceKind::kArrival, u),
                                  inst.capacities.get(sector, ResourceKind::kSector, u)};
      };
      const auto v = at(t);
      int end = t;
      while (end + 1 <= inst.horizon && at(end + 1) == v) ++end;
      if (v != std::array<int, 3>{kUnbounded, kUnbounded, kUnbounded}) {
        out << sector << ' ' << t << ".." << end << " D=" << capacity_text(v[0])
            << " A=" << capacity_text(v[1]) << " S=" << capacity_text(v[2]) << '\n';
      }
      t = end + 1;
    }
  }

  out << "\n[continuations]\n";
  for (const auto& c : inst.continuations) out << c.incoming << " > " << c.outgoing << '\n';

  out << "\n[windows]\n";
  for (const auto& f : inst.flights) {
    for (std::size_t i = 0; i < f.path.size() && i < f.windows.size(); ++i) {
      if (!f.windows[i]) continue;
      out << f.id << ' ' << f.path[i] << ' ' << f.windows[i]->first << ".." << f.windows[i]->last
          << '\n';
    }
  }
  return out.str();
}

}  // namespace tfmp
