#include "gyroform/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "gyroform/errors.hpp"

namespace gyroform {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = s.find(sep, pos);
    parts.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != ',') ++j;
    if (j > i) parts.push_back(s.substr(i, j - i));
    i = j;
  }
  return parts;
}

double to_real(std::string_view s, int line, std::string_view key) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ConfigError("'" + std::string(key) + "': expected a number, got '" + std::string(s) + "'", line);
  return v;
}

template <class Int>
Int to_int(std::string_view s, int line, std::string_view key) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ConfigError("'" + std::string(key) + "': expected an integer, got '" + std::string(s) + "'", line);
  return v;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"scenario", {"n", "seed", "init", "box_side", "min_separation", "monitors"}},
      {"law", {"kind", "alpha", "r0", "mu", "eta", "sign"}},
      {"integration", {"dt", "T", "sample_every", "tol", "window"}},
      {"output", {"dir", "csv", "json", "svg", "plane"}},
      {"sweep", {"alpha", "r0", "mu", "eta", "sign", "seeds"}},
  };
  return keys;
}

std::map<std::string, Section> tokenize(std::string_view text) {
  std::map<std::string, Section> doc;
  std::string current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const std::size_t hash = line.find_first_of("#;");
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().contains(current)) throw ConfigError("unknown section [" + current + "]", line_no);
      if (doc.contains(current)) throw ConfigError("duplicate section [" + current + "]", line_no);
      doc[current];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    if (current.empty()) throw ConfigError("key outside of any section", line_no);
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("empty key", line_no);
    const bool particle_key = current == "scenario" && key.starts_with("particle.");
    if (!particle_key && !known_keys().at(current).contains(key))
      throw ConfigError("unknown key '" + key + "' in [" + current + "]", line_no);
    auto& sec = doc[current];
    if (sec.contains(key)) throw ConfigError("duplicate key '" + key + "'", line_no);
    sec[key] = {value, line_no};
  }
  return doc;
}

const Entry* find(const std::map<std::string, Section>& doc, const std::string& sec, const std::string& key) {
  auto s = doc.find(sec);
  if (s == doc.end()) return nullptr;
  auto e = s->second.find(key);
  return e == s->second.end() ? nullptr : &e->second;
}

Monitors parse_monitors(const Entry& e) {
  Monitors m{false, false, false};
  if (e.value == "none") return m;
  for (auto part : split(e.value, ',')) {
    if (part == "lyapunov") {
      m.lyapunov = true;
    } else if (part == "separation") {
      m.separation = true;
    } else if (part == "alignment") {
      m.alignment = true;
    } else {
      throw ConfigError("unknown monitor '" + std::string(part) + "'", e.line);
    }
  }
  return m;
}

FramedState parse_particle(const Entry& e, std::string_view key) {
  const auto parts = split_ws(e.value);
  if (parts.size() != 6 && parts.size() != 9)
    throw ConfigError("'" + std::string(key) + "': expected 6 (position, heading) or 9 (plus normal) numbers", e.line);
  std::vector<double> v;
  for (auto p : parts) v.push_back(to_real(p, e.line, key));
  const Vec3 r(v[0], v[1], v[2]);
  const Vec3 x(v[3], v[4], v[5]);
  try {
    if (parts.size() == 6) return FramedState::from_heading(r, x);
    FramedState s{r, x, Vec3(v[6], v[7], v[8]), x.cross(Vec3(v[6], v[7], v[8]))};
    if (!s.is_valid()) return FramedState::from_heading(r, x, Vec3(v[6], v[7], v[8]));
    return s;
  } catch (const ContractError& err) {
    throw ConfigError(std::string(key) + ": " + err.what(), e.line);
  }
}

template <class T, class Conv>
std::vector<T> parse_list(const Entry& e, std::string_view key, Conv conv) {
  std::vector<T> out;
  for (auto part : split(e.value, ',')) out.push_back(conv(part, e.line, key));
  return out;
}

std::vector<std::uint64_t> parse_seeds(const Entry& e) {
  const std::size_t dots = e.value.find("..");
  if (dots != std::string::npos) {
    const std::string_view v(e.value);
    const auto lo = to_int<std::uint64_t>(trim(v.substr(0, dots)), e.line, "seeds");
    const auto hi = to_int<std::uint64_t>(trim(v.substr(dots + 2)), e.line, "seeds");
    if (hi < lo || hi - lo > 1000000) throw ConfigError("seeds: invalid range", e.line);
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  return parse_list<std::uint64_t>(e, "seeds", to_int<std::uint64_t>);
}

}  // namespace

ConfigDocument parse_config_document(std::string_view text) {
  const auto doc = tokenize(text);
  ConfigDocument out;
  Scenario& sc = out.scenario;

  const Entry* n = find(doc, "scenario", "n");
  if (!n) throw ConfigError("missing required key scenario.n");
  sc.n = to_int<std::size_t>(n->value, n->line, "n");
  const Entry* kind = find(doc, "law", "kind");
  if (!kind) throw ConfigError("missing required key law.kind");
  try {
    sc.law.kind = parse_law_kind(kind->value);
  } catch (const ContractError& e) {
    throw ConfigError(e.what(), kind->line);
  }
  sc.law.sign = default_sign(sc.law.kind);

  if (auto e = find(doc, "scenario", "seed")) sc.seed = to_int<std::uint64_t>(e->value, e->line, "seed");
  if (auto e = find(doc, "scenario", "init")) {
    if (e->value == "random") {
      sc.init = InitMode::Random;
    } else if (e->value == "explicit") {
      sc.init = InitMode::Explicit;
    } else {
      throw ConfigError("init must be 'random' or 'explicit'", e->line);
    }
  }
  if (auto e = find(doc, "scenario", "box_side")) sc.box_side = to_real(e->value, e->line, "box_side");
  if (auto e = find(doc, "scenario", "min_separation"))
    sc.min_start_separation = to_real(e->value, e->line, "min_separation");
  if (auto e = find(doc, "scenario", "monitors")) sc.monitors = parse_monitors(*e);

  if (auto s = doc.find("scenario"); s != doc.end()) {
    std::map<std::size_t, FramedState> particles;
    for (const auto& [key, entry] : s->second) {
      if (!key.starts_with("particle.")) continue;
      const auto idx = to_int<std::size_t>(std::string_view(key).substr(9), entry.line, key);
      if (idx >= sc.n) throw ConfigError("'" + key + "': index out of range for n = " + std::to_string(sc.n), entry.line);
      if (sc.init != InitMode::Explicit) throw ConfigError("particle entries require init = explicit", entry.line);
      particles[idx] = parse_particle(entry, key);
    }
    if (sc.init == InitMode::Explicit) {
      if (particles.size() != sc.n) throw ConfigError("init = explicit needs particle.0 .. particle.<n-1>");
      for (auto& [idx, st] : particles) sc.states.push_back(st);
    }
  }

  if (auto e = find(doc, "law", "alpha")) sc.law.alpha = to_real(e->value, e->line, "alpha");
  if (auto e = find(doc, "law", "r0")) sc.law.r0 = to_real(e->value, e->line, "r0");
  if (auto e = find(doc, "law", "mu")) sc.law.mu = to_real(e->value, e->line, "mu");
  if (auto e = find(doc, "law", "eta")) sc.law.eta = to_real(e->value, e->line, "eta");
  if (auto e = find(doc, "law", "sign")) {
    sc.law.sign = to_int<int>(e->value[0] == '+' ? std::string_view(e->value).substr(1) : std::string_view(e->value),
                              e->line, "sign");
  }

  if (auto e = find(doc, "integration", "dt")) sc.dt = to_real(e->value, e->line, "dt");
  if (auto e = find(doc, "integration", "T")) sc.duration = to_real(e->value, e->line, "T");
  if (auto e = find(doc, "integration", "sample_every"))
    sc.sample_every = to_int<std::size_t>(e->value, e->line, "sample_every");
  if (auto e = find(doc, "integration", "tol")) sc.convergence_tol = to_real(e->value, e->line, "tol");
  if (auto e = find(doc, "integration", "window")) sc.convergence_window = to_real(e->value, e->line, "window");

  if (auto e = find(doc, "output", "dir")) out.output.dir = e->value;
  if (auto e = find(doc, "output", "csv")) out.output.csv = e->value;
  if (auto e = find(doc, "output", "json")) out.output.json = e->value;
  if (auto e = find(doc, "output", "svg")) out.output.svg = e->value;
  if (auto e = find(doc, "output", "plane")) {
    try {
      out.output.plane = Projection::parse(e->value);
    } catch (const ContractError& err) {
      throw ConfigError(err.what(), e->line);
    }
  }

  try {
    sc.validate();
  } catch (const ContractError& e) {
    throw ConfigError(e.what());
  }

  if (doc.contains("sweep")) {
    SweepGrid grid;
    grid.base = sc;
    if (auto e = find(doc, "sweep", "alpha")) grid.alpha = parse_list<double>(*e, "alpha", to_real);
    if (auto e = find(doc, "sweep", "r0")) grid.r0 = parse_list<double>(*e, "r0", to_real);
    if (auto e = find(doc, "sweep", "mu")) grid.mu = parse_list<double>(*e, "mu", to_real);
    if (auto e = find(doc, "sweep", "eta")) grid.eta = parse_list<double>(*e, "eta", to_real);
    if (auto e = find(doc, "sweep", "sign")) {
      grid.sign = parse_list<int>(*e, "sign", [](std::string_view s, int line, std::string_view key) {
        return to_int<int>(!s.empty() && s[0] == '+' ? s.substr(1) : s, line, key);
      });
    }
    if (auto e = find(doc, "sweep", "seeds")) grid.seeds = parse_seeds(*e);
    out.sweep = std::move(grid);
  }
  return out;
}

Scenario parse_config(std::string_view text) { return parse_config_document(text).scenario; }

ConfigDocument load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_document(ss.str());
}

std::string emit_config(const Scenario& sc, const OutputSpec& out) {
  std::ostringstream os;
  os << "[scenario]\n";
  os << "n = " << sc.n << "\n";
  os << "seed = " << sc.seed << "\n";
  os << "init = " << (sc.init == InitMode::Explicit ? "explicit" : "random") << "\n";
  os << "box_side = " << format_real(sc.box_side) << "\n";
  os << "min_separation = " << format_real(sc.min_start_separation) << "\n";
  std::vector<std::string> mons;
  if (sc.monitors.lyapunov) mons.emplace_back("lyapunov");
  if (sc.monitors.separation) mons.emplace_back("separation");
  if (sc.monitors.alignment) mons.emplace_back("alignment");
  os << "monitors = ";
  if (mons.empty()) os << "none";
  for (std::size_t i = 0; i < mons.size(); ++i) os << (i ? "," : "") << mons[i];
  os << "\n";
  if (sc.init == InitMode::Explicit) {
    for (std::size_t i = 0; i < sc.states.size(); ++i) {
      const auto& s = sc.states[i];
      os << "particle." << i << " =";
      for (const Vec3* v : {&s.r, &s.x, &s.y})
        for (int k = 0; k < 3; ++k) os << ' ' << format_real((*v)(k));
      os << "\n";
    }
  }
  os << "\n[law]\n";
  os << "kind = " << to_string(sc.law.kind) << "\n";
  os << "alpha = " << format_real(sc.law.alpha) << "\n";
  os << "r0 = " << format_real(sc.law.r0) << "\n";
  os << "mu = " << format_real(sc.law.mu) << "\n";
  os << "eta = " << format_real(sc.law.eta) << "\n";
  os << "sign = " << sc.law.sign << "\n";
  os << "\n[integration]\n";
  os << "dt = " << format_real(sc.dt) << "\n";
  os << "T = " << format_real(sc.duration) << "\n";
  os << "sample_every = " << sc.sample_every << "\n";
  os << "tol = " << format_real(sc.convergence_tol) << "\n";
  os << "window = " << format_real(sc.convergence_window) << "\n";
  os << "\n[output]\n";
  os << "dir = " << out.dir << "\n";
  os << "csv = " << out.csv << "\n";
  os << "json = " << out.json << "\n";
  os << "svg = " << out.svg << "\n";
  os << "plane = " << out.plane.to_string() << "\n";
  return os.str();
}

}  // namespace gyroform
