#include "aoi/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "aoi/errors.hpp"
#include "presets_generated.hpp"

namespace aoi {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    const auto pos = s.find(sep);
    out.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

class LineParser {
 public:
  explicit LineParser(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("line " + std::to_string(line_) + ": " + what);
  }

  template <typename T>
  T number(std::string_view s) const {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      fail("cannot parse number '" + std::string(s) + "'");
    }
    return v;
  }

  std::vector<double> numbers(std::string_view s) const {
    std::vector<double> out;
    for (auto item : split(s, ',')) {
      if (item.empty()) fail("empty list item");
      out.push_back(number<double>(item));
    }
    return out;
  }

  ServiceGrid service(std::string_view s) const {
    s = trim(s);
    const auto space = s.find_first_of(" \t");
    ServiceGrid grid{};
    try {
      grid.family = parse_service_family(s.substr(0, space));
    } catch (const ParameterError& e) {
      fail(e.what());
    }
    const std::string_view rest = space == std::string_view::npos ? "" : trim(s.substr(space));
    if (has_shape(grid.family)) {
      const auto eq = rest.find('=');
      if (eq == std::string_view::npos || trim(rest.substr(0, eq)) != shape_keyword(grid.family)) {
        fail("service '" + std::string(s) + "' needs " + std::string(shape_keyword(grid.family)) +
             "=<values>");
      }
      grid.shapes = numbers(rest.substr(eq + 1));
      for (double shape : grid.shapes) {
        try {
          ServiceDistribution::make(grid.family, 1.0, shape);
        } catch (const ParameterError& e) {
          fail(e.what());
        }
      }
    } else if (!rest.empty()) {
      fail("service '" + std::string(s) + "' takes no parameters");
    }
    return grid;
  }

 private:
  std::size_t line_;
};

struct PendingGroup {
  std::string name;
  std::optional<ArrivalProcess> arrival;
  std::optional<double> mu;
  std::vector<Discipline> disciplines;
  std::vector<ServiceGrid> services;
  std::size_t line;
};

}  // namespace

SweepConfig parse_sweep_config(std::string_view text) {
  SweepConfig cfg;
  std::optional<double> default_mu;
  std::vector<PendingGroup> pending;

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const LineParser p(line_no);
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') p.fail("unterminated section header");
      const auto inner = trim(line.substr(1, line.size() - 2));
      const auto space = inner.find_first_of(" \t");
      if (inner.substr(0, space) != "grid") p.fail("unknown section '" + std::string(inner) + "'");
      std::string name = space == std::string_view::npos ? "" : std::string(trim(inner.substr(space)));
      if (name.empty()) name = "grid" + std::to_string(pending.size() + 1);
      pending.push_back({name, std::nullopt, std::nullopt, {}, {}, line_no});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) p.fail("expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    if (!pending.empty()) {
      PendingGroup& g = pending.back();
      try {
        if (key == "arrival") {
          g.arrival = parse_arrival(value);
        } else if (key == "mu") {
          g.mu = p.number<double>(value);
        } else if (key == "disciplines") {
          for (auto name : split(value, ',')) g.disciplines.push_back(parse_discipline(name));
        } else if (key == "service") {
          g.services.push_back(p.service(value));
        } else {
          p.fail("unknown grid key '" + std::string(key) + "'");
        }
      } catch (const ParameterError& e) {
        p.fail(e.what());
      }
      continue;
    }

    if (key == "name") {
      cfg.name = std::string(value);
    } else if (key == "mu") {
      default_mu = p.number<double>(value);
    } else if (key == "n_arrivals") {
      cfg.n_arrivals = p.number<std::uint64_t>(value);
    } else if (key == "n_reps") {
      cfg.n_reps = p.number<std::uint32_t>(value);
    } else if (key == "seed") {
      cfg.base_seed = p.number<std::uint64_t>(value);
    } else if (key == "warmup") {
      cfg.warmup_fraction = p.number<double>(value);
    } else if (key == "nu") {
      cfg.nu_grid = p.numbers(value);
    } else if (key == "gginf_samples") {
      cfg.gginf_samples = p.number<std::uint64_t>(value);
    } else if (key == "batches") {
      cfg.batches = p.number<std::size_t>(value);
    } else if (key == "threads") {
      cfg.threads = p.number<unsigned>(value);
    } else if (key == "output_csv") {
      cfg.outputs.csv = std::string(value);
    } else if (key == "output_json") {
      cfg.outputs.json = std::string(value);
    } else if (key == "output_plot") {
      cfg.outputs.plot = std::string(value);
    } else {
      p.fail("unknown key '" + std::string(key) + "'");
    }
  }

  for (const PendingGroup& g : pending) {
    const LineParser p(g.line);
    if (!g.arrival) p.fail("grid '" + g.name + "' has no arrival");
    const std::optional<double> mu = g.mu ? g.mu : default_mu;
    if (!mu) p.fail("grid '" + g.name + "' has no mu and no global mu is set");
    if (g.disciplines.empty()) p.fail("grid '" + g.name + "' has no disciplines");
    if (g.services.empty()) p.fail("grid '" + g.name + "' has no service lines");
    cfg.groups.push_back({g.name, *g.arrival, *mu, g.disciplines, g.services});
  }
  if (cfg.groups.empty()) throw ConfigError("config defines no [grid] sections");
  if (cfg.n_arrivals < 1) throw ConfigError("n_arrivals must be at least 1");
  if (cfg.n_reps < 1) throw ConfigError("n_reps must be at least 1");
  for (double nu : cfg.nu_grid) {
    if (!(nu >= 0.0)) throw ConfigError("nu values must be nonnegative");
  }
  return cfg;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_sweep_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<std::string_view> preset_names() {
  std::vector<std::string_view> names;
  for (const auto& [name, text] : detail::kPresets) names.push_back(name);
  return names;
}

std::string_view preset_text(std::string_view name) {
  for (const auto& [preset_name, text] : detail::kPresets) {
    if (preset_name == name) return text;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

SweepConfig preset(std::string_view name) { return parse_sweep_config(preset_text(name)); }

}  // namespace aoi
