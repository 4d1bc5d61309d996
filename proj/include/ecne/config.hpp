#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecne/embedding.hpp"
#include "ecne/linkmodel.hpp"

namespace ecne {

/// Full run configuration. Defaults are the library's reference settings;
/// a flat key=value config file can override them and command-line flags
/// override the file.
struct RunConfig {
  std::string input;
  std::string out_dir = ".";
  std::string mode = "ecne";  // ecne | ecne-d
  std::size_t dim = 128;

  // walks + skip-gram
  std::size_t walks = 10;
  std::size_t walk_len = 100;
  std::size_t window = 10;
  std::size_t neg = 100;
  std::size_t sg_epochs = 5;
  double sg_lr_start = 0.025;
  double sg_lr_end = 0.0001;
  double clamp_epsilon = 1e-6;

  // link prediction
  std::string agg = "lstm";  // avg | max | lstm
  std::vector<std::size_t> lengths{3, 4};
  std::size_t max_paths = 100;
  double lr = 0.001;
  std::size_t epochs = 50;
  std::size_t patience = 5;
  std::size_t hidden = 64;
  std::size_t batch = 32;
  double split = 0.0;  // 0 = auto by node count
  std::size_t runs = 5;

  std::uint64_t seed = 1;
  int threads = 1;

  DimensionMode dimension_mode() const {
    if (mode == "ecne") return DimensionMode::kFixed;
    if (mode == "ecne-d") return DimensionMode::kMatched;
    throw std::invalid_argument("mode must be 'ecne' or 'ecne-d'");
  }

  void validate() const {
    dimension_mode();
    aggregator_from_name(agg);
    if (dim == 0 || walks == 0 || walk_len == 0 || window == 0 || neg == 0)
      throw std::invalid_argument("config: counts must be positive");
    if (lengths.empty())
      throw std::invalid_argument("config: need at least one path length");
    for (std::size_t l : lengths)
      if (l < 1) throw std::invalid_argument("config: path lengths must be >= 1");
    if (!(lr > 0.0)) throw std::invalid_argument("config: lr must be positive");
    if (split != 0.0 && !(split > 0.0 && split < 1.0))
      throw std::invalid_argument("config: split must lie in (0,1)");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    if (runs < 1) throw std::invalid_argument("config: runs must be >= 1");
  }
};

namespace detail {

inline std::vector<std::size_t> parse_lengths(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoull(tok));
  return out;
}

inline std::string lengths_to_string(const std::vector<std::size_t>& ls) {
  std::string out;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ls[i]);
  }
  return out;
}

}  // namespace detail

/// Applies one key=value setting; unknown keys are rejected.
inline void apply_config_entry(RunConfig& cfg, const std::string& key,
                               const std::string& value) {
  try {
    if (key == "input") cfg.input = value;
    else if (key == "out") cfg.out_dir = value;
    else if (key == "mode") cfg.mode = value;
    else if (key == "dim") cfg.dim = std::stoull(value);
    else if (key == "walks") cfg.walks = std::stoull(value);
    else if (key == "walk_len") cfg.walk_len = std::stoull(value);
    else if (key == "window") cfg.window = std::stoull(value);
    else if (key == "neg") cfg.neg = std::stoull(value);
    else if (key == "sg_epochs") cfg.sg_epochs = std::stoull(value);
    else if (key == "sg_lr_start") cfg.sg_lr_start = std::stod(value);
    else if (key == "sg_lr_end") cfg.sg_lr_end = std::stod(value);
    else if (key == "clamp_epsilon") cfg.clamp_epsilon = std::stod(value);
    else if (key == "agg") cfg.agg = value;
    else if (key == "lengths") cfg.lengths = detail::parse_lengths(value);
    else if (key == "max_paths") cfg.max_paths = std::stoull(value);
    else if (key == "lr") cfg.lr = std::stod(value);
    else if (key == "epochs") cfg.epochs = std::stoull(value);
    else if (key == "patience") cfg.patience = std::stoull(value);
    else if (key == "hidden") cfg.hidden = std::stoull(value);
    else if (key == "batch") cfg.batch = std::stoull(value);
    else if (key == "split") cfg.split = std::stod(value);
    else if (key == "runs") cfg.runs = std::stoull(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "threads") cfg.threads = std::stoi(value);
    else throw std::invalid_argument("unknown config key: " + key);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for config key " + key + ": " +
                                value);
  }
}

/// Flat key=value file; '#' comments and blank lines are ignored.
inline void load_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key=value");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

/// Canonical serialization of every field; the manifest digest hashes it.
inline std::string config_canonical(const RunConfig& c) {
  std::ostringstream s;
  s << "input=" << c.input << ";out=" << c.out_dir << ";mode=" << c.mode
    << ";dim=" << c.dim << ";walks=" << c.walks << ";walk_len=" << c.walk_len
    << ";window=" << c.window << ";neg=" << c.neg
    << ";sg_epochs=" << c.sg_epochs << ";sg_lr_start=" << c.sg_lr_start
    << ";sg_lr_end=" << c.sg_lr_end << ";clamp_epsilon=" << c.clamp_epsilon
    << ";agg=" << c.agg << ";lengths=" << detail::lengths_to_string(c.lengths)
    << ";max_paths=" << c.max_paths << ";lr=" << c.lr
    << ";epochs=" << c.epochs << ";patience=" << c.patience
    << ";hidden=" << c.hidden << ";batch=" << c.batch << ";split=" << c.split
    << ";runs=" << c.runs << ";seed=" << c.seed << ";threads=" << c.threads;
  return s.str();
}

// FNV-1a, stable across platforms.
inline std::uint64_t config_digest(const RunConfig& c) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : config_canonical(c)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace ecne
