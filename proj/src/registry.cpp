#include "dynbcast/registry.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace dynbcast {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <class Int>
Int parse_int(std::string_view text, std::string_view what) {
  Int value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

double parse_probability(std::string_view text) {
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(std::string(text), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument("bad probability: '" + std::string(text) + "'");
  }
  return p;
}

}  // namespace

AnyAlgorithm parse_algorithm(std::string_view name) {
  if (name == "countdown") return Countdown{};
  if (name == "flood-forever") return FloodForever{};
  const auto parts = split(name, ':');
  if (parts.size() == 2 && parts[0] == "bounded-flood") {
    return BoundedFlood(parse_int<std::int64_t>(parts[1], "bounded-flood K"));
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

EdgeList load_edge_file(const std::string& path, std::size_t& n) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open edge file " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("edge file " + path + ": " + e.what());
  }
  if (!doc.contains("edges") || !doc["edges"].is_array()) {
    throw std::invalid_argument("edge file " + path + " needs an \"edges\" array");
  }
  EdgeList edges;
  std::size_t largest = 0;
  for (const auto& pair : doc["edges"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
        !pair[1].is_number_unsigned()) {
      throw std::invalid_argument("edge file " + path + ": edges must be [u, v] with u, v >= 0");
    }
    const Edge e{pair[0].get<NodeId>(), pair[1].get<NodeId>()};
    largest = std::max({largest, e.u, e.v});
    edges.push_back(e);
  }
  n = doc.contains("n") ? doc["n"].get<std::size_t>() : largest + 1;
  return edges;
}

AdversaryPtr parse_adversary(std::string_view name, std::size_t n, std::uint64_t seed) {
  const auto parts = split(name, ':');
  const std::string_view kind = parts[0];
  if (kind == "complete" && parts.size() == 1) return complete_adversary(n);
  if (kind == "spooling" && parts.size() == 1) return spooling_adversary(n);
  if (kind == "random" && parts.size() == 3) {
    const auto base = parse_int<std::uint64_t>(parts[1], "random seed");
    return random_connected_adversary(n, base + seed, parse_probability(parts[2]));
  }
  if (kind == "sequester" && parts.size() == 3) {
    const auto m = parse_int<std::size_t>(parts[1], "sequester core size");
    const auto len = parse_int<std::size_t>(parts[2], "sequester path length");
    if (m + len != n) {
      throw std::invalid_argument("sequester:" + std::to_string(m) + ":" + std::to_string(len) +
                                  " needs n = " + std::to_string(m + len));
    }
    return path_sequester_adversary(m, len);
  }
  if (kind == "static" && parts.size() >= 2) {
    // FILE may itself contain ':'
    const std::string path(name.substr(std::string_view("static:").size()));
    std::size_t file_n = 0;
    EdgeList edges = load_edge_file(path, file_n);
    if (file_n != n) {
      throw std::invalid_argument("edge file " + path + " describes " + std::to_string(file_n) +
                                  " nodes, scenario has " + std::to_string(n));
    }
    return static_adversary(n, std::move(edges));
  }
  throw std::invalid_argument("unknown adversary '" + std::string(name) + "'");
}

}  // namespace dynbcast
