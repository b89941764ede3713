#include "rbcsp/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "rbcsp/errors.hpp"

namespace rbcsp {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

template <typename T>
bool parse_number(std::string_view word, T& out) {
  const auto* first = word.data();
  const auto* last = word.data() + word.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

template <typename T>
T header_field(std::string_view word, std::string_view key, std::size_t line) {
  if (word.size() <= key.size() || word.substr(0, key.size()) != key || word[key.size()] != '=') {
    throw ParseError("malformed header: expected " + std::string(key) + "=", line);
  }
  T value{};
  if (!parse_number(word.substr(key.size() + 1), value)) {
    throw ParseError("malformed header: bad value for " + std::string(key), line);
  }
  return value;
}

RBParams parse_header(std::string_view text, std::size_t line) {
  const auto words = split_words(text);
  if (words.size() != 10) throw ParseError("malformed header: expected 10 fields", line);
  RBParams params;
  params.n = header_field<std::uint32_t>(words[0], "n", line);
  params.k = header_field<std::uint32_t>(words[1], "k", line);
  params.d = header_field<std::uint32_t>(words[2], "d", line);
  params.m = header_field<std::uint64_t>(words[3], "m", line);
  params.rel_size = header_field<std::uint64_t>(words[4], "rel", line);
  if (words[5].substr(0, 5) != "mode=") throw ParseError("malformed header: expected mode=", line);
  try {
    params.mode = relation_mode_from_string(words[5].substr(5));
  } catch (const ParamError&) {
    throw ParseError("malformed header: unknown mode", line);
  }
  params.alpha = header_field<double>(words[6], "alpha", line);
  params.r = header_field<double>(words[7], "r", line);
  params.p = header_field<double>(words[8], "p", line);
  try {
    params.validate();
  } catch (const ParamError& e) {
    throw ParseError(std::string("invalid parameters: ") + e.what(), line);
  }
  return params;
}

Constraint parse_constraint(std::string_view text, const RBParams& params, std::uint64_t tuples, std::size_t line) {
  const auto words = split_words(text);
  if (words.empty() || words[0] != "C") throw ParseError("malformed constraint line", line);
  std::size_t colon = 1;
  while (colon < words.size() && words[colon] != ":") ++colon;
  if (colon == words.size()) throw ParseError("malformed constraint line: missing ':'", line);

  std::vector<VarIndex> scope;
  for (std::size_t w = 1; w < colon; ++w) {
    VarIndex v{};
    if (!parse_number(words[w], v)) throw ParseError("malformed variable index", line);
    if (v >= params.n) throw ParseError("variable index out of range", line);
    if (!scope.empty() && v <= scope.back()) throw ParseError("scope not ascending", line);
    scope.push_back(v);
  }
  if (scope.size() != params.k) throw ParseError("scope size does not match k", line);

  std::vector<TupleCode> relation;
  for (std::size_t w = colon + 1; w < words.size(); ++w) {
    TupleCode c{};
    if (!parse_number(words[w], c)) throw ParseError("malformed tuple code", line);
    if (c >= tuples) throw ParseError("tuple code out of range", line);
    if (!relation.empty() && c <= relation.back()) throw ParseError("tuple codes not ascending", line);
    relation.push_back(c);
  }
  if (params.mode == RelationMode::exact && relation.size() != params.rel_size) {
    throw ParseError("relation size does not match rel", line);
  }
  return Constraint(std::move(scope), std::move(relation));
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string serialize_instance(const Instance& inst) {
  const auto& p = inst.params();
  std::ostringstream out;
  out << "RB1\n";
  out << "n=" << p.n << " k=" << p.k << " d=" << p.d << " m=" << p.m << " rel=" << p.rel_size
      << " mode=" << to_string(p.mode) << " alpha=" << format_real(p.alpha) << " r=" << format_real(p.r)
      << " p=" << format_real(p.p) << " seed=" << inst.seed() << '\n';
  for (const auto& c : inst.constraints()) {
    out << 'C';
    for (VarIndex v : c.scope()) out << ' ' << v;
    out << " :";
    for (TupleCode code : c.relation()) out << ' ' << code;
    out << '\n';
  }
  return out.str();
}

Instance parse_instance(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "RB1") throw ParseError("missing RB1 magic", 1);
  if (lines.size() < 2) throw ParseError("missing header", 2);
  const RBParams params = parse_header(lines[1], 2);
  const auto seed_words = split_words(lines[1]);
  const auto seed = header_field<std::uint64_t>(seed_words[9], "seed", 2);
  const std::uint64_t tuples = params.tuple_space();

  std::vector<Constraint> constraints;
  std::size_t idx = 2;
  for (; idx < lines.size(); ++idx) {
    if (lines[idx].empty() && idx + 1 == lines.size()) break;
    if (constraints.size() == params.m) throw ParseError("constraint count mismatch", idx + 1);
    constraints.push_back(parse_constraint(lines[idx], params, tuples, idx + 1));
  }
  if (constraints.size() != params.m) throw ParseError("constraint count mismatch", constraints.size() + 3);
  return Instance(params, std::move(constraints), seed);
}

std::string serialize_assignment(const Assignment& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(a[i]);
  }
  out += '\n';
  return out;
}

Assignment parse_assignment(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t nonblank = 0;
  std::string_view body;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (split_words(lines[i]).empty()) continue;
    if (++nonblank > 1) throw ParseError("assignment must be a single line", i + 1);
    body = lines[i];
  }
  Assignment a;
  for (auto word : split_words(body)) {
    Value v{};
    if (!parse_number(word, v)) throw ParseError("malformed assignment value", 1);
    a.values.push_back(v);
  }
  if (a.values.empty()) throw ParseError("empty assignment", 1);
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace rbcsp
